//! Exact statistics phases.
//!
//! A twist is a rational number `t` in `[0, 1)` standing for the root of unity
//! `exp(2 pi i t)`. Equality of phases is decided on the rationals, never on
//! floating point values.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Twist(Ratio<i64>);

impl Twist {
    pub fn zero() -> Self {
        Twist(Ratio::zero())
    }

    /// Builds the twist `num/den mod 1`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Invalid("twist with zero denominator".into()));
        }
        Ok(Self::from_ratio(Ratio::new(num, den)))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        let fl = r.floor();
        Twist(r - fl)
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `exp(2 pi i t)`.
    pub fn phase(&self) -> Complex64 {
        let angle = 2.0 * std::f64::consts::PI * (self.numer() as f64) / (self.denom() as f64);
        let (s, c) = angle.sin_cos();
        Complex64::new(c, s)
    }

    /// Phase evaluated with the angle folded into `[-pi/4, pi/4]` before the
    /// trigonometric call, so that exact eighth roots come out exact.
    pub fn phase_folded(&self) -> Complex64 {
        let (n, d) = (self.numer() as i128, self.denom() as i128);
        // t = n/d in [0,1); octant o = round(8t), remainder r = t - o/8 in [-1/16, 1/16]
        let o = (16 * n + d) / (2 * d);
        let rem_num = 8 * n - o * d; // r = rem_num / (8d)
        let angle = 2.0 * std::f64::consts::PI * (rem_num as f64) / ((8 * d) as f64);
        let (s, c) = angle.sin_cos();
        let base = Complex64::new(c, s);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rot = match o.rem_euclid(8) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(h, h),
            2 => Complex64::new(0.0, 1.0),
            3 => Complex64::new(-h, h),
            4 => Complex64::new(-1.0, 0.0),
            5 => Complex64::new(-h, -h),
            6 => Complex64::new(0.0, -1.0),
            _ => Complex64::new(h, -h),
        };
        base * rot
    }
}

impl Default for Twist {
    fn default() -> Self {
        Twist::zero()
    }
}

impl Add for Twist {
    type Output = Twist;
    fn add(self, rhs: Twist) -> Twist {
        Twist::from_ratio(self.0 + rhs.0)
    }
}

impl Sub for Twist {
    type Output = Twist;
    fn sub(self, rhs: Twist) -> Twist {
        Twist::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for Twist {
    type Output = Twist;
    fn neg(self) -> Twist {
        Twist::from_ratio(-self.0)
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Twist {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.numer(), self.denom()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Twist {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [n, den] = <[i64; 2]>::deserialize(d)?;
        Twist::new(n, den).map_err(serde::de::Error::custom)
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// accepted only if it lies within `tol` of `x`.
pub fn snap_rational(x: f64, max_den: i64, tol: f64) -> Option<Ratio<i64>> {
    if !x.is_finite() {
        return None;
    }
    // continued fraction convergents
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() < tol {
            return Some(Ratio::new(h1, k1));
        }
        let frac = v - a as f64;
        if frac.abs() < 1e-300 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 != 0 && (x - h1 as f64 / k1 as f64).abs() < tol {
        Some(Ratio::new(h1, k1))
    } else {
        None
    }
}
