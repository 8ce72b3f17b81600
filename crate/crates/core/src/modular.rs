//! Modular data of a braided fusion system.
//!
//! `Y` and `Omega` are the unnormalised Hopf-link and twist matrices; `S` and
//! `T` follow once `z = sum d^2 omega` is nonzero.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::fusion::BraidedSystem;
use crate::linalg::{kahan_sum, max_abs_diff, CMatrix};
use crate::twist::{snap_rational, Twist};

/// Which phase multiplies `N^rho_{lambda,mu} d_rho` in `Y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhaseConvention {
    /// `omega_lambda omega_mu / omega_rho`
    #[default]
    Standard,
    /// `omega_rho / (omega_lambda omega_mu)`, giving the complex conjugate `Y`
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// matrix identities (unitarity, TSTST = S, ...)
    pub matrix: f64,
    /// degeneracy dichotomy of Y row sums
    pub degeneracy: f64,
    /// Verlinde reconstruction
    pub verlinde: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { matrix: 1e-9, degeneracy: 1e-6, verlinde: 1e-7 }
    }
}

impl Tolerances {
    /// Overrides the matrix tolerance only.
    pub fn with_matrix(tol: f64) -> Self {
        Tolerances { matrix: tol, ..Default::default() }
    }
}

fn y_phase(sys: &BraidedSystem, conv: PhaseConvention, a: usize, b: usize, c: usize) -> Twist {
    let t = &sys.twists;
    let p = t[a] + t[b] - t[c];
    match conv {
        PhaseConvention::Standard => p,
        PhaseConvention::Inverse => -p,
    }
}

/// `Y_{lambda,mu} = sum_rho (omega_lambda omega_mu / omega_rho) N^rho_{lambda,mu} d_rho`.
pub fn build_y(sys: &BraidedSystem, conv: PhaseConvention) -> CMatrix {
    let n = sys.rank();
    let f = &sys.fusion;
    CMatrix::from_fn(n, n, |a, b| {
        (0..n)
            .filter(|&c| f.n(a, b, c) != 0)
            .map(|c| y_phase(sys, conv, a, b, c).phase_folded() * (f.n(a, b, c) as f64 * f.dim(c)))
            .sum()
    })
}

/// Same as [`build_y`] with compensated summation; used to re-verify results
/// accepted at the looser search tolerance.
pub fn build_y_compensated(sys: &BraidedSystem, conv: PhaseConvention) -> CMatrix {
    let n = sys.rank();
    let f = &sys.fusion;
    CMatrix::from_fn(n, n, |a, b| {
        kahan_sum(
            (0..n)
                .filter(|&c| f.n(a, b, c) != 0)
                .map(|c| y_phase(sys, conv, a, b, c).phase_folded() * (f.n(a, b, c) as f64 * f.dim(c))),
        )
    })
}

pub fn omega(sys: &BraidedSystem) -> CMatrix {
    let n = sys.rank();
    CMatrix::from_fn(n, n, |a, b| {
        if a == b {
            sys.twists[a].phase_folded()
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Central charge modulo 8.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CentralCharge {
    /// value in `[0, 8)`
    pub value: f64,
    /// exact value when `arg(z)/pi` snaps to a rational with denominator <= 10^4
    pub exact: Option<Ratio<i64>>,
}

impl fmt::Display for CentralCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            None => write!(f, "{:.12}", self.value),
        }
    }
}

pub const Z_DEGENERATE_TOL: f64 = 1e-9;

/// `z = sum d_lambda^2 omega_lambda` and `c = 4 arg(z) / pi mod 8`.
pub fn central_charge(sys: &BraidedSystem) -> Result<(Complex64, CentralCharge)> {
    let f = &sys.fusion;
    let z = kahan_sum((0..sys.rank()).map(|a| sys.twists[a].phase_folded() * f.dim(a).powi(2)));
    if z.norm() < Z_DEGENERATE_TOL {
        return Err(Error::DegenerateNormalization(z.norm()));
    }
    let ratio = z.arg() / std::f64::consts::PI;
    let exact = snap_rational(ratio, 10_000, 1e-9).map(|r| {
        let c = r * Ratio::from_integer(4);
        let eight = Ratio::from_integer(8);
        let q = (c / eight).floor();
        c - q * eight
    });
    let value = match exact {
        Some(r) => *r.numer() as f64 / *r.denom() as f64,
        None => (4.0 * ratio).rem_euclid(8.0),
    };
    Ok((z, CentralCharge { value, exact }))
}

/// Complete modular data. Immutable after construction.
#[derive(Clone, Debug)]
pub struct ModularData {
    pub system: BraidedSystem,
    pub convention: PhaseConvention,
    pub y: CMatrix,
    pub omega: CMatrix,
    pub z: Complex64,
    pub central_charge: CentralCharge,
    pub s: CMatrix,
    pub t: CMatrix,
}

impl ModularData {
    pub fn build(sys: &BraidedSystem) -> Result<Self> {
        Self::build_with(sys, PhaseConvention::default())
    }

    pub fn build_with(sys: &BraidedSystem, convention: PhaseConvention) -> Result<Self> {
        let (z, c) = central_charge(sys)?;
        let y = build_y(sys, convention);
        let om = omega(sys);
        let s = &y / Complex64::new(z.norm(), 0.0);
        let prefactor = match c.exact {
            // e^{-i pi c / 12} = exp(2 pi i (-c/24))
            Some(r) => Twist::from_ratio(-r / Ratio::from_integer(24)).phase_folded(),
            None => Complex64::from_polar(1.0, -std::f64::consts::PI * c.value / 12.0),
        };
        let t = &om * prefactor;
        Ok(ModularData {
            system: sys.clone(),
            convention,
            y,
            omega: om,
            z,
            central_charge: c,
            s,
            t,
        })
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn dims(&self) -> &[f64] {
        self.system.fusion.dims()
    }

    pub fn global_index(&self) -> f64 {
        self.system.fusion.global_index()
    }

    /// S recomputed with compensated sums.
    pub fn s_refined(&self) -> CMatrix {
        let y = build_y_compensated(&self.system, self.convention);
        y / Complex64::new(self.z.norm(), 0.0)
    }

    /// `omega_a == omega_b`, decided on the rationals.
    pub fn same_twist(&self, a: usize, b: usize) -> bool {
        self.system.twists[a] == self.system.twists[b]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Check { name: name.into(), residual, passed: residual < tol, detail: None }
    }

    pub fn flag(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            residual: if passed { 0.0 } else { 1.0 },
            passed,
            detail: Some(detail.into()),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: residual {:.3e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.residual
        )?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Rounds a complex matrix to an integer permutation matrix if every entry is
/// within `tol` of 0 or 1 and each row and column has exactly one 1.
pub fn as_permutation(m: &CMatrix, tol: f64) -> Option<Vec<usize>> {
    let n = m.nrows();
    let mut perm = vec![usize::MAX; n];
    let mut col_used = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            if (z - Complex64::new(1.0, 0.0)).norm() < tol {
                if perm[i] != usize::MAX || col_used[j] {
                    return None;
                }
                perm[i] = j;
                col_used[j] = true;
            } else if z.norm() >= tol {
                return None;
            }
        }
    }
    perm.iter().all(|&p| p != usize::MAX).then_some(perm)
}

pub fn verify_modular(md: &ModularData, tol: f64) -> Report {
    let n = md.rank();
    let id = CMatrix::identity(n, n);
    let mut r = Report::default();
    let s = &md.s;
    let t = &md.t;
    r.push(Check::new("S unitary", max_abs_diff(&(s * s.adjoint()), &id), tol));
    r.push(Check::new("T unitary", max_abs_diff(&(t * t.adjoint()), &id), tol));
    r.push(Check::new("S symmetric", max_abs_diff(s, &s.transpose()), tol));
    let tstst = t * s * t * s * t;
    r.push(Check::new("TSTST = S", max_abs_diff(&tstst, s), tol));
    let c = s * s;
    match as_permutation(&c, tol) {
        Some(perm) => {
            r.push(Check::flag("S^2 permutation", true, format!("{perm:?}")));
            let squared = perm.iter().map(|&p| perm[p]).collect::<Vec<_>>();
            let involution = squared.iter().enumerate().all(|(i, &p)| i == p);
            r.push(Check::flag("C^2 = 1", involution, ""));
            let conj = md.system.fusion.rules().conjugation();
            let matches = perm.as_slice() == conj;
            r.push(Check::flag(
                "C implements conjugation",
                matches,
                format!("S^2 gives {perm:?}, conjugation {conj:?}"),
            ));
        }
        None => {
            let dist = c
                .iter()
                .map(|z| z.norm().min((z - Complex64::new(1.0, 0.0)).norm()))
                .fold(0.0, f64::max);
            r.push(Check {
                name: "S^2 permutation".into(),
                residual: dist,
                passed: false,
                detail: Some("S^2 is not a permutation matrix".into()),
            });
        }
    }
    r
}

#[derive(Clone, Debug, PartialEq)]
pub enum VerlindeOutcome {
    Checked(Check),
    Skipped(String),
}

/// Rebuilds `N^rho_{lambda,mu}` from `S` through the Verlinde formula.
pub fn verlinde_check(md: &ModularData, tol: f64) -> VerlindeOutcome {
    let n = md.rank();
    let id = CMatrix::identity(n, n);
    let unitarity = max_abs_diff(&(&md.s * md.s.adjoint()), &id);
    if unitarity > 1e-6 {
        return VerlindeOutcome::Skipped(format!("S is not unitary (residual {unitarity:.3e})"));
    }
    let s = &md.s;
    if let Some(v) = (0..n).find(|&v| s[(0, v)].norm() < 1e-12) {
        return VerlindeOutcome::Skipped(format!("S_(0,{v}) vanishes"));
    }
    let mut worst = 0.0f64;
    let mut at = (0, 0, 0);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v: Complex64 = (0..n)
                    .map(|x| s[(a, x)] * s[(b, x)] * s[(c, x)].conj() / s[(0, x)])
                    .sum();
                let err = (v - Complex64::new(md.system.fusion.n(a, b, c) as f64, 0.0)).norm();
                if err > worst {
                    worst = err;
                    at = (a, b, c);
                }
            }
        }
    }
    let mut check = Check::new("Verlinde formula", worst, tol);
    check.detail = Some(format!("worst at {at:?}"));
    VerlindeOutcome::Checked(check)
}

/// Labels whose Y-row sum against the vacuum column equals `w d_lambda`.
///
/// Every row sum must be close to either `w d_lambda` or 0; anything in
/// between means the input data is inconsistent.
pub fn degenerate_sectors(y: &CMatrix, dims: &[f64], w: f64, tol: f64) -> Result<Vec<usize>> {
    let n = y.nrows();
    let mut out = Vec::new();
    for a in 0..n {
        let sum: Complex64 = (0..n).map(|m| y[(a, m)] * y[(m, 0)]).sum();
        let expected = w * dims[a];
        if (sum - Complex64::new(expected, 0.0)).norm() < tol {
            out.push(a);
        } else if sum.norm() >= tol {
            return Err(Error::DichotomyViolation { label: a, value: sum.norm(), expected });
        }
    }
    Ok(out)
}

/// Degenerate sectors restricted to a subsystem: sums run over `subset` only
/// and `w` is replaced by the subsystem's global index.
pub fn degenerate_within(y: &CMatrix, dims: &[f64], subset: &[usize], tol: f64) -> Result<Vec<usize>> {
    let w: f64 = subset.iter().map(|&g| dims[g] * dims[g]).sum();
    let mut out = Vec::new();
    for &a in subset {
        let sum: Complex64 = subset.iter().map(|&m| y[(a, m)] * y[(m, 0)]).sum();
        let expected = w * dims[a];
        if (sum - Complex64::new(expected, 0.0)).norm() < tol {
            out.push(a);
        } else if sum.norm() >= tol {
            return Err(Error::DichotomyViolation { label: a, value: sum.norm(), expected });
        }
    }
    Ok(out)
}

/// Real and imaginary parts as nested row-major vectors.
pub fn split_complex(m: &CMatrix) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let rows = |f: fn(&Complex64) -> f64| {
        (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect())
            .collect()
    };
    (rows(|z| z.re), rows(|z| z.im))
}

/// Convenience: the real matrix of quantum dimension products `d_a d_b`.
pub fn dimension_products(dims: &[f64]) -> DMatrix<f64> {
    let n = dims.len();
    DMatrix::from_fn(n, n, |a, b| dims[a] * dims[b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gen_cyclic, gen_cyclic_quadratic, gen_su2};

    #[test]
    fn z2_trivial_twists() {
        let sys = gen_cyclic(2, vec![Twist::zero(); 2]).unwrap();
        let y = build_y(&sys, PhaseConvention::Standard);
        for z in y.iter() {
            assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        let (z, c) = central_charge(&sys).unwrap();
        assert!((z - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert_eq!(c.exact, Some(Ratio::from_integer(0)));
        assert_eq!(
            degenerate_sectors(&y, sys.fusion.dims(), 2.0, 1e-6).unwrap(),
            vec![0, 1]
        );
        // fully degenerate: S is still defined (|z| = 2) but not unitary
        let md = ModularData::build(&sys).unwrap();
        assert!(matches!(verlinde_check(&md, 1e-7), VerlindeOutcome::Skipped(_)));
    }

    #[test]
    fn z2_fermion_has_vanishing_z() {
        let sys = gen_cyclic(2, vec![Twist::zero(), Twist::new(1, 2).unwrap()]).unwrap();
        assert!(matches!(central_charge(&sys), Err(Error::DegenerateNormalization(_))));
        assert!(ModularData::build(&sys).is_err());
    }

    #[test]
    fn unit_row_gives_dimensions() {
        let sys = gen_su2(7).unwrap();
        let y = build_y(&sys, PhaseConvention::Standard);
        for m in 0..sys.rank() {
            assert!((y[(0, m)] - Complex64::new(sys.fusion.dim(m), 0.0)).norm() < 1e-12);
            assert!((y[(m, 0)] - Complex64::new(sys.fusion.dim(m), 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn su2_2_vacuum_entry() {
        let md = ModularData::build(&gen_su2(2).unwrap()).unwrap();
        assert!((md.s[(0, 0)].re - 0.5).abs() < 1e-12);
        assert!((md.s[(0, 0)].re - 1.0 / md.global_index().sqrt()).abs() < 1e-12);
        assert_eq!(md.central_charge.exact, Some(Ratio::new(3, 2)));
    }

    #[test]
    fn su2_16_central_charge_and_relations() {
        let md = ModularData::build(&gen_su2(16).unwrap()).unwrap();
        assert!((md.central_charge.value - 8.0 / 3.0).abs() < 1e-8);
        assert_eq!(md.central_charge.exact, Some(Ratio::new(8, 3)));
        let rep = verify_modular(&md, 1e-9);
        assert!(rep.passed(), "{rep}");
        let VerlindeOutcome::Checked(v) = verlinde_check(&md, 1e-7) else { panic!() };
        assert!(v.passed, "{v}");
        assert_eq!(degenerate_sectors(&md.y, md.dims(), md.global_index(), 1e-6).unwrap(), vec![0]);
    }

    #[test]
    fn z3_modular() {
        let md = ModularData::build(&gen_cyclic_quadratic(3, 1, 3).unwrap()).unwrap();
        let rep = verify_modular(&md, 1e-9);
        assert!(rep.passed(), "{rep}");
        assert_eq!(md.central_charge.exact, Some(Ratio::from_integer(2)));
        let VerlindeOutcome::Checked(v) = verlinde_check(&md, 1e-7) else { panic!() };
        assert!(v.passed);
    }

    #[test]
    fn z4_only_vacuum_degenerate() {
        let sys = gen_cyclic_quadratic(4, 1, 8).unwrap();
        let y = build_y(&sys, PhaseConvention::Standard);
        assert_eq!(degenerate_sectors(&y, sys.fusion.dims(), 4.0, 1e-6).unwrap(), vec![0]);
    }

    #[test]
    fn inverse_convention_conjugates_y() {
        let sys = gen_cyclic_quadratic(3, 1, 3).unwrap();
        let a = build_y(&sys, PhaseConvention::Standard);
        let b = build_y(&sys, PhaseConvention::Inverse);
        assert!(max_abs_diff(&a.map(|z| z.conj()), &b) < 1e-14);
    }

    #[test]
    fn perturbed_s_fails_unitarity() {
        let mut md = ModularData::build(&gen_su2(4).unwrap()).unwrap();
        md.s[(1, 2)] += Complex64::new(1e-3, 0.0);
        let rep = verify_modular(&md, 1e-9);
        let u = rep.get("S unitary").unwrap();
        assert!(!u.passed);
        assert!(u.residual > 1e-4 && u.residual < 1e-2);
    }

    #[test]
    fn one_label_system() {
        let md = ModularData::build(&gen_cyclic(1, vec![Twist::zero()]).unwrap()).unwrap();
        assert!(verify_modular(&md, 1e-9).passed());
        assert_eq!(md.s[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(md.t[(0, 0)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn dichotomy_violation_detected() {
        let sys = gen_su2(3).unwrap();
        let mut y = build_y(&sys, PhaseConvention::Standard);
        y[(1, 1)] += Complex64::new(0.5, 0.0);
        assert!(matches!(
            degenerate_sectors(&y, sys.fusion.dims(), sys.fusion.global_index(), 1e-6),
            Err(Error::DichotomyViolation { label: 1, .. })
        ));
    }
}
