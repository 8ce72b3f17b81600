//! Global indices, chiral norm identities, Y-commutation and the invariant of
//! a degenerate subsystem.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::invariant::{CouplingMatrix, IMatrix};
use crate::linalg::{commutator_residual, max_abs_diff, CMatrix};
use crate::modular::{degenerate_sectors, degenerate_within, Check, ModularData, Report};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GlobalIndices {
    pub w: f64,
    pub w_plus: f64,
    pub w_minus: f64,
    pub w_alpha: f64,
    pub w_zero: f64,
}

impl fmt::Display for GlobalIndices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w = {:.12}, w+ = {:.12}, w- = {:.12}, w_alpha = {:.12}, w_0 = {:.12}",
            self.w, self.w_plus, self.w_minus, self.w_alpha, self.w_zero
        )
    }
}

/// `sum_l d_l Z_{l,0}`
pub fn vacuum_column_sum(z: &CouplingMatrix, d: &[f64]) -> f64 {
    (0..d.len()).map(|l| d[l] * z.z[(l, 0)] as f64).sum()
}

/// `sum_l Z_{0,l} d_l`, accumulated in the same order as the column sum so
/// that a vacuum-symmetric `Z` gives bit-identical results.
pub fn vacuum_row_sum(z: &CouplingMatrix, d: &[f64]) -> f64 {
    (0..d.len()).map(|l| d[l] * z.z[(0, l)] as f64).sum()
}

/// `sum_{l,m} d_l Z_{l,m} d_m`
pub fn dimension_pairing(z: &CouplingMatrix, d: &[f64]) -> f64 {
    let n = d.len();
    (0..n)
        .flat_map(|l| (0..n).map(move |m| (l, m)))
        .map(|(l, m)| d[l] * z.z[(l, m)] as f64 * d[m])
        .sum()
}

pub fn global_indices(z: &CouplingMatrix, d: &[f64]) -> GlobalIndices {
    let w: f64 = d.iter().map(|x| x * x).sum();
    let w_plus = w / vacuum_column_sum(z, d);
    let w_minus = w / vacuum_row_sum(z, d);
    let w_alpha = w * w / dimension_pairing(z, d);
    GlobalIndices { w, w_plus, w_minus, w_alpha, w_zero: w_plus * w_minus / w_alpha }
}

/// `Z` is supported on pairs with equal twists.
pub fn omega_invariant(z: &CouplingMatrix, md: &ModularData) -> bool {
    let n = z.rank();
    (0..n).all(|a| (0..n).all(|b| z.z[(a, b)] == 0 || md.same_twist(a, b)))
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChiralNorms {
    pub a: f64,
    pub b: f64,
    pub target: f64,
    pub c: f64,
    pub dzd: f64,
    pub degenerate: Vec<usize>,
    pub report: Report,
}

/// `A = sum Y_{0,l} Y_{l,m} Z_{m,0}` and `B = sum Y_{0,l} Y_{l,m} Z_{0,m}` against
/// `w sum_{l in deg} d_l Z_{l,0}`; `C = sum d_l conj(w_l) w_m Z_{l,m} d_m` against
/// `sum d Z d`.
pub fn chiral_norm_check(md: &ModularData, z: &CouplingMatrix, tol: f64) -> Result<ChiralNorms> {
    if !omega_invariant(z, md) {
        return Err(Error::Precondition("Z does not commute with Omega".into()));
    }
    let n = md.rank();
    let y = &md.y;
    let d = md.dims();
    let w = md.global_index();
    let deg = degenerate_sectors(y, d, w, 1e-6)?;

    let mut a = Complex64::new(0.0, 0.0);
    let mut b = Complex64::new(0.0, 0.0);
    for l in 0..n {
        for m in 0..n {
            let p = y[(0, l)] * y[(l, m)];
            a += p * z.z[(m, 0)] as f64;
            b += p * z.z[(0, m)] as f64;
        }
    }
    let target = w * deg.iter().map(|&l| d[l] * z.z[(l, 0)] as f64).sum::<f64>();

    let mut c = Complex64::new(0.0, 0.0);
    for l in 0..n {
        for m in 0..n {
            let zz = z.z[(l, m)];
            if zz != 0 {
                let phase = md.omega[(l, l)].conj() * md.omega[(m, m)];
                c += phase * (d[l] * zz as f64 * d[m]);
            }
        }
    }
    let dzd = dimension_pairing(z, d);

    let mut report = Report::default();
    report.push(Check::new("A = w sum_deg d Z_(l,0)", (a - target).norm() / target.max(1.0), tol));
    report.push(Check::new("B = w sum_deg d Z_(l,0)", (b - target).norm() / target.max(1.0), tol));
    report.push(Check::new("C = sum d Z d", (c - dzd).norm() / dzd.max(1.0), tol));
    Ok(ChiralNorms { a: a.re, b: b.re, target, c: c.re, dzd, degenerate: deg, report })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutantReport {
    pub y_residual: f64,
    pub omega_residual: f64,
    /// `sum_{l in deg} d_l Z_{l,0}`
    pub degenerate_sum: f64,
    /// `w / w_alpha`
    pub index_ratio: f64,
    pub report: Report,
}

pub fn commutant_check(md: &ModularData, z: &CouplingMatrix, tol: f64) -> Result<CommutantReport> {
    let zc = z.to_complex();
    let y_residual = commutator_residual(&md.y, &zc);
    let omega_residual = commutator_residual(&md.omega, &zc);
    let d = md.dims();
    let w = md.global_index();
    let deg = degenerate_sectors(&md.y, d, w, 1e-6)?;
    let degenerate_sum: f64 = deg.iter().map(|&l| d[l] * z.z[(l, 0)] as f64).sum();
    let index_ratio = dimension_pairing(z, d) / w;
    let mut report = Report::default();
    report.push(Check::new("YZ = ZY", y_residual, tol));
    report.push(Check::new("Omega Z = Z Omega", omega_residual, tol));
    report.push(Check::flag(
        "sum_deg d Z_(l,0) <= w / w_alpha",
        degenerate_sum <= index_ratio * (1.0 + 1e-9),
        format!("{degenerate_sum:.12} vs {index_ratio:.12}"),
    ));
    Ok(CommutantReport { y_residual, omega_residual, degenerate_sum, index_ratio, report })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LrCounting {
    pub dzd: f64,
    pub v0: f64,
    pub w: f64,
    pub w_delta: f64,
    /// `w_Delta = w^2` to relative `1e-8`
    pub holds: bool,
    /// `(sum Z^2)^2`
    pub sector_count: i64,
}

pub fn lr_counting(z: &CouplingMatrix, d: &[f64]) -> LrCounting {
    let w: f64 = d.iter().map(|x| x * x).sum();
    let dzd = dimension_pairing(z, d);
    let v0 = dzd * dzd;
    let w_delta = w.powi(4) / v0;
    let sq = z.sum_of_squares();
    LrCounting { dzd, v0, w, w_delta, holds: relative(w_delta, w * w) < 1e-8, sector_count: sq * sq }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerateInvariant {
    pub z: CouplingMatrix,
    pub w_gamma: f64,
    pub report: Report,
}

fn closed_subsystem(md: &ModularData, gamma: &[usize]) -> Result<()> {
    let f = &md.system.fusion;
    let n = md.rank();
    let mut member = vec![false; n];
    for &g in gamma {
        if g >= n {
            return Err(Error::Precondition(format!("label {g} out of range")));
        }
        member[g] = true;
    }
    if !member[0] {
        return Err(Error::Precondition("subsystem must contain 0".into()));
    }
    for &a in gamma {
        if !member[f.conj(a)] {
            return Err(Error::Precondition(format!("subsystem not closed under conjugation at {a}")));
        }
        for &b in gamma {
            if let Some(c) = (0..n).find(|&c| f.n(a, b, c) != 0 && !member[c]) {
                return Err(Error::Precondition(format!(
                    "subsystem not closed under fusion: {a} x {b} contains {c}"
                )));
            }
        }
    }
    Ok(())
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// `Z_{l,m} = w_Gamma^{-1} <y^l, y^m>_Gamma` on `Gamma`, zero elsewhere, computed
/// exactly as `sum_{t in Theta} N^t_{conj(l),m} d_t` (equivalently `N^m_{l,t}`).
/// Writing the conjugate on the other side, `N^m_{conj(l),t}`, gives `C Z`
/// instead, which differs from the inner product on non-self-conjugate labels.
pub fn degenerate_invariant(
    md: &ModularData,
    gamma: &[usize],
    theta: &[usize],
    tol: f64,
) -> Result<DegenerateInvariant> {
    let gamma = sorted(gamma);
    let theta = sorted(theta);
    closed_subsystem(md, &gamma)?;
    let f = &md.system.fusion;
    let d = md.dims();
    let y = &md.y;
    let n = md.rank();

    if let Some(t) = theta.iter().find(|t| !gamma.contains(t)) {
        return Err(Error::Precondition(format!("theta label {t} is not in gamma")));
    }
    let deg = degenerate_within(y, d, &gamma, tol)?;
    if deg != theta {
        return Err(Error::Precondition(format!(
            "theta {theta:?} is not the degenerate subsystem {deg:?} of gamma"
        )));
    }
    if let Some(t) = theta.iter().find(|&&t| !md.system.twists[t].is_zero()) {
        return Err(Error::Precondition(format!("theta label {t} is not bosonic")));
    }
    let mut dt = Vec::with_capacity(theta.len());
    for &t in &theta {
        let r = d[t].round();
        if (d[t] - r).abs() > 1e-9 {
            return Err(Error::Precondition(format!("d_{t} = {} is not an integer", d[t])));
        }
        dt.push(r as i64);
    }

    let y0: Vec<Complex64> = (0..n).map(|g| y[(0, g)]).collect();
    for l in (0..n).filter(|l| !gamma.contains(l)) {
        let s: Complex64 = gamma.iter().map(|&g| y[(l, g)].conj() * y0[g]).sum();
        if s.norm() >= tol {
            return Err(Error::NotYClosed { label: l, residual: s.norm() });
        }
    }

    let mut zm = IMatrix::zeros(n, n);
    for &l in &gamma {
        for &m in &gamma {
            zm[(l, m)] = theta
                .iter()
                .zip(&dt)
                .map(|(&t, &dv)| f.n(f.conj(l), m, t) as i64 * dv)
                .sum();
        }
    }
    let z = CouplingMatrix::new(zm);
    let w_gamma: f64 = gamma.iter().map(|&g| d[g] * d[g]).sum();

    let mut inner = CMatrix::zeros(n, n);
    for &l in &gamma {
        for &m in &gamma {
            let s: Complex64 = gamma.iter().map(|&g| y[(l, g)].conj() * y[(m, g)]).sum();
            inner[(l, m)] = s / w_gamma;
        }
    }

    let mut report = Report::default();
    report.push(Check::flag("Z_(0,0) = 1", z.z[(0, 0)] == 1, format!("Z_(0,0) = {}", z.z[(0, 0)])));
    report.push(Check::flag("Omega Z = Z Omega", omega_invariant(&z, md), "exact on twists"));
    report.push(Check::new("YZ = ZY", commutator_residual(y, &z.to_complex()), tol));
    report.push(Check::new("integer formula = Y inner product", max_abs_diff(&inner, &z.to_complex()), tol));
    Ok(DegenerateInvariant { z, w_gamma, report })
}

/// Pass-through check of user-supplied extension data: `S^ext b = b S`,
/// `T^ext b = b T` for both `b`, and `Z = b+^T b-`.
pub fn verify_extension(
    md: &ModularData,
    s_ext: &CMatrix,
    t_ext: &CMatrix,
    b_plus: &IMatrix,
    b_minus: &IMatrix,
    z: &CouplingMatrix,
    tol: f64,
) -> Report {
    let mut r = Report::default();
    let to_c = |m: &IMatrix| m.map(|x| Complex64::new(x as f64, 0.0));
    let shapes_ok = b_plus.ncols() == md.rank()
        && b_minus.ncols() == md.rank()
        && b_plus.nrows() == s_ext.nrows()
        && b_minus.nrows() == s_ext.nrows()
        && s_ext.is_square()
        && t_ext.shape() == s_ext.shape();
    if !shapes_ok {
        r.push(Check::flag("shapes", false, "incompatible matrix shapes"));
        return r;
    }
    for (name, b) in [("+", b_plus), ("-", b_minus)] {
        let bc = to_c(b);
        r.push(Check::new(format!("S^ext b{name} = b{name} S"), max_abs_diff(&(s_ext * &bc), &(&bc * &md.s)), tol));
        r.push(Check::new(format!("T^ext b{name} = b{name} T"), max_abs_diff(&(t_ext * &bc), &(&bc * &md.t)), tol));
    }
    let product = b_plus.transpose() * b_minus;
    r.push(Check::flag("Z = b+^T b-", product == z.z, "exact"));
    r
}
