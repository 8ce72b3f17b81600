//! McKay restriction series on affine ADE graphs and Kostant's polynomials.
//!
//! `n_j^g` is the multiplicity of the vertex `g` in the restriction of the
//! `(j+1)`-dimensional SU(2) representation. The generating function
//! `f_g(q) = sum_j n_j^g q^j` obeys
//! `sum_g' A_{g,g'} f_g' = (q + 1/q) f_g - delta_{g,*} / q`,
//! which gives the forward recursion `n_{j+1} = A n_j - n_{j-1}`.

use std::fmt;

use crate::catalog::Graph;
use crate::error::{Error, Result};
use crate::linalg::symmetric_eigenvalues;
use crate::modular::{Check, Report};
use crate::nimrep::build_nimrep_su2;

/// Integer polynomial, lowest degree first.
pub type Poly = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostantSeries {
    pub graph: Graph,
    pub truncation: usize,
    /// `coeffs[j][g] = n_j^g` for `0 <= j <= truncation`
    pub coeffs: Vec<Vec<i64>>,
}

impl KostantSeries {
    pub fn star(&self) -> usize {
        self.graph.extension.expect("affine graph")
    }

    /// `f_g` truncated at degree `truncation`.
    pub fn series(&self, g: usize) -> Poly {
        self.coeffs.iter().map(|row| row[g]).collect()
    }
}

pub fn default_truncation(h: usize) -> usize {
    3 * h + 4
}

pub fn mckay_series(graph: &Graph, truncation: usize) -> Result<KostantSeries> {
    let star = graph
        .extension
        .ok_or_else(|| Error::Precondition(format!("{} is not an affine graph", graph.name)))?;
    if truncation < 1 {
        return Err(Error::Precondition("truncation must be at least 1".into()));
    }
    let n = graph.vertex_count();
    let adj = &graph.adjacency;
    let mut prev = vec![0i64; n];
    let mut cur = vec![0i64; n];
    cur[star] = 1;
    let mut coeffs = vec![cur.clone()];
    for j in 0..truncation {
        let next: Vec<i64> = (0..n)
            .map(|g| (0..n).map(|h| adj[(g, h)] * cur[h]).sum::<i64>() - prev[g])
            .collect();
        if let Some(g) = (0..n).find(|&g| next[g] < 0) {
            return Err(Error::NotMcKay { j: j + 1, vertex: g, value: next[g] });
        }
        if let Some(g) = (0..n).find(|&g| next[g] > j as i64 + 2) {
            return Err(Error::Invalid(format!(
                "n_{}^{g} = {} exceeds the dimension bound",
                j + 1,
                next[g]
            )));
        }
        prev = std::mem::replace(&mut cur, next);
        coeffs.push(cur.clone());
    }
    Ok(KostantSeries { graph: graph.clone(), truncation, coeffs })
}

/// Integer marks: the PF eigenvector of the affine adjacency with `*` set to 1.
/// Verified exactly against `A m = 2 m`.
pub fn affine_marks(graph: &Graph) -> Result<Vec<i64>> {
    let star = graph
        .extension
        .ok_or_else(|| Error::Precondition(format!("{} is not an affine graph", graph.name)))?;
    let a = graph.adjacency.map(|x| x as f64);
    let n = a.nrows();
    let top = *symmetric_eigenvalues(&a).last().unwrap();
    let eig = nalgebra::SymmetricEigen::new(a);
    let col = (0..n)
        .min_by(|&i, &j| (eig.eigenvalues[i] - top).abs().total_cmp(&(eig.eigenvalues[j] - top).abs()))
        .unwrap();
    let v = eig.eigenvectors.column(col);
    let marks: Vec<i64> = (0..n).map(|i| (v[i] / v[star]).round() as i64).collect();
    let ok = (0..n).all(|g| (0..n).map(|h| graph.adjacency[(g, h)] * marks[h]).sum::<i64>() == 2 * marks[g]);
    if !ok || marks.iter().any(|&m| m <= 0) {
        return Err(Error::Invalid(format!("{} has no integral PF eigenvector at 2", graph.name)));
    }
    Ok(marks)
}

/// Product of two polynomials, truncated to degree `max_deg`.
pub fn poly_mul(a: &[i64], b: &[i64], max_deg: usize) -> Poly {
    let len = (a.len() + b.len()).saturating_sub(1).min(max_deg + 1);
    let mut out = vec![0; len];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    out
}

pub fn poly_add(a: &[i64], b: &[i64]) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

pub fn poly_scale_shift(a: &[i64], c: i64, shift: usize) -> Poly {
    let mut out = vec![0; a.len() + shift];
    for (i, &x) in a.iter().enumerate() {
        out[i + shift] = c * x;
    }
    out
}

/// Drops trailing zeros.
pub fn poly_trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn binomial_denominator(r: usize, s: usize) -> Poly {
    let mut a = vec![0; r + 1];
    a[0] = 1;
    a[r] -= 1;
    let mut b = vec![0; s + 1];
    b[0] = 1;
    b[s] -= 1;
    poly_mul(&a, &b, r + s)
}

pub fn format_poly(p: &[i64]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| match (d, c) {
            (0, c) => c.to_string(),
            (1, 1) => "q".to_string(),
            (1, c) => format!("{c}q"),
            (d, 1) => format!("q^{d}"),
            (d, c) => format!("{c}q^{d}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostantPolynomial {
    pub vertex: usize,
    pub coeffs: Poly,
    pub r: usize,
    pub s: usize,
}

impl fmt::Display for KostantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p_{} = {}", self.vertex, format_poly(&self.coeffs))
    }
}

/// `p_g = f_g (1 - q^r)(1 - q^s)`, certified to vanish above degree `h` up to
/// the truncation.
pub fn kostant_poly(series: &KostantSeries, r: usize, s: usize, h: usize) -> Result<Vec<KostantPolynomial>> {
    let big_j = series.truncation;
    if r == 0 || s == 0 {
        return Err(Error::Precondition("r and s must be positive".into()));
    }
    if big_j < 2 * h + r + s {
        return Err(Error::Precondition(format!(
            "truncation {big_j} is below 2h + r + s = {}",
            2 * h + r + s
        )));
    }
    let den = binomial_denominator(r, s);
    let star = series.star();
    let mut out = Vec::new();
    for g in 0..series.graph.vertex_count() {
        let full = poly_mul(&series.series(g), &den, big_j);
        if let Some(d) = (h + 1..full.len()).find(|&d| full[d] != 0) {
            return Err(Error::NoKostantPair(format!(
                "(r, s) = ({r}, {s}): vertex {g} has coefficient {} at degree {d} > h = {h}",
                full[d]
            )));
        }
        if let Some(d) = (0..full.len()).find(|&d| full[d] < 0) {
            return Err(Error::NoKostantPair(format!(
                "(r, s) = ({r}, {s}): vertex {g} has negative coefficient at degree {d}"
            )));
        }
        let coeffs = poly_trim(full[..=h.min(full.len() - 1)].to_vec());
        if g == star {
            let mut expected = vec![0; h + 1];
            expected[0] = 1;
            expected[h] += 1;
            if coeffs != expected {
                return Err(Error::NoKostantPair(format!(
                    "(r, s) = ({r}, {s}): p_* = {} is not 1 + q^{h}",
                    format_poly(&coeffs)
                )));
            }
        }
        out.push(KostantPolynomial { vertex: g, coeffs, r, s });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsReport {
    pub r: usize,
    pub s: usize,
    pub group_order: usize,
    pub rs_equals_order: bool,
    pub rs_equals_twice_order: bool,
    /// every pair tried, with whether it certified
    pub tried: Vec<(usize, usize, bool)>,
    pub polynomials: Vec<KostantPolynomial>,
}

impl fmt::Display for RsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(r, s) = ({}, {}), r + s = {}", self.r, self.s, self.r + self.s)?;
        writeln!(
            f,
            "r s = {}; #G = {} (r s = #G: {}); 2 #G = {} (r s = 2 #G: {})",
            self.r * self.s,
            self.group_order,
            self.rs_equals_order,
            2 * self.group_order,
            self.rs_equals_twice_order
        )
    }
}

/// Tries every `r <= s` with `r + s = h + 2`; exactly one must certify.
pub fn find_rs(series: &KostantSeries, h: usize, group_order: usize) -> Result<RsReport> {
    let mut tried = Vec::new();
    let mut found = Vec::new();
    for r in 1..=(h + 2) / 2 {
        let s = h + 2 - r;
        match kostant_poly(series, r, s, h) {
            Ok(p) => {
                tried.push((r, s, true));
                found.push((r, s, p));
            }
            Err(Error::NoKostantPair(_)) => tried.push((r, s, false)),
            Err(e) => return Err(e),
        }
    }
    if found.len() != 1 {
        return Err(Error::NoKostantPair(format!(
            "{} pairs certify for {} (expected exactly one)",
            found.len(),
            series.graph.name
        )));
    }
    let (r, s, polynomials) = found.pop().unwrap();
    Ok(RsReport {
        r,
        s,
        group_order,
        rs_equals_order: r * s == group_order,
        rs_equals_twice_order: r * s == 2 * group_order,
        tried,
        polynomials,
    })
}

/// Compares Kostant coefficients with nimrep entries `(G_j)_{iota, g}` and
/// checks `A p = (q + 1/q) p - delta_* Omega / q` with
/// `Omega = (1 + q^2) p_* - q p_iota`.
pub fn nimrep_match(ordinary: &Graph, polys: &[KostantPolynomial], h: usize) -> Report {
    let mut r = Report::default();
    let k = h - 2;
    let nim = match build_nimrep_su2(ordinary, k) {
        Ok(n) => n,
        Err(e) => {
            r.push(Check::flag("nimrep", false, e.to_string()));
            return r;
        }
    };
    let v = ordinary.vertex_count();
    let iota = ordinary.iota;
    let coeff = |p: &KostantPolynomial, d: usize| p.coeffs.get(d).copied().unwrap_or(0);

    let mut mismatch = None;
    'outer: for g in 0..v {
        let p = &polys[g];
        if coeff(p, 0) != 0 || p.coeffs.len() > k + 2 {
            mismatch = Some(format!("p_{g} has support outside q^1..q^{}", k + 1));
            break;
        }
        for j in 0..=k {
            let expected = nim.matrices[j][(iota, g)];
            if coeff(p, j + 1) != expected {
                mismatch = Some(format!(
                    "vertex {g}, j = {j}: Kostant {} vs nimrep {expected}",
                    coeff(p, j + 1)
                ));
                break 'outer;
            }
        }
    }
    r.push(match mismatch {
        None => Check::flag("coefficients = nimrep entries", true, format!("iota = {iota}")),
        Some(m) => Check::flag("coefficients = nimrep entries", false, m),
    });

    // multiplied through by q: q A p = (q^2 + 1) p - delta_* Omega
    let affine_adj = {
        let star = v;
        let mut a = nalgebra::DMatrix::<i64>::zeros(v + 1, v + 1);
        a.view_mut((0, 0), (v, v)).copy_from(&ordinary.adjacency);
        a[(iota, star)] = 1;
        a[(star, iota)] = 1;
        a
    };
    let star = v;
    let one_plus_q2 = vec![1, 0, 1];
    let omega = poly_add(
        &poly_mul(&one_plus_q2, &polys[star].coeffs, usize::MAX / 2),
        &poly_scale_shift(&polys[iota].coeffs, -1, 1),
    );
    let mut bad = None;
    for g in 0..=v {
        let mut lhs = Vec::new();
        for g2 in 0..=v {
            let a = affine_adj[(g, g2)];
            if a != 0 {
                lhs = poly_add(&lhs, &poly_scale_shift(&polys[g2].coeffs, a, 1));
            }
        }
        let mut rhs = poly_mul(&one_plus_q2, &polys[g].coeffs, usize::MAX / 2);
        if g == star {
            rhs = poly_add(&rhs, &poly_scale_shift(&omega, -1, 0));
        }
        if poly_trim(lhs) != poly_trim(rhs) {
            bad = Some(g);
            break;
        }
    }
    r.push(match bad {
        None => Check::flag("polynomial identity", true, format!("Omega = {}", format_poly(&poly_trim(omega)))),
        Some(g) => Check::flag("polynomial identity", false, format!("fails at vertex {g}")),
    });
    r
}

/// `sum_g m_g n_j^g = j + 1` for all `j`.
pub fn dimension_identity(series: &KostantSeries) -> Result<bool> {
    let marks = affine_marks(&series.graph)?;
    Ok(series
        .coeffs
        .iter()
        .enumerate()
        .all(|(j, row)| row.iter().zip(&marks).map(|(n, m)| n * m).sum::<i64>() == j as i64 + 1))
}

/// Re-evaluates the series identity coefficientwise up to degree `J - 1`.
pub fn series_identity(series: &KostantSeries) -> bool {
    let n = series.graph.vertex_count();
    let a = &series.graph.adjacency;
    let c = &series.coeffs;
    (0..series.truncation).all(|j| {
        (0..n).all(|g| {
            let lhs: i64 = (0..n).map(|h| a[(g, h)] * c[j][h]).sum();
            // coefficient of q^j on the right: n_{j-1} + n_{j+1}, minus the
            // q^{-1} term which only appears at j = -1
            let rhs = c[j + 1][g] + if j > 0 { c[j - 1][g] } else { 0 };
            lhs == rhs
        })
    })
}
