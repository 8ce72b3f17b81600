//! Nimreps of the SU(2) fusion rules on ADE graphs.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::catalog::Graph;
use crate::fusion::FusionSystem;
use crate::invariant::{CouplingMatrix, IMatrix};
use crate::linalg::symmetric_eigenvalues;
use crate::modular::{Check, ModularData, Report};

/// Default tolerance for eigenvalue matching.
pub const SPECTRUM_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct Nimrep {
    pub graph: Graph,
    pub level: usize,
    /// `G_0 .. G_k`
    pub matrices: Vec<IMatrix>,
}

impl Nimrep {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn get(&self, j: usize) -> &IMatrix {
        &self.matrices[j]
    }
}

/// Why the Chebyshev recursion did not produce a nimrep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NimrepFailure {
    AffineGraph,
    ZeroLevel,
    /// `G_j` has a negative entry at `cell`.
    Negative { j: usize, cell: (usize, usize), value: i64 },
    /// `G_1 G_k - G_{k-1}` is nonzero at `cell`.
    Closure { k: usize, cell: (usize, usize), value: i64 },
}

impl fmt::Display for NimrepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NimrepFailure::AffineGraph => write!(f, "nimreps are built on ordinary graphs only"),
            NimrepFailure::ZeroLevel => write!(f, "level must be at least 1"),
            NimrepFailure::Negative { j, cell, value } => {
                write!(f, "G_{j} has entry {value} at {cell:?}")
            }
            NimrepFailure::Closure { k, cell, value } => write!(
                f,
                "closure fails at level {k}: (G_1 G_{k} - G_{}) has entry {value} at {cell:?}",
                k - 1
            ),
        }
    }
}

impl std::error::Error for NimrepFailure {}

fn first_nonzero(m: &IMatrix, pred: impl Fn(i64) -> bool) -> Option<((usize, usize), i64)> {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if pred(m[(i, j)]) {
                return Some(((i, j), m[(i, j)]));
            }
        }
    }
    None
}

/// `G_0 = 1`, `G_1 = adjacency`, `G_{j+1} = G_1 G_j - G_{j-1}`.
pub fn build_nimrep_su2(graph: &Graph, k: usize) -> Result<Nimrep, NimrepFailure> {
    if graph.affine {
        return Err(NimrepFailure::AffineGraph);
    }
    if k == 0 {
        return Err(NimrepFailure::ZeroLevel);
    }
    let n = graph.vertex_count();
    let g1 = graph.adjacency.clone();
    let mut mats = vec![IMatrix::identity(n, n), g1.clone()];
    for j in 1..k {
        let next = &g1 * &mats[j] - &mats[j - 1];
        if let Some((cell, value)) = first_nonzero(&next, |x| x < 0) {
            return Err(NimrepFailure::Negative { j: j + 1, cell, value });
        }
        mats.push(next);
    }
    mats.truncate(k + 1);
    let closure = &g1 * &mats[k] - &mats[k - 1];
    if let Some((cell, value)) = first_nonzero(&closure, |x| x != 0) {
        return Err(NimrepFailure::Closure { k, cell, value });
    }
    Ok(Nimrep { graph: graph.clone(), level: k, matrices: mats })
}

/// Exact checks of the nimrep axioms against a fusion system.
pub fn verify_nimrep(mats: &[IMatrix], fusion: &FusionSystem) -> Report {
    let mut r = Report::default();
    let n = fusion.rank();
    if mats.len() != n {
        r.push(Check::flag(
            "label count",
            false,
            format!("{} matrices for {} labels", mats.len(), n),
        ));
        return r;
    }
    let v = mats[0].nrows();
    let id = IMatrix::identity(v, v);
    r.push(Check::flag("G_0 = 1", mats[0] == id, "exact"));

    let negative = mats
        .iter()
        .enumerate()
        .find_map(|(j, m)| first_nonzero(m, |x| x < 0).map(|(cell, value)| (j, cell, value)));
    r.push(match negative {
        None => Check::flag("non-negative", true, "exact"),
        Some((j, cell, value)) => {
            Check::flag("non-negative", false, format!("G_{j} has {value} at {cell:?}"))
        }
    });

    let mut fusion_fail = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let lhs = &mats[a] * &mats[b];
            let mut rhs = IMatrix::zeros(v, v);
            for c in 0..n {
                let coeff = fusion.n(a, b, c) as i64;
                if coeff != 0 {
                    rhs += &mats[c] * coeff;
                }
            }
            if lhs != rhs {
                fusion_fail = Some((a, b));
                break 'outer;
            }
        }
    }
    r.push(match fusion_fail {
        None => Check::flag("fusion relation", true, "exact"),
        Some((a, b)) => Check::flag("fusion relation", false, format!("fails at ({a},{b})")),
    });

    let conj_fail = (0..n).find(|&a| mats[fusion.conj(a)] != mats[a].transpose());
    r.push(match conj_fail {
        None => Check::flag("conjugate = transpose", true, "exact"),
        Some(a) => Check::flag("conjugate = transpose", false, format!("fails at {a}")),
    });
    r
}

/// Sorted-order pairing of two real multisets; returns the worst gap.
pub fn match_spectra(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.total_cmp(y));
    b.sort_by(|x, y| x.total_cmp(y));
    a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// `{ S_{l,m} / S_{0,m} }` with multiplicity `Z_{m,m}`, plus the largest
/// imaginary part seen.
pub fn expected_spectrum(md: &ModularData, z: &CouplingMatrix, label: usize) -> (Vec<f64>, f64) {
    let mut out = Vec::new();
    let mut imag: f64 = 0.0;
    for m in 0..md.rank() {
        let mult = z.z[(m, m)];
        if mult > 0 {
            let q: Complex64 = md.s[(label, m)] / md.s[(0, m)];
            imag = imag.max(q.im.abs());
            out.extend(std::iter::repeat_n(q.re, mult as usize));
        }
    }
    (out, imag)
}

/// Compares the spectrum of every `G_l` with the diagonal of `z`.
pub fn spectrum_check(nimrep: &Nimrep, z: &CouplingMatrix, md: &ModularData, tol: f64) -> Report {
    let mut r = Report::default();
    let v = nimrep.vertex_count();
    let tr = z.trace();
    if tr != v as i64 || nimrep.matrices.len() != md.rank() {
        r.push(Check::flag(
            "size",
            false,
            format!(
                "|V| = {v}, tr Z = {tr}, {} matrices for {} labels",
                nimrep.matrices.len(),
                md.rank()
            ),
        ));
        return r;
    }
    for (l, g) in nimrep.matrices.iter().enumerate() {
        let name = format!("spectrum G_{l}");
        if *g != g.transpose() {
            r.push(Check::flag(name, false, "matrix is not symmetric"));
            continue;
        }
        let ev = symmetric_eigenvalues(&g.map(|x| x as f64));
        let (expected, imag) = expected_spectrum(md, z, l);
        r.push(Check::new(name, match_spectra(&ev, &expected).max(imag), tol));
    }
    r
}

/// `G_k` as a vertex permutation, if it is one.
pub fn top_permutation(nimrep: &Nimrep) -> Option<Vec<usize>> {
    let g = nimrep.matrices.last()?;
    let n = g.nrows();
    let mut perm = Vec::with_capacity(n);
    for i in 0..n {
        let row: Vec<usize> = (0..n).filter(|&j| g[(i, j)] != 0).collect();
        if row.len() != 1 || g[(i, row[0])] != 1 {
            return None;
        }
        perm.push(row[0]);
    }
    let mut seen = vec![false; n];
    for &p in &perm {
        if std::mem::replace(&mut seen[p], true) {
            return None;
        }
    }
    Some(perm)
}

/// `G_k` is a graph automorphism of order at most two, and `G_k^T G_k = 1`.
pub fn simple_current_check(nimrep: &Nimrep) -> Check {
    let Some(perm) = top_permutation(nimrep) else {
        return Check::flag("G_k is a graph symmetry", false, "G_k is not a permutation matrix");
    };
    let adj = &nimrep.graph.adjacency;
    let n = perm.len();
    let involution = (0..n).all(|i| perm[perm[i]] == i);
    let automorphism = (0..n).all(|i| (0..n).all(|j| adj[(perm[i], perm[j])] == adj[(i, j)]));
    let g = nimrep.matrices.last().unwrap();
    let orthogonal = g.transpose() * g == IMatrix::identity(n, n);
    Check::flag(
        "G_k is a graph symmetry",
        involution && automorphism && orthogonal,
        format!("permutation {perm:?}"),
    )
}

/// Largest adjacency eigenvalue of a graph.
pub fn perron_frobenius_eigenvalue(adj: &DMatrix<i64>) -> f64 {
    symmetric_eigenvalues(&adj.map(|x| x as f64)).last().copied().unwrap_or(0.0)
}

/// Whether the PF eigenvalue equals `2 cos(pi / (k + 2))`.
pub fn level_matches_spectrum(graph: &Graph, k: usize, tol: f64) -> bool {
    let target = 2.0 * (std::f64::consts::PI / (k as f64 + 2.0)).cos();
    (perron_frobenius_eigenvalue(&graph.adjacency) - target).abs() < tol
}
