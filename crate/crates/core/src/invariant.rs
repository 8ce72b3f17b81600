//! Modular invariant coupling matrices: bounded enumeration of the integer
//! commutant of `S` and `T`, and the block-structure analysis of the results.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{commutator_residual, to_complex, CMatrix};
use crate::modular::ModularData;

pub type IMatrix = DMatrix<i64>;

/// Non-negative integer coupling matrix with `Z_{0,0} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CouplingMatrix {
    pub z: IMatrix,
}

impl CouplingMatrix {
    pub fn new(z: IMatrix) -> Self {
        CouplingMatrix { z }
    }

    pub fn identity(n: usize) -> Self {
        CouplingMatrix { z: IMatrix::identity(n, n) }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("coupling matrix must be square".into()));
        }
        Ok(CouplingMatrix { z: IMatrix::from_fn(n, n, |i, j| rows[i][j]) })
    }

    pub fn rank(&self) -> usize {
        self.z.nrows()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|i| self.z.row(i).iter().copied().collect()).collect()
    }

    /// Row-major entries; the canonical sort key.
    pub fn flat(&self) -> Vec<i64> {
        self.rows().concat()
    }

    pub fn trace(&self) -> i64 {
        self.z.trace()
    }

    pub fn entry_sum(&self) -> i64 {
        self.z.sum()
    }

    pub fn sum_of_squares(&self) -> i64 {
        self.z.iter().map(|x| x * x).sum()
    }

    pub fn to_complex(&self) -> CMatrix {
        to_complex(&self.z)
    }
}

impl fmt::Display for CouplingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnumOptions {
    /// maximum number of search nodes before giving up
    pub budget: u64,
    /// S-commutator acceptance threshold during search
    pub tolerance: f64,
    /// threshold for the compensated re-verification of every accepted matrix
    pub verify_tolerance: f64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { budget: 1_000_000, tolerance: 1e-6, verify_tolerance: 1e-9 }
    }
}

/// Entry bound `floor(d_a d_b)` restricted to pairs with equal twists.
pub fn entry_bounds(md: &ModularData) -> IMatrix {
    let d = md.dims();
    let n = md.rank();
    IMatrix::from_fn(n, n, |a, b| {
        if md.same_twist(a, b) {
            (d[a] * d[b] + 1e-9).floor() as i64
        } else {
            0
        }
    })
}

/// `1/S_{0,0}^2`
pub fn gannon_bound(md: &ModularData) -> f64 {
    1.0 / md.s[(0, 0)].norm_sqr()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumStats {
    pub free_cells: usize,
    pub nodes: u64,
    pub candidates: usize,
    pub rejected_on_reverify: usize,
}

/// Every non-negative integer matrix with `Z_{0,0} = 1` commuting exactly with
/// `T` and with `S` to the search tolerance, sorted lexicographically.
pub fn enumerate(md: &ModularData, opts: &EnumOptions) -> Result<Vec<CouplingMatrix>> {
    enumerate_with_stats(md, opts).map(|(v, _)| v)
}

pub fn enumerate_with_stats(
    md: &ModularData,
    opts: &EnumOptions,
) -> Result<(Vec<CouplingMatrix>, EnumStats)> {
    let n = md.rank();
    let bounds = entry_bounds(md);
    let gannon = gannon_bound(md) + 1e-6;

    let mut cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0) && bounds[(a, b)] > 0)
        .collect();
    // decreasing bound, then row-major
    cells.sort_by_key(|&(a, b)| (std::cmp::Reverse(bounds[(a, b)]), a, b));

    let mut found = Vec::new();
    let mut nodes = 0;
    if let Some(reduced) = reduce(md, &cells) {
        let mut search = Search {
            cells: &cells,
            ub: cells.iter().map(|&(a, b)| bounds[(a, b)]).collect(),
            values: vec![0; cells.len()],
            reduced,
            gannon,
            tol: opts.tolerance,
            budget: opts.budget,
            nodes: 0,
            found: Vec::new(),
            n,
        };
        search.run()?;
        nodes = search.nodes;
        // acceptance at the search tolerance
        found = search
            .found
            .into_iter()
            .map(CouplingMatrix::new)
            .filter(|z| commutator_residual(&md.s, &z.to_complex()) < search.tol)
            .collect();
    }
    let stats_nodes = nodes;

    let s_fine = md.s_refined();
    let before = found.len();
    found.retain(|z| commutator_residual(&s_fine, &z.to_complex()) < opts.verify_tolerance);
    let rejected = before - found.len();

    found.sort_by_key(|z| z.flat());
    found.dedup();
    let stats = EnumStats {
        free_cells: cells.len(),
        nodes: stats_nodes,
        candidates: before,
        rejected_on_reverify: rejected,
    };
    Ok((found, stats))
}

/// Cells of the T-filtered support split into DFS branching cells and cells
/// forced by the commutator equations `SZ = ZS`.
///
/// The equations are reduced once (real and imaginary parts separately) with
/// the DFS order reversed as column order, so the pivots land on the last
/// cells of the order and the branching happens on the first ones.
struct Reduced {
    /// indices into the cell list, in DFS order
    branch: Vec<usize>,
    /// `(cell, constant, coefficients over branch cells)`:
    /// `x_cell = constant - sum_f coeff_f x_f`
    forced: Vec<(usize, f64, Vec<f64>)>,
}

const PIVOT_EPS: f64 = 1e-9;

fn reduce(md: &ModularData, cells: &[(usize, usize)]) -> Option<Reduced> {
    let n = md.rank();
    let s = &md.s;
    let m = cells.len();
    // columns: cells in reverse DFS order, then the right-hand side
    let col_of = |c: usize| m - 1 - c;
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            // (SZ - ZS)_{i,j} = sum_c S_{i,c} Z_{c,j} - Z_{i,c} S_{c,j}
            let mut re = vec![0.0; m + 1];
            let mut im = vec![0.0; m + 1];
            let add = |a: usize, b: usize, coeff: Complex64, re: &mut Vec<f64>, im: &mut Vec<f64>| {
                if (a, b) == (0, 0) {
                    // Z_{0,0} = 1 moves to the right-hand side
                    re[m] -= coeff.re;
                    im[m] -= coeff.im;
                } else if let Some(c) = cells.iter().position(|&x| x == (a, b)) {
                    re[col_of(c)] += coeff.re;
                    im[col_of(c)] += coeff.im;
                }
            };
            for c in 0..n {
                add(c, j, s[(i, c)], &mut re, &mut im);
                add(i, c, -s[(c, j)], &mut re, &mut im);
            }
            rows.push(re);
            rows.push(im);
        }
    }

    // reduced row echelon form with partial pivoting
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, column)
    let mut r = 0;
    for col in 0..m {
        let Some(best) = (r..rows.len()).max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs())) else {
            break;
        };
        if rows[best][col].abs() < PIVOT_EPS {
            continue;
        }
        rows.swap(r, best);
        let p = rows[r][col];
        for x in rows[r].iter_mut() {
            *x /= p;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[col].abs() > 0.0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    // inconsistent system: a zero row with nonzero right-hand side
    if rows[r..].iter().any(|row| row[m].abs() > 1e-7) {
        return None;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut branch: Vec<usize> = (0..m).filter(|c| !pivot_cols.contains(&col_of(*c))).collect();
    branch.sort_unstable();
    let forced = pivots
        .iter()
        .map(|&(row, col)| {
            let cell = m - 1 - col;
            let coeffs = branch.iter().map(|&f| rows[row][col_of(f)]).collect();
            (cell, rows[row][m], coeffs)
        })
        .collect();
    Some(Reduced { branch, forced })
}

struct Search<'a> {
    cells: &'a [(usize, usize)],
    ub: Vec<i64>,
    reduced: Reduced,
    values: Vec<i64>,
    gannon: f64,
    tol: f64,
    budget: u64,
    nodes: u64,
    found: Vec<IMatrix>,
    n: usize,
}

const INTEGRALITY_EPS: f64 = 1e-6;

impl<'a> Search<'a> {
    fn run(&mut self) -> Result<()> {
        self.descend(0, 1)
    }

    /// Reachable interval of each forced cell with branch cells `depth..`
    /// still free; false if some forced cell cannot reach an integer in range.
    fn forced_feasible(&self, depth: usize) -> bool {
        let branch = &self.reduced.branch;
        self.reduced.forced.iter().all(|(cell, constant, coeffs)| {
            let mut lo = *constant;
            let mut hi = *constant;
            for (f, &c) in coeffs.iter().enumerate() {
                if f < depth {
                    let v = self.values[branch[f]] as f64;
                    lo -= c * v;
                    hi -= c * v;
                } else {
                    let span = c * self.ub[branch[f]] as f64;
                    if span > 0.0 {
                        lo -= span;
                    } else {
                        hi -= span;
                    }
                }
            }
            let lo = lo.max(0.0);
            let hi = hi.min(self.ub[*cell] as f64);
            (lo - INTEGRALITY_EPS).ceil() <= (hi + INTEGRALITY_EPS).floor()
        })
    }

    fn descend(&mut self, depth: usize, sum: i64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted { budget: self.budget, free_cells: self.cells.len() });
        }
        if !self.forced_feasible(depth) {
            return Ok(());
        }
        if depth == self.reduced.branch.len() {
            return self.complete(sum);
        }
        let cell = self.reduced.branch[depth];
        let cap = self.ub[cell].min((self.gannon - sum as f64 + 1e-9).floor().max(0.0) as i64);
        for v in 0..=cap {
            self.values[cell] = v;
            self.descend(depth + 1, sum + v)?;
        }
        self.values[cell] = 0;
        Ok(())
    }

    fn complete(&mut self, mut sum: i64) -> Result<()> {
        let branch = &self.reduced.branch;
        let mut values = self.values.clone();
        for (cell, constant, coeffs) in &self.reduced.forced {
            let x = constant
                - coeffs
                    .iter()
                    .zip(branch)
                    .map(|(c, &f)| c * self.values[f] as f64)
                    .sum::<f64>();
            let r = x.round();
            if (x - r).abs() > INTEGRALITY_EPS || r < 0.0 || r as i64 > self.ub[*cell] {
                return Ok(());
            }
            values[*cell] = r as i64;
            sum += r as i64;
        }
        if sum as f64 > self.gannon {
            return Ok(());
        }
        let mut z = IMatrix::zeros(self.n, self.n);
        z[(0, 0)] = 1;
        for (c, &(a, b)) in self.cells.iter().enumerate() {
            z[(a, b)] = values[c];
        }
        self.found.push(z);
        Ok(())
    }
}

/// Structural flags of a coupling matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub symmetric: bool,
    pub permutation: bool,
    pub vacuum_symmetric: bool,
    /// `Z^c = Z C`
    pub conjugate: CouplingMatrix,
    pub self_conjugate: bool,
}

pub fn classify(z: &CouplingMatrix, md: &ModularData) -> Classification {
    let m = &z.z;
    let n = z.rank();
    let symmetric = *m == m.transpose();
    let permutation = (0..n).all(|i| {
        let row_ok = m.row(i).iter().filter(|&&x| x == 1).count() == 1 && m.row(i).iter().all(|&x| x == 0 || x == 1);
        let col_ok = m.column(i).iter().filter(|&&x| x == 1).count() == 1;
        row_ok && col_ok
    });
    let vacuum_symmetric = (0..n).all(|a| m[(a, 0)] == m[(0, a)]);
    let conjugate = CouplingMatrix::new(m * md.system.fusion.conjugation_matrix());
    let self_conjugate = conjugate == *z;
    Classification { symmetric, permutation, vacuum_symmetric, conjugate, self_conjugate }
}

/// Searches a non-negative integer `b` with `Z = b^T b`. Rows of `b` are the
/// extended labels; the first row is the vacuum row `b_{tau0, 0} = 1`.
pub fn type_i_factor(z: &CouplingMatrix) -> Option<IMatrix> {
    let m = &z.z;
    let n = z.rank();
    if *m != m.transpose() || m[(0, 0)] != 1 || m.iter().any(|&x| x < 0) {
        return None;
    }
    let mut rest = m.clone();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    if gram_search(&mut rest, &mut rows, n) {
        let b = IMatrix::from_fn(rows.len(), n, |t, l| rows[t][l]);
        debug_assert_eq!(b.transpose() * &b, *m);
        Some(b)
    } else {
        None
    }
}

fn gram_search(rest: &mut IMatrix, rows: &mut Vec<Vec<i64>>, n: usize) -> bool {
    // a zero diagonal entry forces the whole row and column to vanish
    for a in 0..n {
        if rest[(a, a)] == 0 && (0..n).any(|b| rest[(a, b)] != 0) {
            return false;
        }
    }
    let Some(lead) = (0..n).find(|&a| rest[(a, a)] > 0) else {
        return true;
    };
    let mut v = vec![0i64; n];
    candidate_rows(rest, rows, &mut v, lead, lead, n)
}

/// Enumerates row vectors supported on `lead..n` with `v_lead >= 1` and
/// `v v^T <= rest`, recursing on the remainder for each.
fn candidate_rows(
    rest: &mut IMatrix,
    rows: &mut Vec<Vec<i64>>,
    v: &mut Vec<i64>,
    lead: usize,
    pos: usize,
    n: usize,
) -> bool {
    if pos == n {
        // subtract v v^T and recurse
        for a in lead..n {
            for b in lead..n {
                rest[(a, b)] -= v[a] * v[b];
            }
        }
        rows.push(v.clone());
        if gram_search(rest, rows, n) {
            return true;
        }
        rows.pop();
        for a in lead..n {
            for b in lead..n {
                rest[(a, b)] += v[a] * v[b];
            }
        }
        return false;
    }
    let diag_cap = isqrt(rest[(pos, pos)]);
    let lo = i64::from(pos == lead);
    let mut cap = diag_cap;
    for prev in lead..pos {
        if v[prev] > 0 {
            cap = cap.min(rest[(prev, pos)] / v[prev]);
        }
    }
    let mut x = cap;
    while x >= lo {
        v[pos] = x;
        if candidate_rows(rest, rows, v, lead, pos + 1, n) {
            return true;
        }
        x -= 1;
    }
    v[pos] = 0;
    false
}

fn isqrt(x: i64) -> i64 {
    if x <= 0 {
        return 0;
    }
    let mut r = (x as f64).sqrt() as i64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Searches a permutation `theta` of the rows of `b` with
/// `Z_{l,m} = sum_tau b_{tau,l} b_{theta(tau),m}`. Identity is tried first.
/// Whether `theta` respects extended fusion rules is not checked.
pub fn twist_factor(z: &CouplingMatrix, b: &IMatrix) -> Option<Vec<usize>> {
    let n = z.rank();
    if b.ncols() != n {
        return None;
    }
    let rows = b.nrows();
    let mut rest = z.z.clone();
    let mut theta = vec![usize::MAX; rows];
    let mut used = vec![false; rows];
    if twist_search(&mut rest, b, 0, &mut theta, &mut used) {
        Some(theta)
    } else {
        None
    }
}

fn twist_search(rest: &mut IMatrix, b: &IMatrix, tau: usize, theta: &mut [usize], used: &mut [bool]) -> bool {
    let rows = b.nrows();
    let n = b.ncols();
    if tau == rows {
        return rest.iter().all(|&x| x == 0);
    }
    let order = std::iter::once(tau).chain((0..rows).filter(|&s| s != tau));
    for sigma in order {
        if used[sigma] {
            continue;
        }
        let fits = (0..n).all(|l| (0..n).all(|m| b[(tau, l)] * b[(sigma, m)] <= rest[(l, m)]));
        if !fits {
            continue;
        }
        for l in 0..n {
            for m in 0..n {
                rest[(l, m)] -= b[(tau, l)] * b[(sigma, m)];
            }
        }
        used[sigma] = true;
        theta[tau] = sigma;
        if twist_search(rest, b, tau + 1, theta, used) {
            return true;
        }
        used[sigma] = false;
        theta[tau] = usize::MAX;
        for l in 0..n {
            for m in 0..n {
                rest[(l, m)] += b[(tau, l)] * b[(sigma, m)];
            }
        }
    }
    false
}

/// `sum_tau b_{tau,l} b_{theta(tau),m}`
pub fn twisted_product(b: &IMatrix, theta: &[usize]) -> IMatrix {
    let n = b.ncols();
    IMatrix::from_fn(n, n, |l, m| (0..b.nrows()).map(|t| b[(t, l)] * b[(theta[t], m)]).sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiralCounts {
    /// `tr(b^T b)`
    pub parent_trace: i64,
    /// `sum b_{tau,l}^2`
    pub algebra_dimension: i64,
}

impl ChiralCounts {
    pub fn of(b: &IMatrix) -> Self {
        let parent = b.transpose() * b;
        ChiralCounts {
            parent_trace: parent.trace(),
            algebra_dimension: b.iter().map(|x| x * x).sum(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCounts {
    /// number of M-N sectors, `tr Z`
    pub trace: i64,
    /// number of M-M sectors, `sum Z^2`
    pub sum_of_squares: i64,
    pub plus: Option<ChiralCounts>,
    pub minus: Option<ChiralCounts>,
}

pub fn trace_counts(z: &CouplingMatrix, b_plus: Option<&IMatrix>, b_minus: Option<&IMatrix>) -> TraceCounts {
    TraceCounts {
        trace: z.trace(),
        sum_of_squares: z.sum_of_squares(),
        plus: b_plus.map(ChiralCounts::of),
        minus: b_minus.map(ChiralCounts::of),
    }
}

/// Block structure found for one invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    /// `Z = b^T b`
    TypeI { b: IMatrix },
    /// a permutation of a type I parent's extended labels reproduces `Z`;
    /// the two-sided data needed to separate type II from type III is not available
    TwistedCandidate { parent: usize, b: IMatrix, theta: Vec<usize> },
    Unresolved,
}

impl Structure {
    pub fn label(&self) -> &'static str {
        match self {
            Structure::TypeI { .. } => "type I",
            Structure::TwistedCandidate { .. } => "type II or III candidate",
            Structure::Unresolved => "unresolved",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRecord {
    pub index: usize,
    pub matrix: CouplingMatrix,
    pub flags: Classification,
    pub counts: TraceCounts,
    pub structure: Structure,
}

/// Classifies every invariant of an enumeration; twisted candidates are looked
/// up among the type I invariants of the same list sharing the vacuum row.
pub fn analyze(list: &[CouplingMatrix], md: &ModularData) -> Vec<InvariantRecord> {
    let factors: Vec<Option<IMatrix>> = list.iter().map(type_i_factor).collect();
    list.iter()
        .enumerate()
        .map(|(i, z)| {
            let flags = classify(z, md);
            let structure = if let Some(b) = &factors[i] {
                Structure::TypeI { b: b.clone() }
            } else {
                let vac: Vec<i64> = z.z.row(0).iter().copied().collect();
                (0..list.len())
                    .filter(|&p| p != i)
                    .filter_map(|p| factors[p].as_ref().map(|b| (p, b)))
                    .filter(|(p, _)| list[*p].z.row(0).iter().copied().eq(vac.iter().copied()))
                    .find_map(|(p, b)| {
                        twist_factor(z, b).map(|theta| Structure::TwistedCandidate {
                            parent: p,
                            b: b.clone(),
                            theta,
                        })
                    })
                    .unwrap_or(Structure::Unresolved)
            };
            let counts = match &structure {
                Structure::TypeI { b } => trace_counts(z, Some(b), Some(b)),
                Structure::TwistedCandidate { b, .. } => trace_counts(z, Some(b), Some(b)),
                Structure::Unresolved => trace_counts(z, None, None),
            };
            InvariantRecord { index: i, matrix: z.clone(), flags, counts, structure }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gen_cyclic, gen_su2};
    use crate::twist::Twist;

    fn block_matrix(n: usize, blocks: &[(&[usize], i64)]) -> CouplingMatrix {
        let mut z = IMatrix::zeros(n, n);
        for (labels, mult) in blocks {
            for &a in labels.iter() {
                for &b in labels.iter() {
                    z[(a, b)] += mult;
                }
            }
        }
        CouplingMatrix::new(z)
    }

    fn d10() -> CouplingMatrix {
        block_matrix(17, &[(&[0, 16], 1), (&[2, 14], 1), (&[4, 12], 1), (&[6, 10], 1), (&[8], 2)])
    }

    fn e7() -> CouplingMatrix {
        let mut z = block_matrix(17, &[(&[0, 16], 1), (&[4, 12], 1), (&[6, 10], 1), (&[8], 1)]).z;
        for a in [2, 14] {
            z[(a, 8)] += 1;
            z[(8, a)] += 1;
        }
        CouplingMatrix::new(z)
    }

    #[test]
    fn trivial_system() {
        let md = ModularData::build(&gen_cyclic(1, vec![Twist::zero()]).unwrap()).unwrap();
        let list = enumerate(&md, &EnumOptions::default()).unwrap();
        assert_eq!(list, vec![CouplingMatrix::identity(1)]);
    }

    #[test]
    fn su2_2_has_only_identity() {
        let md = ModularData::build(&gen_su2(2).unwrap()).unwrap();
        let list = enumerate(&md, &EnumOptions::default()).unwrap();
        assert_eq!(list, vec![CouplingMatrix::identity(3)]);
    }

    #[test]
    fn budget_guard_aborts() {
        let md = ModularData::build(&gen_su2(16).unwrap()).unwrap();
        let opts = EnumOptions { budget: 10, ..Default::default() };
        assert!(matches!(enumerate(&md, &opts), Err(Error::BudgetExhausted { budget: 10, .. })));
    }

    #[test]
    fn d10_factorises() {
        let b = type_i_factor(&d10()).unwrap();
        assert_eq!(b.nrows(), 6);
        let supports: Vec<Vec<usize>> = (0..6)
            .map(|t| (0..17).filter(|&l| b[(t, l)] != 0).collect())
            .collect();
        assert_eq!(
            supports,
            vec![vec![0, 16], vec![2, 14], vec![4, 12], vec![6, 10], vec![8], vec![8]]
        );
        assert!(b.iter().all(|&x| x == 0 || x == 1));
        assert_eq!(b.transpose() * &b, d10().z);
    }

    #[test]
    fn e7_is_not_type_i_but_twists_d10() {
        assert!(type_i_factor(&e7()).is_none());
        let b = type_i_factor(&d10()).unwrap();
        let theta = twist_factor(&e7(), &b).unwrap();
        assert_eq!(twisted_product(&b, &theta), e7().z);
        assert_eq!(theta, vec![0, 4, 2, 3, 1, 5]);
        assert_eq!(twist_factor(&d10(), &b).unwrap(), (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn d10_is_not_a_twist_of_the_diagonal() {
        let b = IMatrix::identity(17, 17);
        assert!(twist_factor(&d10(), &b).is_none());
        assert_eq!(type_i_factor(&CouplingMatrix::identity(5)).unwrap(), IMatrix::identity(5, 5));
    }

    #[test]
    fn counts_at_level_16() {
        assert_eq!(d10().trace(), 10);
        assert_eq!(e7().trace(), 7);
        let b = type_i_factor(&d10()).unwrap();
        let c = trace_counts(&e7(), Some(&b), Some(&b));
        assert_eq!(c.plus.as_ref().unwrap().parent_trace, 10);
        assert_eq!(c.plus.unwrap().algebra_dimension, 10);
    }

    #[test]
    fn classification_flags() {
        let md = ModularData::build(&gen_su2(16).unwrap()).unwrap();
        let c = classify(&e7(), &md);
        assert!(c.symmetric && !c.permutation && c.vacuum_symmetric && c.self_conjugate);
        let id = classify(&CouplingMatrix::identity(17), &md);
        assert!(id.permutation && id.self_conjugate);
    }
}
