//! Ising model on an `M x N` torus: brute-force sum against `trace T^N`.
//!
//! Sites are `(r, c)` with `r` in `0..M` (the strip width) and `c` in `0..N`.
//! Every site bonds to `(r+1 mod M, c)` and `(r, c+1 mod N)`, so a width or
//! length of 1 gives self-bonds, and a width of 2 doubles the bond, on both
//! sides alike. The row-to-row transfer matrix splits each row's internal
//! energy evenly between the two matrices it touches:
//! `T(s, s') = exp(beta J [E(s)/2 + E(s')/2 + sum_r s_r s'_r])`.

use modkit_core::{Error, Result};
use nalgebra::DMatrix;

/// Largest `M * N` accepted by the brute-force side.
pub const BRUTE_FORCE_LIMIT: usize = 24;
/// Largest width for which `T` is built densely.
pub const DENSE_WIDTH_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsingResult {
    pub brute: f64,
    pub trace: f64,
}

impl IsingResult {
    pub fn relative_difference(&self) -> f64 {
        (self.brute - self.trace).abs() / self.brute.abs()
    }
}

fn spin(state: usize, r: usize) -> i64 {
    if state >> r & 1 == 1 {
        1
    } else {
        -1
    }
}

/// `sum_r s_r s_{r+1 mod M}` for one row.
fn row_energy(state: usize, m: usize) -> i64 {
    (0..m).map(|r| spin(state, r) * spin(state, (r + 1) % m)).sum()
}

/// Sum over all `2^{MN}` configurations, grouped by energy.
pub fn brute_force(m: usize, n: usize, beta: f64, j: f64) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("M and N must be at least 1".into()));
    }
    if m * n > BRUTE_FORCE_LIMIT {
        return Err(Error::Precondition(format!(
            "M N = {} exceeds the brute-force limit {BRUTE_FORCE_LIMIT}",
            m * n
        )));
    }
    let sites = m * n;
    let bonds = 2 * sites;
    // histogram of sum sigma sigma' over [-bonds, bonds]
    let mut hist = vec![0u64; 2 * bonds + 1];
    let idx = |r: usize, c: usize| c * m + r;
    for conf in 0..(1usize << sites) {
        let mut e = 0i64;
        for c in 0..n {
            for r in 0..m {
                let s = spin(conf, idx(r, c));
                e += s * spin(conf, idx((r + 1) % m, c));
                e += s * spin(conf, idx(r, (c + 1) % n));
            }
        }
        hist[(e + bonds as i64) as usize] += 1;
    }
    Ok(hist
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| k as f64 * (beta * j * (i as f64 - bonds as f64)).exp())
        .sum())
}

pub fn transfer_matrix(m: usize, beta: f64, j: f64) -> DMatrix<f64> {
    let dim = 1usize << m;
    let half: Vec<f64> = (0..dim).map(|s| (0.5 * beta * j * row_energy(s, m) as f64).exp()).collect();
    DMatrix::from_fn(dim, dim, |s, t| {
        let inter: i64 = (0..m).map(|r| spin(s, r) * spin(t, r)).sum();
        half[s] * half[t] * (beta * j * inter as f64).exp()
    })
}

/// `T v` without forming `T`: diagonal half-weights around a Kronecker
/// product of `2 x 2` bond matrices.
fn apply_transfer(v: &[f64], m: usize, half: &[f64], bond: [f64; 2]) -> Vec<f64> {
    let mut w: Vec<f64> = v.iter().zip(half).map(|(x, h)| x * h).collect();
    for r in 0..m {
        let bit = 1usize << r;
        for s in 0..w.len() {
            if s & bit == 0 {
                let (a, b) = (w[s], w[s | bit]);
                w[s] = bond[0] * a + bond[1] * b;
                w[s | bit] = bond[1] * a + bond[0] * b;
            }
        }
    }
    w.iter_mut().zip(half).for_each(|(x, h)| *x *= h);
    w
}

/// `trace T^N`.
pub fn transfer_trace(m: usize, n: usize, beta: f64, j: f64) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("M and N must be at least 1".into()));
    }
    let dim = 1usize << m;
    if n == 1 {
        // only the diagonal is needed; group it by energy
        let mut hist = vec![0u64; 4 * m + 1];
        for s in 0..dim {
            hist[(row_energy(s, m) + 3 * m as i64) as usize] += 1;
        }
        return Ok(hist
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(e, &k)| k as f64 * (beta * j * (e as f64 - 2.0 * m as f64)).exp())
            .sum());
    }
    if m <= DENSE_WIDTH_LIMIT {
        let t = transfer_matrix(m, beta, j);
        let mut p = t.clone();
        for _ in 1..n {
            p = &p * &t;
        }
        return Ok(p.trace());
    }
    let half: Vec<f64> = (0..dim).map(|s| (0.5 * beta * j * row_energy(s, m) as f64).exp()).collect();
    let bond = [(beta * j).exp(), (-beta * j).exp()];
    let mut total = 0.0;
    for s in 0..dim {
        let mut v = vec![0.0; dim];
        v[s] = 1.0;
        for _ in 0..n {
            v = apply_transfer(&v, m, &half, bond);
        }
        total += v[s];
    }
    Ok(total)
}

pub fn ising_partition(m: usize, n: usize, beta: f64, j: f64) -> Result<IsingResult> {
    Ok(IsingResult { brute: brute_force(m, n, beta, j)?, trace: transfer_trace(m, n, beta, j)? })
}
