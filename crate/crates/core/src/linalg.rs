//! Small dense helpers shared by the numeric modules.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub fn to_complex(m: &DMatrix<i64>) -> CMatrix {
    m.map(|x| Complex64::new(x as f64, 0.0))
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `max |A B - B A|`
pub fn commutator_residual(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs_diff(&(a * b), &(b * a))
}

/// Sorted eigenvalues of a real symmetric matrix.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Compensated complex sum.
pub fn kahan_sum(terms: impl IntoIterator<Item = Complex64>) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut c = Complex64::new(0.0, 0.0);
    for t in terms {
        // Neumaier variant, componentwise
        let re = two_sum(sum.re, t.re);
        let im = two_sum(sum.im, t.im);
        sum = Complex64::new(re.0, im.0);
        c += Complex64::new(re.1, im.1);
    }
    sum + c
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}
