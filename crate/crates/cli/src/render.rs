//! Text and JSON rendering helpers.

use modkit_core::invariant::IMatrix;
use modkit_core::linalg::CMatrix;
use modkit_core::modular::{Check, Report};
use serde_json::{json, Value};

pub fn int_matrix(m: &IMatrix) -> String {
    let width = m.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{x:>width$}")).collect();
        out.push_str("  ");
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn complex_matrix(m: &CMatrix, precision: usize) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|z| {
                let (re, im) = (clean(z.re, precision), clean(z.im, precision));
                format!("{re:>w$.p$}{im:+.p$}i", w = precision + 3, p = precision)
            })
            .collect();
        out.push_str("  ");
        out.push_str(&row.join("  "));
        out.push('\n');
    }
    out
}

/// Rounds values that print as zero to `+0` so output never shows `-0.000`.
fn clean(x: f64, precision: usize) -> f64 {
    if x.abs() < 0.5 * 10f64.powi(-(precision as i32)) {
        0.0
    } else {
        x
    }
}

pub fn check_json(c: &Check) -> Value {
    json!({
        "name": c.name,
        "passed": c.passed,
        "residual": c.residual,
        "detail": c.detail,
    })
}

pub fn report_json(r: &Report) -> Value {
    Value::Array(r.checks.iter().map(check_json).collect())
}

pub fn int_rows(m: &IMatrix) -> Vec<Vec<i64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}
