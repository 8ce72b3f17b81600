//! `--system` specifications.
//!
//! * `su2` (with `--level K`) or `su2:K`
//! * `cyclic:N:P/Q`: `Z_N` with twists `P a^2 / Q`
//! * `cyclic:N` with all twists zero
//! * `A*B`: tensor product of two specifications
//! * anything ending in `.json`: a system file

use std::path::Path;

use modkit_core::catalog::{gen_cyclic, gen_cyclic_quadratic, gen_su2};
use modkit_core::format::parse_system;
use modkit_core::fusion::BraidedSystem;
use modkit_core::twist::Twist;

use crate::CliError;

pub fn parse_system_spec(spec: &str, level: Option<usize>) -> Result<BraidedSystem, CliError> {
    let spec = spec.trim();
    if let Some((a, b)) = spec.split_once('*') {
        let left = parse_system_spec(a, level)?;
        let right = parse_system_spec(b, level)?;
        return left.tensor(&right).map_err(CliError::from);
    }
    if spec.ends_with(".json") {
        let text = std::fs::read_to_string(Path::new(spec))
            .map_err(|e| CliError::Usage(format!("cannot read {spec}: {e}")))?;
        return parse_system(&text)?.braided_system().map_err(CliError::from);
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let usage = || CliError::Usage(format!("unrecognised system `{spec}`"));
    match parts.as_slice() {
        ["su2"] => {
            let k = level.ok_or_else(|| CliError::Usage("`--system su2` needs `--level`".into()))?;
            Ok(gen_su2(k)?)
        }
        ["su2", k] => Ok(gen_su2(k.parse().map_err(|_| usage())?)?),
        ["cyclic", n] => {
            let n: usize = n.parse().map_err(|_| usage())?;
            Ok(gen_cyclic(n, vec![Twist::zero(); n])?)
        }
        ["cyclic", n, t] => {
            let n: usize = n.parse().map_err(|_| usage())?;
            let (p, q) = t.split_once('/').ok_or_else(usage)?;
            let p: i64 = p.parse().map_err(|_| usage())?;
            let q: i64 = q.parse().map_err(|_| usage())?;
            Ok(gen_cyclic_quadratic(n, p, q)?)
        }
        _ => Err(usage()),
    }
}

/// The SU(2) level named by a specification, if any.
pub fn spec_level(spec: &str, level: Option<usize>) -> Option<usize> {
    match spec.trim().split(':').collect::<Vec<_>>().as_slice() {
        ["su2"] => level,
        ["su2", k] => k.parse().ok(),
        _ => None,
    }
}

/// Comma-separated label list, e.g. `0,3`.
pub fn parse_labels(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad label `{t}` in `{s}`")))
        })
        .collect()
}
