//! The `verify-all` suite: one deterministic verdict per acceptance criterion.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use modkit_core::catalog::{ade_graph, affine_ade, gen_cyclic, gen_cyclic_quadratic, gen_su2, graph_meta, Dynkin};
use modkit_core::chiral::{chiral_norm_check, commutant_check, degenerate_invariant, global_indices};
use modkit_core::invariant::{
    classify, entry_bounds, enumerate, twist_factor, twisted_product, type_i_factor, CouplingMatrix, EnumOptions,
    IMatrix,
};
use modkit_core::kostant::{default_truncation, find_rs, mckay_series, nimrep_match};
use modkit_core::linalg::{commutator_residual, max_abs_diff, CMatrix};
use modkit_core::modular::{as_permutation, ModularData};
use modkit_core::nimrep::{build_nimrep_su2, spectrum_check, NimrepFailure, SPECTRUM_TOLERANCE};
use modkit_core::twist::Twist;
use serde_json::json;

use crate::ising::ising_partition;
use crate::render::pretty;

#[derive(Clone, Debug, PartialEq)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Verdict = Result<String, String>;

fn timed(id: u8, name: &'static str, limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> Criterion {
    let start = Instant::now();
    let verdict = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match verdict {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail = format!("{detail}; exceeded the {} s runtime limit", limit.as_secs());
        }
    }
    Criterion { id, name, passed, detail, elapsed }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn su2(k: usize) -> Result<ModularData, String> {
    let sys = gen_su2(k).map_err(|e| e.to_string())?;
    ModularData::build(&sys).map_err(|e| e.to_string())
}

fn blocks(n: usize, terms: &[(&[usize], &[usize], i64)]) -> CouplingMatrix {
    let mut z = IMatrix::zeros(n, n);
    for (left, right, mult) in terms {
        for &a in left.iter() {
            for &b in right.iter() {
                z[(a, b)] += mult;
            }
        }
    }
    CouplingMatrix::new(z)
}

/// The three level-16 invariants written as sums of `chi_a chi_b^*` terms.
pub fn level16_a17() -> CouplingMatrix {
    CouplingMatrix::identity(17)
}

pub fn level16_d10() -> CouplingMatrix {
    blocks(
        17,
        &[
            (&[0, 16], &[0, 16], 1),
            (&[2, 14], &[2, 14], 1),
            (&[4, 12], &[4, 12], 1),
            (&[6, 10], &[6, 10], 1),
            (&[8], &[8], 2),
        ],
    )
}

pub fn level16_e7() -> CouplingMatrix {
    blocks(
        17,
        &[
            (&[0, 16], &[0, 16], 1),
            (&[4, 12], &[4, 12], 1),
            (&[6, 10], &[6, 10], 1),
            (&[8], &[8], 1),
            (&[2, 14], &[8], 1),
            (&[8], &[2, 14], 1),
        ],
    )
}

fn criterion1() -> Verdict {
    let mut worst: f64 = 0.0;
    for k in [2, 4, 10, 16, 28] {
        let md = su2(k)?;
        let n = md.rank();
        let (s, t) = (&md.s, &md.t);
        let st = t * s * t * s * t;
        let a = max_abs_diff(&st, s);
        let b = max_abs_diff(&(s * s.adjoint()), &CMatrix::identity(n, n));
        ensure(a < 1e-9, || format!("k = {k}: |TSTST - S| = {a:.3e}"))?;
        ensure(b < 1e-9, || format!("k = {k}: |SS^+ - 1| = {b:.3e}"))?;
        ensure(as_permutation(&(s * s), 1e-9).is_some(), || format!("k = {k}: S^2 is not a permutation"))?;
        worst = worst.max(a).max(b);
    }
    Ok(format!("k in {{2,4,10,16,28}}: worst residual below 1e-9 ({})", if worst < 1e-12 { "< 1e-12" } else { "< 1e-9" }))
}

fn criterion2() -> Verdict {
    let md = su2(16)?;
    let list = enumerate(&md, &EnumOptions::default()).map_err(|e| e.to_string())?;
    for (name, z, tr) in [("A17", level16_a17(), 17), ("D10", level16_d10(), 10), ("E7", level16_e7(), 7)] {
        ensure(list.contains(&z), || format!("{name} missing from the enumeration"))?;
        ensure(z.trace() == tr, || format!("tr {name} = {} (expected {tr})", z.trace()))?;
    }
    Ok(format!("{} invariants at level 16, A17/D10/E7 present with traces 17/10/7", list.len()))
}

/// Odometer over every T-allowed matrix within the entry bounds.
pub fn brute_force_invariants(md: &ModularData) -> Vec<CouplingMatrix> {
    let n = md.rank();
    let ub = entry_bounds(md);
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0) && ub[(a, b)] > 0)
        .collect();
    let mut z = IMatrix::zeros(n, n);
    z[(0, 0)] = 1;
    let mut out = Vec::new();
    loop {
        let zc = z.map(|x| num_complex::Complex64::new(x as f64, 0.0));
        if commutator_residual(&md.s, &zc) < 1e-6 {
            out.push(CouplingMatrix::new(z.clone()));
        }
        let mut i = 0;
        loop {
            if i == cells.len() {
                out.sort_by_key(|m| m.flat());
                return out;
            }
            let c = cells[i];
            if z[c] < ub[c] {
                z[c] += 1;
                break;
            }
            z[c] = 0;
            i += 1;
        }
    }
}

fn criterion3() -> Verdict {
    let mut counts = Vec::new();
    for k in 1..=6 {
        let md = su2(k)?;
        let list = enumerate(&md, &EnumOptions::default()).map_err(|e| e.to_string())?;
        let oracle = brute_force_invariants(&md);
        ensure(list == oracle, || format!("k = {k}: enumeration {} vs brute force {}", list.len(), oracle.len()))?;
        counts.push(list.len());
    }
    Ok(format!("k = 1..6 agree with brute force, counts {counts:?}"))
}

fn criterion4() -> Verdict {
    let d10 = level16_d10();
    let e7 = level16_e7();
    let b = type_i_factor(&d10).ok_or("D10 has no type I factor")?;
    ensure(b.nrows() == 6, || format!("D10 factor has {} rows", b.nrows()))?;
    ensure(b.transpose() * &b == d10.z, || "b^T b != Z_D10".into())?;
    let mut supports: Vec<Vec<usize>> =
        (0..6).map(|t| (0..17).filter(|&l| b[(t, l)] != 0).collect()).collect();
    supports.sort();
    let expected: Vec<Vec<usize>> = vec![vec![0, 16], vec![2, 14], vec![4, 12], vec![6, 10], vec![8], vec![8]];
    ensure(supports == expected, || format!("row supports {supports:?}"))?;
    ensure(type_i_factor(&e7).is_none(), || "E7 unexpectedly type I".into())?;
    let theta = twist_factor(&e7, &b).ok_or("no twist of the D10 rows reproduces E7")?;
    ensure(twisted_product(&b, &theta) == e7.z, || "twisted product differs from Z_E7".into())?;
    Ok(format!("D10 = b^T b with 6 rows; E7 not type I; E7 = twist of D10 by {theta:?}"))
}

fn criterion5() -> Verdict {
    let mut graphs: Vec<Dynkin> = (1..=17).map(Dynkin::A).collect();
    graphs.extend((4..=10).map(Dynkin::D));
    graphs.extend([Dynkin::E6, Dynkin::E7, Dynkin::E8]);
    for &d in &graphs {
        let h = graph_meta(d).coxeter;
        for k in 1..=30 {
            let ok = build_nimrep_su2(&ade_graph(d), k).is_ok();
            ensure(ok == (k + 2 == h), || format!("{d} at level {k}: built = {ok}"))?;
        }
    }
    ensure(
        matches!(build_nimrep_su2(&ade_graph(Dynkin::E7), 10), Err(NimrepFailure::Closure { .. })),
        || "E7 at level 10 did not fail closure".into(),
    )?;

    let md16 = su2(16)?;
    let list16 = enumerate(&md16, &EnumOptions::default()).map_err(|e| e.to_string())?;
    let d10 = list16
        .iter()
        .find(|z| z.trace() == 10 && type_i_factor(z).is_some())
        .cloned()
        .ok_or("no D10-type invariant at level 16")?;
    let md10 = su2(10)?;
    let e6 = enumerate(&md10, &EnumOptions::default())
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|z| z.trace() == 6)
        .ok_or("no trace-6 invariant at level 10")?;
    let md28 = su2(28)?;
    let e8 = enumerate(&md28, &EnumOptions::default())
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|z| z.trace() == 8)
        .ok_or("no trace-8 invariant at level 28")?;
    let cases: Vec<(Dynkin, usize, CouplingMatrix, &ModularData)> = vec![
        (Dynkin::A(17), 16, level16_a17(), &md16),
        (Dynkin::D(10), 16, d10, &md16),
        (Dynkin::E7, 16, level16_e7(), &md16),
        (Dynkin::E6, 10, e6, &md10),
        (Dynkin::E8, 28, e8, &md28),
    ];
    for (d, k, z, md) in cases {
        let nim = build_nimrep_su2(&ade_graph(d), k).map_err(|e| e.to_string())?;
        let r = spectrum_check(&nim, &z, md, SPECTRUM_TOLERANCE);
        ensure(r.passed(), || format!("spectrum of {d} at level {k} fails:\n{r}"))?;
    }
    Ok("closure exactly at level h-2; spectra of A17, D10, E7, E6, E8 match".into())
}

fn criterion6() -> Verdict {
    let mut graphs: Vec<Dynkin> = (1..=8).map(Dynkin::A).collect();
    graphs.extend((4..=8).map(Dynkin::D));
    graphs.extend([Dynkin::E6, Dynkin::E7, Dynkin::E8]);
    let mut summary = Vec::new();
    for d in graphs {
        let meta = graph_meta(d);
        let h = meta.coxeter;
        let affine = affine_ade(d);
        let series = mckay_series(&affine, default_truncation(h)).map_err(|e| format!("{d}: {e}"))?;
        for (j, row) in series.coeffs.iter().enumerate() {
            ensure(row.iter().all(|&x| x >= 0 && x <= j as i64 + 1), || format!("{d}: bound fails at j = {j}"))?;
        }
        let rs = find_rs(&series, h, meta.group_order).map_err(|e| format!("{d}: {e}"))?;
        ensure(rs.r + rs.s == h + 2, || format!("{d}: r + s != h + 2"))?;
        let star = affine.extension.unwrap();
        let mut p_star = vec![0; h + 1];
        p_star[0] = 1;
        p_star[h] = 1;
        ensure(rs.polynomials[star].coeffs == p_star, || format!("{d}: p_* != 1 + q^h"))?;
        ensure(rs.polynomials.iter().all(|p| p.coeffs.iter().all(|&c| c >= 0)), || format!("{d}: negative coefficient"))?;
        if !matches!(d, Dynkin::A(_)) {
            let m = nimrep_match(&ade_graph(d), &rs.polynomials, h);
            ensure(m.passed(), || format!("{d}: nimrep match fails:\n{m}"))?;
        }
        summary.push(format!(
            "{d}:({},{}) rs={} #G={} rs=#G:{} rs=2#G:{}",
            rs.r,
            rs.s,
            rs.r * rs.s,
            meta.group_order,
            rs.rs_equals_order,
            rs.rs_equals_twice_order
        ));
    }
    Ok(summary.join("; "))
}

fn criterion7() -> Verdict {
    let md = su2(16)?;
    let list = enumerate(&md, &EnumOptions::default()).map_err(|e| e.to_string())?;
    for (i, z) in list.iter().enumerate() {
        let c = commutant_check(&md, z, 1e-8).map_err(|e| e.to_string())?;
        ensure(c.y_residual < 1e-8 && c.omega_residual < 1e-8, || format!("#{i}: commutant residuals {:.3e} {:.3e}", c.y_residual, c.omega_residual))?;
        let n = chiral_norm_check(&md, z, 1e-6).map_err(|e| format!("#{i}: {e}"))?;
        ensure(n.report.passed(), || format!("#{i}: chiral norms\n{}", n.report))?;
        let gi = global_indices(z, md.dims());
        let lhs = gi.w_zero * gi.w_alpha;
        let rhs = gi.w_plus * gi.w_minus;
        ensure((lhs - rhs).abs() <= 1e-10 * rhs, || format!("#{i}: w0 walpha = {lhs}, w+ w- = {rhs}"))?;
        if classify(z, &md).vacuum_symmetric {
            ensure(gi.w_plus == gi.w_minus, || format!("#{i}: w+ != w- for a vacuum-symmetric invariant"))?;
        }
    }
    Ok(format!("{} invariants at level 16 satisfy the index identities", list.len()))
}

fn criterion8() -> Verdict {
    // trivial theta on a modular system
    let md = su2(16)?;
    let all: Vec<usize> = (0..17).collect();
    let inv = degenerate_invariant(&md, &all, &[0], 1e-6).map_err(|e| e.to_string())?;
    ensure(inv.z == CouplingMatrix::identity(17), || "trivial theta did not give the identity".into())?;
    ensure(inv.report.passed(), || format!("trivial theta:\n{}", inv.report))?;

    // fully degenerate Z_2
    let z2 = gen_cyclic(2, vec![Twist::zero(); 2]).map_err(|e| e.to_string())?;
    let md = ModularData::build(&z2).map_err(|e| e.to_string())?;
    let inv = degenerate_invariant(&md, &[0, 1], &[0, 1], 1e-6).map_err(|e| e.to_string())?;
    ensure(inv.z.z == IMatrix::from_element(2, 2, 1), || "Z_2 did not give all-ones".into())?;
    ensure(inv.report.passed(), || format!("Z_2:\n{}", inv.report))?;

    // Z_2 x Z_3: the Z_2 factor alone is not Y-closed (Y_{(0,1),(1,0)} = 1), so
    // it is used as the degenerate part of the whole product instead.
    let z3 = gen_cyclic_quadratic(3, 1, 3).map_err(|e| e.to_string())?;
    let prod = z2.tensor(&z3).map_err(|e| e.to_string())?;
    let md = ModularData::build(&prod).map_err(|e| e.to_string())?;
    ensure(
        matches!(degenerate_invariant(&md, &[0, 3], &[0, 3], 1e-6), Err(modkit_core::Error::NotYClosed { .. })),
        || "gamma = Z_2 factor was not rejected as non-Y-closed".into(),
    )?;
    let all: Vec<usize> = (0..6).collect();
    let inv = degenerate_invariant(&md, &all, &[0, 3], 1e-6).map_err(|e| e.to_string())?;
    let expected = IMatrix::from_fn(6, 6, |a, b| i64::from(a % 3 == b % 3));
    ensure(inv.z.z == expected, || format!("Z_2 x Z_3 gave\n{}", inv.z))?;
    ensure(inv.report.passed(), || format!("Z_2 x Z_3:\n{}", inv.report))?;
    Ok("identity, all-ones and J_2 x I_3 built with Omega Z = Z Omega and YZ = ZY; gamma = Z_2 factor rejected as not Y-closed".into())
}

fn criterion9() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for m in 1..=16usize {
        for n in 1..=16 / m {
            for beta in [0.0, 0.3, 1.0] {
                let r = ising_partition(m, n, beta, 1.0).map_err(|e| e.to_string())?;
                let rel = r.relative_difference();
                ensure(rel < 1e-12, || format!("M = {m}, N = {n}, beta = {beta}: relative difference {rel:.3e}"))?;
                worst = worst.max(rel);
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases with M N <= 16 agree to relative 1e-12"))
}

/// Criteria 1 to 9.
pub fn run_checks() -> Vec<Criterion> {
    vec![
        timed(1, "modular relations", Some(Duration::from_secs(1)), criterion1),
        timed(2, "level-16 invariants", Some(Duration::from_secs(60)), criterion2),
        timed(3, "enumeration oracle", None, criterion3),
        timed(4, "type I/II structure", None, criterion4),
        timed(5, "nimrep spectra", None, criterion5),
        timed(6, "Kostant series", Some(Duration::from_secs(5)), criterion6),
        timed(7, "global index identities", None, criterion7),
        timed(8, "degenerate subsystem invariants", None, criterion8),
        timed(9, "transfer matrix", None, criterion9),
    ]
}

pub fn render_machine(results: &[Criterion]) -> String {
    let items: Vec<_> = results
        .iter()
        .map(|c| json!({"id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    pretty(&json!({
        "version": modkit_core::format::FORMAT_VERSION,
        "passed": results.iter().all(|c| c.passed),
        "criteria": items,
    }))
}

pub fn render_text(results: &[Criterion]) -> String {
    let mut out = String::new();
    for c in results {
        let _ = writeln!(
            out,
            "{} criterion {:>2} {:<32} {:>9.3} s  {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.elapsed.as_secs_f64(),
            c.detail
        );
    }
    out
}

/// Runs criteria 1 to 9 twice and appends criterion 10: both runs must render
/// to identical machine output.
pub fn run_suite() -> Vec<Criterion> {
    let first = run_checks();
    let start = Instant::now();
    let second = run_checks();
    let same = render_machine(&first) == render_machine(&second);
    let mut all = first;
    all.push(Criterion {
        id: 10,
        name: "reproducibility",
        passed: same,
        detail: if same {
            "two runs render byte-identical machine output".into()
        } else {
            "machine output differs between runs".into()
        },
        elapsed: start.elapsed(),
    });
    all
}
