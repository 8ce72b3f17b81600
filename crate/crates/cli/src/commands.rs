//! One function per subcommand.

use std::fmt::Write as _;

use modkit_core::catalog::{
    ade_graph, affine_ade, catalog_listing, gen_su2, graph_meta, Dynkin,
};
use modkit_core::chiral::{
    chiral_norm_check, commutant_check, degenerate_invariant, global_indices, lr_counting,
};
use modkit_core::format::{
    parse_catalog, to_json, CatalogFile, CatalogHeader, GraphFile, SystemFile,
};
use modkit_core::fusion::BraidedSystem;
use modkit_core::invariant::{analyze, enumerate_with_stats, CouplingMatrix, EnumOptions};
use modkit_core::kostant::{default_truncation, find_rs, format_poly, mckay_series, nimrep_match};
use modkit_core::modular::{
    degenerate_sectors, degenerate_within, verify_modular, verlinde_check, ModularData, Report,
    Tolerances, VerlindeOutcome,
};
use modkit_core::nimrep::{build_nimrep_su2, simple_current_check, spectrum_check, verify_nimrep, SPECTRUM_TOLERANCE};
use serde_json::{json, Value};

use crate::ising::ising_partition;
use crate::render::{complex_matrix, int_matrix, int_rows, pretty, report_json};
use crate::system::parse_labels;
use crate::{CliError, Outcome, OutputFormat, TOOL_VERSION};

fn parse_graph(name: &str) -> Result<Dynkin, CliError> {
    name.parse::<Dynkin>().map_err(|e| CliError::Usage(e.to_string()))
}

fn json_out(v: &Value, passed: bool) -> Outcome {
    Outcome { output: pretty(v), passed }
}

pub fn catalog(
    system: Option<&BraidedSystem>,
    graph: Option<&str>,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    if let Some(sys) = system {
        return Ok(Outcome { output: to_json(&SystemFile::from_system(sys))?, passed: true });
    }
    if let Some(name) = graph {
        let d = parse_graph(name)?;
        let files = [GraphFile::from_graph(&ade_graph(d)), GraphFile::from_graph(&affine_ade(d))];
        let v = serde_json::to_value(files).map_err(|e| CliError::Failure(e.to_string()))?;
        return Ok(json_out(&v, true));
    }
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for line in catalog_listing() {
                let _ = writeln!(out, "{line}");
            }
            Ok(Outcome { output: out, passed: true })
        }
        OutputFormat::Machine => {
            let graphs: Vec<Value> = Dynkin::all_up_to(8)
                .into_iter()
                .map(|d| {
                    let m = graph_meta(d);
                    json!({
                        "name": d.to_string(),
                        "coxeter": m.coxeter,
                        "exponents": m.exponents,
                        "group_order": m.group_order,
                        "level": m.level,
                    })
                })
                .collect();
            let v = json!({
                "version": modkit_core::format::FORMAT_VERSION,
                "systems": ["su2", "cyclic:N:P/Q"],
                "graphs": graphs,
            });
            Ok(json_out(&v, true))
        }
    }
}

pub fn modular(
    sys: &BraidedSystem,
    tol: Tolerances,
    precision: usize,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let md = ModularData::build(sys)?;
    let report = verify_modular(&md, tol.matrix);
    let verlinde = verlinde_check(&md, tol.verlinde);
    let deg = degenerate_sectors(&md.y, md.dims(), md.global_index(), tol.degeneracy)?;
    let verlinde_ok = match &verlinde {
        VerlindeOutcome::Checked(c) => c.passed,
        VerlindeOutcome::Skipped(_) => true,
    };
    let passed = report.passed() && verlinde_ok;
    if format == OutputFormat::Machine {
        let file = SystemFile::from_modular(&md);
        let mut v = serde_json::to_value(&file).map_err(|e| CliError::Failure(e.to_string()))?;
        v["central_charge"] = json!(md.central_charge.to_string());
        v["checks"] = report_json(&report);
        v["degenerate"] = json!(deg);
        return Ok(json_out(&v, passed));
    }
    let mut out = String::new();
    let _ = writeln!(out, "system {} ({} labels)", sys.name, md.rank());
    let _ = writeln!(out, "d = {:?}", md.dims());
    let _ = writeln!(out, "w = {:.12}", md.global_index());
    let _ = writeln!(out, "z = {:.12}{:+.12}i", md.z.re, md.z.im);
    let _ = writeln!(out, "c = {} (mod 8)", md.central_charge);
    let _ = writeln!(out, "S =\n{}", complex_matrix(&md.s, precision));
    let t_diag: Vec<String> = (0..md.rank())
        .map(|i| format!("{:.p$}{:+.p$}i", md.t[(i, i)].re, md.t[(i, i)].im, p = precision))
        .collect();
    let _ = writeln!(out, "T = diag({})", t_diag.join(", "));
    let _ = write!(out, "{report}");
    match verlinde {
        VerlindeOutcome::Checked(c) => {
            let _ = writeln!(out, "{c}");
        }
        VerlindeOutcome::Skipped(why) => {
            let _ = writeln!(out, "[SKIP] Verlinde formula ({why})");
        }
    }
    let _ = writeln!(out, "degenerate sectors: {deg:?}");
    Ok(Outcome { output: out, passed })
}

pub fn enumerate_catalog(
    sys: &BraidedSystem,
    level: Option<usize>,
    opts: &EnumOptions,
) -> Result<CatalogFile, CliError> {
    let md = ModularData::build(sys)?;
    let (list, _) = enumerate_with_stats(&md, opts)?;
    let records = analyze(&list, &md);
    let header = CatalogHeader {
        system: sys.name.clone(),
        level,
        tolerance: opts.tolerance,
        tool_version: TOOL_VERSION.into(),
    };
    Ok(CatalogFile::new(header, &records))
}

pub fn enumerate_cmd(
    sys: &BraidedSystem,
    level: Option<usize>,
    opts: &EnumOptions,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let md = ModularData::build(sys)?;
    let (list, stats) = enumerate_with_stats(&md, opts)?;
    let records = analyze(&list, &md);
    let header = CatalogHeader {
        system: sys.name.clone(),
        level,
        tolerance: opts.tolerance,
        tool_version: TOOL_VERSION.into(),
    };
    let file = CatalogFile::new(header, &records);
    if format == OutputFormat::Machine {
        return Ok(Outcome { output: to_json(&file)?, passed: true });
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: {} invariants ({} free cells, {} search nodes)",
        sys.name,
        list.len(),
        stats.free_cells,
        stats.nodes
    );
    for r in &records {
        let f = &r.flags;
        let _ = writeln!(
            out,
            "\n#{}  tr = {}  sum Z^2 = {}  {}  symmetric={} permutation={} vacuum-symmetric={} self-conjugate={}",
            r.index,
            r.counts.trace,
            r.counts.sum_of_squares,
            r.structure.label(),
            f.symmetric,
            f.permutation,
            f.vacuum_symmetric,
            f.self_conjugate
        );
        out.push_str(&int_matrix(&r.matrix.z));
        match &r.structure {
            modkit_core::invariant::Structure::TypeI { b } => {
                let _ = writeln!(out, "  b =\n{}", int_matrix(b));
            }
            modkit_core::invariant::Structure::TwistedCandidate { parent, theta, .. } => {
                let _ = writeln!(out, "  twist of #{parent} by theta = {theta:?}");
            }
            modkit_core::invariant::Structure::Unresolved => {}
        }
        if let Some(p) = &r.counts.plus {
            let _ = writeln!(out, "  chiral: tr Z+ = {}, sum b^2 = {}", p.parent_trace, p.algebra_dimension);
        }
    }
    Ok(Outcome { output: out, passed: true })
}

fn read_catalog(path: &str) -> Result<Vec<CouplingMatrix>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    Ok(parse_catalog(&text)?.matrices()?)
}

pub fn nimrep(
    graph: &str,
    level: Option<usize>,
    against: Option<&str>,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let d = parse_graph(graph)?;
    let g = ade_graph(d);
    let k = level.unwrap_or(graph_meta(d).level);
    let nim = match build_nimrep_su2(&g, k) {
        Ok(n) => n,
        Err(e) => {
            let msg = e.to_string();
            return Ok(match format {
                OutputFormat::Machine => json_out(
                    &json!({"version": modkit_core::format::FORMAT_VERSION, "graph": g.name, "level": k, "built": false, "failure": msg}),
                    false,
                ),
                OutputFormat::Text => Outcome { output: format!("{} at level {k}: {msg}\n", g.name), passed: false },
            });
        }
    };
    let sys = gen_su2(k)?;
    let axioms = verify_nimrep(&nim.matrices, &sys.fusion);
    let symmetry = simple_current_check(&nim);
    let md = ModularData::build(&sys)?;
    let candidates: Vec<CouplingMatrix> = match against {
        Some(path) => read_catalog(path)?,
        None => enumerate_with_stats(&md, &EnumOptions::default())?.0,
    };
    let v = nim.vertex_count() as i64;
    let mut spectra = Vec::new();
    for (i, z) in candidates.iter().enumerate() {
        if z.trace() == v {
            spectra.push((i, z.clone(), spectrum_check(&nim, z, &md, SPECTRUM_TOLERANCE)));
        }
    }
    let spectrum_ok = spectra.iter().any(|(_, _, r)| r.passed());
    let passed = axioms.passed() && symmetry.passed && spectrum_ok;

    if format == OutputFormat::Machine {
        let mats: Vec<Vec<Vec<i64>>> = nim.matrices.iter().map(int_rows).collect();
        let sp: Vec<Value> = spectra
            .iter()
            .map(|(i, z, r)| json!({"invariant": i, "z": int_rows(&z.z), "passed": r.passed(), "checks": report_json(r)}))
            .collect();
        let out = json!({
            "version": modkit_core::format::FORMAT_VERSION,
            "graph": g.name,
            "level": k,
            "built": true,
            "matrices": mats,
            "axioms": report_json(&axioms),
            "symmetry": crate::render::check_json(&symmetry),
            "spectra": sp,
        });
        return Ok(json_out(&out, passed));
    }
    let mut out = String::new();
    let _ = writeln!(out, "nimrep of SU(2)_{k} on {} ({} vertices)", g.name, v);
    for (j, m) in nim.matrices.iter().enumerate() {
        let _ = writeln!(out, "G_{j} =\n{}", int_matrix(m));
    }
    let _ = write!(out, "{axioms}");
    let _ = writeln!(out, "{symmetry}");
    if spectra.is_empty() {
        let _ = writeln!(out, "no invariant with trace {v} to compare spectra against");
    }
    for (i, z, r) in &spectra {
        let _ = writeln!(
            out,
            "spectrum against invariant #{i} (tr {}): {}",
            z.trace(),
            if r.passed() { "PASS" } else { "FAIL" }
        );
        if !r.passed() {
            for c in r.checks.iter().filter(|c| !c.passed) {
                let _ = writeln!(out, "  {c}");
            }
        }
    }
    Ok(Outcome { output: out, passed })
}

pub fn kostant(graph: &str, truncation: Option<usize>, format: OutputFormat) -> Result<Outcome, CliError> {
    let d = parse_graph(graph)?;
    let meta = graph_meta(d);
    let h = meta.coxeter;
    let affine = affine_ade(d);
    let big_j = truncation.unwrap_or(default_truncation(h));
    let series = mckay_series(&affine, big_j)?;
    let rs = find_rs(&series, h, meta.group_order)?;
    let matched = nimrep_match(&ade_graph(d), &rs.polynomials, h);
    // the A series has no single iota vertex; its mismatches are informational
    let a_series = matches!(d, Dynkin::A(_));
    let passed = matched.passed() || a_series;

    if format == OutputFormat::Machine {
        let polys: Vec<Value> = rs
            .polynomials
            .iter()
            .map(|p| json!({"vertex": p.vertex, "coeffs": p.coeffs}))
            .collect();
        let out = json!({
            "version": modkit_core::format::FORMAT_VERSION,
            "graph": affine.name,
            "coxeter": h,
            "truncation": big_j,
            "series": series.coeffs,
            "r": rs.r,
            "s": rs.s,
            "group_order": meta.group_order,
            "rs_equals_order": rs.rs_equals_order,
            "rs_equals_twice_order": rs.rs_equals_twice_order,
            "polynomials": polys,
            "nimrep_match": report_json(&matched),
            "nimrep_match_informational": a_series,
        });
        return Ok(json_out(&out, passed));
    }
    let mut out = String::new();
    let star = affine.extension.expect("affine");
    let _ = writeln!(out, "{} (h = {h}, #G = {}), truncation J = {big_j}", affine.name, meta.group_order);
    let _ = writeln!(out, "n_j^g (rows j, columns g; * = {star}):");
    for (j, row) in series.coeffs.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(out, "  {j:>3}: {}", cells.join(""));
    }
    let _ = write!(out, "{rs}");
    for (r, s, ok) in &rs.tried {
        let _ = writeln!(out, "  tried ({r}, {s}): {}", if *ok { "certified" } else { "rejected" });
    }
    for p in &rs.polynomials {
        let name = if p.vertex == star { "*".to_string() } else { p.vertex.to_string() };
        let _ = writeln!(out, "p_{name}(q) = {}", format_poly(&p.coeffs));
    }
    let _ = writeln!(out, "nimrep match (iota = {}):", ade_graph(d).iota);
    let _ = write!(out, "{matched}");
    if a_series && !matched.passed() {
        let _ = writeln!(out, "(A series: the extension vertex has two neighbours; mismatch reported only)");
    }
    Ok(Outcome { output: out, passed })
}

pub fn chiral(
    sys: &BraidedSystem,
    invariants: Option<&str>,
    tol: f64,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let md = ModularData::build(sys)?;
    let list = match invariants {
        Some(path) => read_catalog(path)?,
        None => enumerate_with_stats(&md, &EnumOptions::default())?.0,
    };
    let mut passed = true;
    let mut text = String::new();
    let mut records = Vec::new();
    for (i, z) in list.iter().enumerate() {
        if z.rank() != md.rank() {
            return Err(CliError::Usage(format!("invariant #{i} has rank {} for a rank {} system", z.rank(), md.rank())));
        }
        let gi = global_indices(z, md.dims());
        let comm = commutant_check(&md, z, tol)?;
        let norms = chiral_norm_check(&md, z, 1e-6);
        let lr = lr_counting(z, md.dims());
        let mut report = Report::default();
        report.checks.extend(comm.report.checks.iter().cloned());
        match &norms {
            Ok(n) => report.checks.extend(n.report.checks.iter().cloned()),
            Err(e) => report.push(modkit_core::modular::Check::flag("chiral norms", false, e.to_string())),
        }
        passed &= report.passed();
        let _ = writeln!(text, "invariant #{i} (tr {}):", z.trace());
        let _ = writeln!(text, "  {gi}");
        let _ = writeln!(text, "  w_0 w_alpha = {:.12}, w+ w- = {:.12}", gi.w_zero * gi.w_alpha, gi.w_plus * gi.w_minus);
        if let Ok(n) = &norms {
            let _ = writeln!(text, "  A = {:.12}, B = {:.12}, target = {:.12}, C = {:.12}, sum dZd = {:.12}", n.a, n.b, n.target, n.c, n.dzd);
        }
        let _ = writeln!(
            text,
            "  sum dZd = {:.12}, w_Delta = {:.12}, w^2 = {:.12}, w_Delta = w^2: {}, (sum Z^2)^2 = {}",
            lr.dzd,
            lr.w_delta,
            lr.w * lr.w,
            lr.holds,
            lr.sector_count
        );
        for c in &report.checks {
            let _ = writeln!(text, "  {c}");
        }
        records.push(json!({
            "index": i,
            "z": int_rows(&z.z),
            "w": gi.w, "w_plus": gi.w_plus, "w_minus": gi.w_minus, "w_alpha": gi.w_alpha, "w_zero": gi.w_zero,
            "sum_dzd": lr.dzd, "w_delta": lr.w_delta, "w_delta_equals_w_squared": lr.holds,
            "checks": report_json(&report),
        }));
    }
    if format == OutputFormat::Machine {
        return Ok(json_out(&json!({"version": modkit_core::format::FORMAT_VERSION, "system": sys.name, "records": records}), passed));
    }
    Ok(Outcome { output: text, passed })
}

pub fn degenerate(
    sys: &BraidedSystem,
    gamma: Option<&str>,
    theta: Option<&str>,
    tol: f64,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let md = ModularData::build(sys)?;
    let gamma = match gamma {
        Some(g) => parse_labels(g)?,
        None => (0..md.rank()).collect(),
    };
    let theta = match theta {
        Some(t) => parse_labels(t)?,
        None => degenerate_within(&md.y, md.dims(), &gamma, tol)?,
    };
    let inv = degenerate_invariant(&md, &gamma, &theta, tol)?;
    let passed = inv.report.passed();
    let records = analyze(std::slice::from_ref(&inv.z), &md);
    let header = CatalogHeader { system: sys.name.clone(), level: None, tolerance: tol, tool_version: TOOL_VERSION.into() };
    let file = CatalogFile::new(header, &records);
    if format == OutputFormat::Machine {
        return Ok(Outcome { output: to_json(&file)?, passed });
    }
    let mut out = String::new();
    let _ = writeln!(out, "gamma = {gamma:?}, theta = {theta:?}, w_gamma = {:.12}", inv.w_gamma);
    out.push_str(&int_matrix(&inv.z.z));
    let _ = write!(out, "{}", inv.report);
    Ok(Outcome { output: out, passed })
}

pub fn ising(m: usize, n: usize, beta: f64, j: f64, format: OutputFormat) -> Result<Outcome, CliError> {
    let r = ising_partition(m, n, beta, j).map_err(|e| CliError::Usage(e.to_string()))?;
    let rel = r.relative_difference();
    let passed = rel < 1e-12;
    let output = match format {
        OutputFormat::Machine => pretty(&json!({
            "version": modkit_core::format::FORMAT_VERSION,
            "m": m, "n": n, "beta": beta, "j": j,
            "brute_force": r.brute, "transfer_trace": r.trace, "relative_difference": rel,
        })),
        OutputFormat::Text => format!(
            "Ising {m} x {n} torus, beta = {beta}, J = {j}\n  brute force   Z = {:.15e}\n  trace T^N     Z = {:.15e}\n  relative difference {rel:.3e}\n",
            r.brute, r.trace
        ),
    };
    Ok(Outcome { output, passed })
}
