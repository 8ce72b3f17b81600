use std::path::PathBuf;
use std::process::{Command, Output};

use modkit_core::format::parse_catalog;

fn modkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modkit")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("modkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exit_codes() {
    assert_eq!(modkit(&["modular", "--system", "su2", "--level", "4"]).status.code(), Some(0));
    assert_eq!(modkit(&["nimrep", "--graph", "E7", "--level", "10"]).status.code(), Some(1));
    assert_eq!(modkit(&["modular", "--system", "nonsense"]).status.code(), Some(2));
    assert_eq!(modkit(&["nimrep", "--graph", "Q3"]).status.code(), Some(2));
    assert_eq!(modkit(&["enum"]).status.code(), Some(2));
    assert_eq!(modkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn machine_output_is_reproducible() {
    for args in [
        &["enum", "--system", "su2:16", "--format", "machine"][..],
        &["modular", "--system", "su2:10", "--format", "machine"],
        &["kostant", "--graph", "E7", "--format", "machine"],
        &["degenerate", "--system", "cyclic:2*cyclic:3:1/3", "--theta", "0,3", "--format", "machine"],
    ] {
        let (a, b) = (modkit(args), modkit(args));
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn catalog_round_trip_through_files() {
    let path = scratch("su2_16.json");
    let p = path.to_str().unwrap();
    let out = modkit(&["enum", "--system", "su2:16", "--format", "machine", "--out", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let catalog = parse_catalog(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(catalog.records.len(), 3);
    assert_eq!(catalog.header.level, Some(16));

    for graph in ["A17", "D10", "E7"] {
        let r = modkit(&["nimrep", "--graph", graph, "--against", p]);
        assert_eq!(r.status.code(), Some(0), "{graph}: {}", String::from_utf8_lossy(&r.stdout));
    }
    let r = modkit(&["chiral", "--system", "su2:16", "--invariant", p]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stdout));
}

#[test]
fn system_file_round_trip() {
    let path = scratch("su2_4_system.json");
    let p = path.to_str().unwrap();
    assert!(modkit(&["catalog", "--system", "su2:4", "--out", p]).status.success());
    let a = modkit(&["modular", "--system", p, "--format", "machine"]);
    let b = modkit(&["modular", "--system", "su2:4", "--format", "machine"]);
    assert!(a.status.success());
    let strip = |o: &Output| {
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        (v["S_re"].clone(), v["central_charge"].clone(), v["checks"].clone())
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn ising_reports_agreement() {
    let out = modkit(&["ising", "--m", "4", "--n", "4", "--beta", "1.0", "--format", "machine"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["relative_difference"].as_f64().unwrap() < 1e-12);
    assert_eq!(modkit(&["ising", "--m", "5", "--n", "5", "--beta", "0.1"]).status.code(), Some(2));
}
