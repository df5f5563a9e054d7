use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_with(args, None)
}

fn run_with(args: &[&str], catalog: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_m3decomp"));
    cmd.args(args).env_remove("M3DECOMP_CATALOG");
    if let Some(path) = catalog {
        cmd.env("M3DECOMP_CATALOG", path);
    }
    cmd.output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn verify_all_passes_with_versioned_envelope() {
    let out = run(&["verify", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "verify");
    assert_eq!(r["passed"], true);
    assert_eq!(r["results"].as_array().unwrap().len(), 71);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--entry", "Q42"][..],
        &["verify", "--all", "--mode", "specialized"],
        &["search", "--pattern", "7-2", "--prime", "7"],
        &["search", "--pattern", "9-0", "--prime", "2"],
        &["derive-system", "--pattern", "thm3", "--compare-prime", "3"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn specialized_runs_are_byte_identical() {
    let args = [
        "verify",
        "--all",
        "--mode",
        "specialized",
        "--n",
        "5",
        "--seed",
        "11",
    ];
    let a = run(&args);
    let b = run(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "verify",
        "--all",
        "--mode",
        "specialized",
        "--n",
        "5",
        "--seed",
        "12",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn search_reports_are_deterministic() {
    let a = run(&["search", "--pattern", "7-2", "--prime", "2", "--soundness"]);
    let b = run(&[
        "search",
        "--pattern",
        "7-2",
        "--prime",
        "2",
        "--soundness",
        "--jobs",
        "1",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r["passed"], true);
}

#[test]
fn remark_check_reports_the_t4_t6_mapping() {
    let out = run(&["invariants", "--remarks"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let failures: Vec<&str> = r["failures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_str().unwrap())
        .collect();
    assert_eq!(failures.len(), 1);
    assert!(failures[0].contains("T4 vs T6"));
}

#[test]
fn rb_and_derive_system_pass() {
    assert_eq!(
        run(&["rb", "--entry", "R8", "--entry", "Y9"]).status.code(),
        Some(0)
    );
    let out = run(&["derive-system", "--pattern", "thm1", "--compare-prime", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn table_format_ends_with_verdict() {
    let out = run(&["verify", "--entry", "R1", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("entry"));
    assert!(text.ends_with("PASS\n"));
}

#[test]
fn exported_catalog_round_trips_through_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    let out = run(&["export", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let builtin = run(&["verify", "--all"]);
    let overridden = run_with(&["verify", "--all"], Some(&path));
    assert_eq!(overridden.status.code(), Some(0));
    assert_eq!(report(&builtin)["results"], report(&overridden)["results"]);
    assert_ne!(report(&builtin)["config"], report(&overridden)["config"]);
}

#[test]
fn edited_catalog_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    run(&["export", "--output", path.to_str().unwrap()]);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();

    // Keep R1 only and break its first generator.
    let entries = doc["entries"].as_array_mut().unwrap();
    entries.retain(|e| e["id"] == "R1");
    entries[0]["s_generators"][0][0][2] = Value::from("1");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();

    let out = run_with(&["verify", "--all"], Some(&path));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["results"].as_array().unwrap().len(), 1);
    assert_eq!(
        run_with(&["verify", "--entry", "R2"], Some(&path))
            .status
            .code(),
        Some(2)
    );

    std::fs::write(&path, "{\"schema_version\": 2, \"entries\": []}").unwrap();
    assert_eq!(
        run_with(&["verify", "--all"], Some(&path)).status.code(),
        Some(2)
    );
}
