//! End-to-end checks of the command-line surface, driving the compiled
//! binary through temp files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn hamknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamknot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("hamknot-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn gen_then_analyze_round_trip() {
    let emb = tmp("emb.json");
    let report = tmp("report.json");
    let census = tmp("census.csv");
    let out = hamknot(&[
        "gen",
        "--n",
        "8",
        "--seed",
        "5",
        "--range",
        "10000",
        "--out",
        emb.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");

    let out = hamknot(&[
        "analyze",
        "--emb",
        emb.to_str().unwrap(),
        "--mods",
        "5",
        "--out",
        report.to_str().unwrap(),
        "--census",
        census.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("cycles: 2520"), "{stdout}");
    assert!(stdout.contains("0 (mod 3)"), "mu mod 3 must be 0: {stdout}");

    let report_json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(report_json["mu"]["3"], 0);
    assert_eq!(report_json["case"], 1);
    assert_eq!(report_json["violations"].as_array().unwrap().len(), 0);
    assert!(report_json["mu"]["5"].is_u64());
    assert_eq!(report_json["per_cycle"].as_array().unwrap().len(), 2520);

    let census_text = std::fs::read_to_string(&census).unwrap();
    assert!(census_text.starts_with("cycle,vertices,a2,arf,label"));
    assert!(census_text.lines().count() > 1, "knotted cycles exist");

    for p in [emb, report, census] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn knot_subcommand_emits_json() {
    let out = hamknot(&["knot", "--gauss", "O1+U2+O3+U1+O2+U3+"]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
    assert_eq!(v["a2"], 1);
    assert_eq!(v["arf"], 1);
    assert_eq!(v["conway"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["label"], "trefoil-like");
}

#[test]
fn knot_subcommand_rejects_bad_codes() {
    let out = hamknot(&["knot", "--gauss", "O1+U2+"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn nu_audit_exit_codes_reflect_the_verdict() {
    let csv = tmp("nu.csv");
    let out = hamknot(&[
        "nu",
        "--graph",
        "k8",
        "--n",
        "3",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "K8 hypotheses hold");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("kind,edge_a,edge_b,edge_e,edge_f,value,modulus,residue,ok"));
    // 4368 nu1 rows + 38010 nu2 rows + header.
    assert_eq!(text.lines().count(), 1 + 4368 + 38010);
    let _ = std::fs::remove_file(csv);

    let out = hamknot(&["nu", "--graph", "k4", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1), "K4 fails the nu_2 congruence");
}

#[test]
fn invariance_smoke_run() {
    let json = tmp("inv.json");
    let out = hamknot(&[
        "invariance",
        "--count",
        "2",
        "--seed",
        "3",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["violation_total"], 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    let _ = std::fs::remove_file(json);
}

#[test]
fn flipcheck_smoke_run() {
    let out = hamknot(&["flipcheck", "--count", "5", "--seed", "4"]);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("flips: 5  violations: 0"), "{stdout}");
}

#[test]
fn anneal_smoke_run() {
    let best = tmp("best.json");
    let out = hamknot(&[
        "anneal",
        "--iters",
        "3",
        "--seed",
        "2",
        "--out",
        best.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(&best).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["n"], 8);
    assert_eq!(v["coords"].as_array().unwrap().len(), 8);
    let _ = std::fs::remove_file(best);
}

#[test]
fn gen_rejects_undersized_ranges() {
    let out = hamknot(&[
        "gen",
        "--n",
        "8",
        "--seed",
        "1",
        "--range",
        "10",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("below the floor"), "{err}");
}
