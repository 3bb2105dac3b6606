use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercount"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn count_prints_brute_and_formulas() {
    let out = run(&["count", "--p", "17", "--coeffs", "1,1,2,1,1,2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["brute"], 46);
    assert_eq!(v["formulas"]["mt6"]["count"], 46);
    assert_eq!(v["formulas"]["cor_1_6"], 46);
}

#[test]
fn count_accepts_extension_coordinates() {
    let out = run(&["count", "--p", "3", "--r", "2", "--coeffs", "1,1,1:1,1,1,1:1", "--g-path", "both"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("brute: 26"));
    assert!(text.contains("mt1: 26"));
}

#[test]
fn verify_writes_deterministic_json() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    for (jobs, path) in ["1", "4"].iter().zip(&paths) {
        let out = run(&[
            "verify", "--q", "5,9", "--families", "mt1,mt6,bs1,g_function", "--samples", "5", "--seed", "11",
            "--jobs", jobs, "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read_to_string(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read_to_string(&paths[1]).unwrap());
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["meta"]["seed"], 11);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["fields"][0]["p"], 5);
    assert_eq!(v["fields"][1]["r"], 2);
    assert!(v["fields"][0]["checks"][0].get("timing_ms").is_none());
}

#[test]
fn verify_reports_skipped_family() {
    let out = run(&["verify", "--q", "7", "--families", "cor_1_6", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("skipped  1"));
}

#[test]
fn verify_csv_has_header() {
    let out = run(&["verify", "--q", "5", "--families", "identities", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("p,r,family,index,status"));
}

#[test]
fn gfun_values_at_one() {
    for (q, g1) in [("7", "1"), ("5", "-1"), ("9", "1")] {
        let out = run(&["gfun", "--q", q, "--t", "1", "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["values"][0]["value"], g1, "q = {q}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--q", "6"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--p", "5", "--coeffs", "1,2,3"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--p", "5", "--coeffs", "0,1,1,1,1,1"]).status.code(), Some(2));
    assert_eq!(run(&["gfun", "--p", "5", "--precision", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--q", "5", "--families", "nope"]).status.code(), Some(2));
}
