use std::process::Command;

use serde_json::Value;

fn verify(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, out) = verify(args);
    (code, serde_json::from_str(&out).expect("json report"))
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(verify(&["no-such-task"]).0, 2);
    assert_eq!(verify(&[]).0, 2);
    assert_eq!(verify(&["toric-strata", "--prime", "32004"]).0, 2);
    assert_eq!(verify(&["toric-strata", "--order", "weird"]).0, 2);
    assert_eq!(verify(&["toric-strata", "--config", "/nonexistent/cfg.toml"]).0, 2);
}

#[test]
fn toric_strata_counts() {
    let (code, r) = report(&["toric-strata"]);
    assert_eq!(code, 0);
    let t = &r["tasks"][0];
    assert_eq!(t["status"], "pass");
    assert_eq!(t["evidence"]["T1"]["unit_parallelograms"], 3);
    assert_eq!(t["evidence"]["T2"]["unit_parallelograms"], 4);
    assert!(t["paper_ref"].as_str().is_some_and(|s| !s.is_empty()));
}

#[test]
fn map_inverse_passes() {
    let (code, r) = report(&["map-inverse"]);
    assert_eq!(code, 0);
    assert_eq!(r["tasks"][0]["evidence"]["pfaffians_checked"], 35);
}

#[test]
fn two_nodes_for_different_seeds() {
    for seed in ["1", "2"] {
        let (code, r) = report(&["nodes-ghat", "--seed", seed]);
        assert_eq!(code, 0);
        let runs = r["tasks"][0]["evidence"]["runs"].as_array().unwrap();
        assert!(runs.iter().all(|n| n["count"] == 2));
    }
}

#[test]
fn reports_are_reproducible() {
    let args = ["toric-strata", "singular-plane", "bivector-lemma", "--seed", "7", "--omit-timings", "--jobs", "2"];
    let (a, b) = (verify(&args), verify(&args));
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let r: Value = serde_json::from_str(&a.1).unwrap();
    let names: Vec<&str> = r["tasks"].as_array().unwrap().iter().map(|t| t["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["toric-strata", "singular-plane", "bivector-lemma"]);
    assert!(r["tasks"][0]["wall_time"].is_null());
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.toml");
    std::fs::write(&path, "seed = 5\nprime = 101\n").unwrap();
    let p = path.to_str().unwrap();
    let (_, r) = report(&["bivector-lemma", "--config", p, "--seed", "9"]);
    assert_eq!(r["config"]["seed"], 9);
    assert_eq!(r["config"]["prime"], 101);
    std::fs::write(&path, "sede = 5\n").unwrap();
    assert_eq!(verify(&["bivector-lemma", "--config", p]).0, 2);
}

#[test]
fn report_file_and_timeout_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, _) = verify(&["nodes-ghat", "nodes-toric", "--global-timeout", "1", "--report", path.to_str().unwrap()]);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(code, 3);
    assert_eq!(r["summary"]["exit_code"], 3);
    assert!(r["tasks"].as_array().unwrap().iter().any(|t| t["status"] == "timeout"));
}
