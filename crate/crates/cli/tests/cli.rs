use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn positroid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_positroid")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn analyze_uniform() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "u24.json", r#"{"n":4,"bases":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#);
    let out = positroid(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["positroid"]["is_positroid"], true);
    assert_eq!(v["da_silva"]["holds"], true);
    assert_eq!(v["circular"], true);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["bases_count"], 6);
    assert_eq!(v["circuits"].as_array().unwrap().len(), 4);
    assert_eq!(v["grassmann_necklace"], serde_json::json!([[1, 2], [2, 3], [3, 4], [1, 4]]));
}

#[test]
fn analyze_crossing_sum() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "x.json", r#"{"n":4,"bases":[[1,2],[1,4],[2,3],[3,4]]}"#);
    let out = positroid(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["positroid"]["is_positroid"], false);
    assert_eq!(v["positroid"]["certificate"], serde_json::json!([1, 3]));
    assert_eq!(v["components"]["kind"], "crossing");
    assert_eq!(v["positively_orientable"]["indicator_chirotope"], false);
}

#[test]
fn analyze_chirotope_and_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let chi = write_temp(&dir, "c.json", r#"{"n":2,"d":1,"signs":{"1":1,"2":-1}}"#);
    let v = stdout_json(&positroid(&["analyze", &chi]));
    assert_eq!(v["kind"], "chirotope");
    assert_eq!(v["positively_orientable"]["holds"], true);
    assert_eq!(v["positively_orientable"]["reorientation"], serde_json::json!([2]));

    let mat = write_temp(&dir, "m.json", r#"{"d":2,"n":3,"entries":[["1","1","1"],["0","1","2"]]}"#);
    let v = stdout_json(&positroid(&["analyze", &mat]));
    assert_eq!(v["kind"], "matrix");
    assert_eq!(v["totally_nonnegative"], true);
    assert_eq!(v["positroid"]["is_positroid"], true);
}

#[test]
fn analyze_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(&dir, "bad.json", "{ not json");
    let out = positroid(&["analyze", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let unsorted = write_temp(&dir, "u.json", r#"{"n":3,"bases":[[2,1]]}"#);
    assert_eq!(positroid(&["analyze", &unsorted]).status.code(), Some(2));
    assert_eq!(positroid(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_writes_report() {
    let out = positroid(&["verify", "main-5.1", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["counterexamples"], serde_json::json!([]));
    assert_eq!(v["theorem"], "main-5.1");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = positroid(&["verify", "noncrossing-3.7", "--n", "4", "--jobs", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["instances_checked"].as_u64().unwrap() > 0);
}

#[test]
fn verify_fault_injection_fails_with_witness() {
    let out = positroid(&["verify", "main-5.1", "--n", "3", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["pass"], false);
    assert!(v["counterexamples"][0]["matroid"]["bases"].is_array());
}

#[test]
fn verify_unknown_theorem() {
    let out = positroid(&["verify", "nope", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_warns_above_soft_bound() {
    let out = Command::new(env!("CARGO_BIN_EXE_positroid"))
        .args(["verify", "connected-4.13", "--n", "3"])
        .env("POSITROID_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("soft bound"));
}

fn count(args: &[&str]) -> u64 {
    let out = positroid(args);
    assert_eq!(out.status.code(), Some(0));
    stdout_json(&out)["count"].as_u64().unwrap()
}

#[test]
fn enumerate_counts() {
    let total: u64 = (0..=3)
        .map(|k| count(&["enumerate", "positroids", "--n", "3", "--k", &k.to_string(), "--count-only"]))
        .sum();
    assert_eq!(total, 16);
    assert_eq!(count(&["enumerate", "positroids", "--n", "4", "--count-only"]), 65);
    assert_eq!(
        count(&["enumerate", "poms", "--n", "4", "--k", "2", "--count-only"]),
        count(&["enumerate", "positroids", "--n", "4", "--k", "2", "--count-only"])
    );
}

#[test]
fn enumerate_streams_json_lines() {
    let out = positroid(&["enumerate", "matroids", "--n", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|v| v["n"] == 2));
    // Deterministic across runs.
    let again = positroid(&["enumerate", "matroids", "--n", "2", "--k", "1"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}

#[test]
fn poset_checks() {
    let out = positroid(&["poset", "1", "3", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["graded"], true);
    assert_eq!(v["thin"], true);
    assert_eq!(v["eulerian"], true);

    let v = stdout_json(&positroid(&["poset", "0", "3", "--check"]));
    assert_eq!(v["elements"], 2);
    assert_eq!(v["eulerian"], true);
    assert_eq!(v["pass"], true);
}

#[test]
fn poset_exports() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("p.dot");
    let out = positroid(&["poset", "2", "4", "--export", "dot", "--out", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&dot).unwrap();
    let positroids = count(&["enumerate", "positroids", "--n", "4", "--k", "2", "--count-only"]);
    assert_eq!(text.matches("[label=").count() as u64, positroids + 1);

    let out = positroid(&["poset", "1", "3", "--export", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    assert_eq!(v["ranks"].as_array().unwrap().len(), 8);
    assert_eq!(v["covers"].as_array().unwrap().len(), 3 + 3 * 2 + 3);
}
