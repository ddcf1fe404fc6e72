use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn csgk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csgk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn corpus() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/vectors/reference_vectors.jsonl").display().to_string()
}

fn scratch(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("csgk-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn multiplies() {
    let o = csgk(&["mul", "--x", "1,2,3", "--y", "2,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o), "1,2,2");
    let o = csgk(&["mul", "--system", "bicyclic", "--x", "1,2", "--y", "3,4", "--format", "text"]);
    assert_eq!(stdout(&o).trim(), "2,4");
}

#[test]
fn solves_over_the_given_region() {
    let o = csgk(&["solve", "--shape", "axb", "--rhs", "0,2,0", "--region", "4,4,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["solutions"], serde_json::json!(["1,0,1"]));
}

#[test]
fn small_verbs() {
    assert_eq!(json(&csgk(&["reduce", "aabb"]))["normal"], "0,1,0");
    assert_eq!(json(&csgk(&["reduce", "baababaaaa", "--system", "bicyclic"]))["normal"], "1,5");
    assert_eq!(json(&csgk(&["star", "--x", "B:0,2", "--y", "C:3,1,1"])), "C:1,1,1");
    assert_eq!(json(&csgk(&["star", "--zero", "--x", "0", "--y", "C:1,1,1"])), "0");
    assert_eq!(json(&csgk(&["hom", "--x", "2,3,1"])), "2,1");
    assert_eq!(json(&csgk(&["metric", "--x", "0,3,0", "--y", "0,7,0", "--p", "2"]))["distance"], "2^-2");
    let g = json(&csgk(&["green", "--relation", "r", "--x", "0,0,1", "--y", "0,0,2", "--maxlen", "2"]));
    assert_eq!(g["witness"]["u"], "a");
    let n = csgk(&["nbhd", "--topology", "tau-p", "--x", "1,2,3", "--p", "2", "--alpha", "1", "--lambda-max", "3"]);
    assert_eq!(json(&n), serde_json::json!(["1,2,3", "1,4,3", "1,6,3", "1,8,3"]));
}

#[test]
fn suite_check_passes_and_reports_parameters() {
    let o = csgk(&["check", "tau-p", "--p", "2", "--alpha", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["suite"], "tau-p");
    assert_eq!(v["passed"], true);
    assert!(v["paper_discrepancies"].as_array().unwrap().is_empty());
    assert!(!v["convention_notes"].as_array().unwrap().is_empty());
}

#[test]
fn solve_claims_surface_discrepancies() {
    let v = json(&csgk(&["check", "solve-claims"]));
    let ids: Vec<&str> = v["paper_discrepancies"].as_array().unwrap().iter().map(|d| d["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["two-sided-division-conjugate-index", "one-sided-division-index-shift"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn reports_are_deterministic() {
    let a = csgk(&["check", "assoc-star", "--workers", "1"]);
    let b = csgk(&["check", "assoc-star", "--workers", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn replay_exit_codes() {
    assert_eq!(csgk(&["replay", &corpus()]).status.code(), Some(0));
    let flipped = scratch("flipped.jsonl", "{\"op\":\"mul_c\",\"args\":{\"x\":\"1,2,3\",\"y\":\"2,1,1\"},\"expect\":\"1,2,3\"}\n");
    let o = csgk(&["replay", &flipped, "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
    let bad = scratch("bad.jsonl", "{\"op\":\"nope\",\"expect\":1}\n");
    assert_eq!(csgk(&["replay", &bad]).status.code(), Some(2));
    assert_eq!(csgk(&["replay", "/nonexistent/vectors.jsonl"]).status.code(), Some(2));
    let empty = scratch("empty.jsonl", "");
    let v = json(&csgk(&["replay", &empty]));
    assert_eq!(v["vacuous"], true);
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(csgk(&["check", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(csgk(&["mul", "--x", "0,0,0", "--y", "1,0,0"]).status.code(), Some(2));
    assert_eq!(csgk(&["check", "tau-p", "--p", "4"]).status.code(), Some(2));
    assert_eq!(csgk(&["bogus-verb"]).status.code(), Some(2));
    let cfg = scratch("bad-config.json", "{\"primes\": [9]}");
    assert_eq!(csgk(&["check", "telescope", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let cfg = scratch("cfg.json", "{\"region\": \"1,1,1\", \"format\": \"text\"}");
    let o = csgk(&["check", "eq21-oracle", "--config", &cfg]);
    assert!(stdout(&o).contains("items=49"), "{}", stdout(&o));
    let o = csgk(&["check", "eq21-oracle", "--config", &cfg, "--region", "2,2,2", "--format", "json"]);
    assert_eq!(json(&o)["items_tested"], 26 * 26);
}

#[test]
fn text_mode_prints_one_line_per_suite() {
    let o = csgk(&["check", "all", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().filter(|l| !l.trim_start().starts_with("DISCREPANCY")).map(String::from).collect();
    assert_eq!(lines.len(), 18);
    assert!(lines.iter().all(|l| l.contains("PASS")));
}
