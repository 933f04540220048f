use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn obtower(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obtower")).args(args).output().expect("run obtower")
}

fn problem(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name).to_str().unwrap().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("obtower-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn ls_flags_print_the_weight_table() {
    let out = obtower(&["lie", "--ls", "--mmax", "10", "--s", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["weights"], serde_json::json!({"1": 22, "4": 3, "6": 5, "8": 7, "10": 9, "12": 11}));
    assert_eq!(r["result"]["positive_weights"], true);
    assert_eq!(r["status"], "ok");
}

#[test]
fn malformed_spec_writes_nothing() {
    let spec = scratch("broken.json");
    std::fs::write(&spec, "{\"schema\": 1, \"kind\": \"tower\", \"pi\": ").unwrap();
    let out_path = scratch("broken-report.json");
    let out = obtower(&["tower", "--spec", spec.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_path.exists());
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));
}

#[test]
fn wrong_kind_and_schema_are_rejected() {
    let out = obtower(&["tower", "--spec", &problem("diagonal.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let spec = scratch("future.json");
    std::fs::write(&spec, r#"{"schema": 2, "kind": "cohomology", "group": {"catalog": "C2"}, "module": {"factors": [2]}}"#).unwrap();
    let out = obtower(&["cohomology", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validation_errors_produce_an_error_report() {
    let spec = scratch("not-normal.json");
    std::fs::write(&spec, r#"{"schema": 1, "kind": "tower", "pi": {"catalog": "S3"}, "normal": [1], "depth": 1, "psi0": "identity"}"#)
        .unwrap();
    let out = obtower(&["tower", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"]["class"], "validation");
}

#[test]
fn budget_errors_exit_with_three() {
    let out = obtower(&["cohomology", "--spec", &problem("sign_cohomology.json"), "--budget-max-degree", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let r = json(&out);
    assert_eq!(r["error"]["class"], "budget");
    assert_eq!(r["budget"]["max_degree"], 1);
}

#[test]
fn budget_profile_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_obtower"))
        .args(["lie", "--hall", "--d", "2", "--n", "4"])
        .env("OBTOWER_BUDGET_PROFILE", "small")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let small = json(&out);
    let default = json(&obtower(&["lie", "--hall", "--d", "2", "--n", "4"]));
    assert_ne!(small["budget"], default["budget"]);
    let bad = obtower(&["lie", "--hall", "--budget-profile", "huge"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_file_matches_stdout() {
    let path = scratch("cohomology.json");
    let out = obtower(&["cohomology", "--spec", &problem("sign_cohomology.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let printed = json(&obtower(&["cohomology", "--spec", &problem("sign_cohomology.json")]));
    assert_eq!(written["content_hash"], printed["content_hash"]);
}

#[test]
fn text_format_renders_tables() {
    let out = obtower(&["tower", "--spec", &problem("q8_identity.json"), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("blocked at level 2"));
    assert!(text.contains("E1 page"));
    let out = obtower(&["reciprocity", "--spec", &problem("diagonal.json"), "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("long exact sequence exact: true"));
}

#[test]
fn selftest_passes() {
    let out = obtower(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["all_pass"], true);
}

#[test]
fn simplicial_reports_do_not_depend_on_jobs() {
    let args = ["simplicial-check", "--truncation", "3", "--seed", "5", "--extensions", "8", "--abelian-inputs", "8", "--bisimplicial", "8"];
    let one = json(&obtower(&args));
    let mut more = args.to_vec();
    more.extend(["--jobs", "3"]);
    let three = json(&obtower(&more));
    assert_eq!(one["content_hash"], three["content_hash"]);
    assert_eq!(one["result"]["all_pass"], true);
}
