use std::process::{Command, Output};

use serde_json::Value;

fn qlens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlens"))
        .args(args)
        .env_remove("QLENS_SEED")
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = qlens(&all);
    let v = serde_json::from_slice(&out.stdout).expect("valid JSON");
    (out.status.code().unwrap(), v)
}

fn statuses(v: &Value) -> Vec<String> {
    v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["status"].as_str().unwrap().to_string())
        .collect()
}

fn strip_times(mut v: Value) -> Value {
    for r in v["records"].as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("wall_time_ms");
    }
    v
}

#[test]
fn lens_check_passes() {
    let (code, v) = json_report(&["check", "lens", "--beta", "1", "--degree", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    let ids: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"lens/relations/beta=1"));
    assert!(statuses(&v).iter().all(|s| s == "pass"));
}

#[test]
fn trivial_and_empty_campaigns() {
    let (code, v) = json_report(&["check", "identities", "--n-max", "0"]);
    assert_eq!(code, 0);
    assert!(statuses(&v).iter().all(|s| s == "pass"));
    let (code, v) = json_report(&["check", "cover", "--trials", "0"]);
    assert_eq!(code, 0);
    assert_eq!(statuses(&v), vec!["skipped"]);
}

#[test]
fn reruns_are_identical() {
    let args = ["check", "cover", "--trials", "20", "--seed", "7"];
    let (_, a) = json_report(&args);
    let (_, b) = json_report(&args);
    assert_eq!(a["seed"], 7);
    assert_eq!(strip_times(a), strip_times(b));
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qlens"))
        .args(["--format", "json", "check", "galois", "--beta", "0", "--degree", "2", "--n-max", "1"])
        .env("QLENS_SEED", "1234")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 1234);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn failure_carries_witness() {
    let (code, v) = json_report(&["check", "reps", "--dim", "16", "--beta", "1", "--tol", "0"]);
    assert_eq!(code, 1);
    let failed: Vec<&Value> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail")
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|r| r["witness"].as_str().is_some_and(|w| w.contains("residual"))));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qlens(&["check", "lens", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(qlens(&["check", "reps", "--theta", "pi"]).status.code(), Some(2));
    assert_eq!(qlens(&["check", "reps", "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(qlens(&["check", "lens", "--beta", "-1"]).status.code(), Some(2));
}

#[test]
fn writes_report_file_and_text() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = qlens(&["check", "identities", "--n-max", "2", "-o", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["tool_version"], env!("CARGO_PKG_VERSION"));
    let text = String::from_utf8(qlens(&["check", "cover", "--trials", "0"]).stdout).unwrap();
    assert!(text.contains("skipped"));
    assert!(text.contains("0 passed, 0 failed, 1 skipped"));
}

#[test]
fn theta_accepts_decimal() {
    let (code, v) = json_report(&["check", "reps", "--dim", "24", "--beta", "0", "--theta", "0.7"]);
    assert_eq!(code, 0);
    assert_eq!(v["records"][0]["params"]["theta"], 0.7);
}
