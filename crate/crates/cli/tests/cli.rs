use std::process::Command;

fn kkw(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_kkw")).args(args).env_remove("WRES_ORDER").output().unwrap()
}

#[test]
fn passing_case_exits_zero() {
    let out = kkw(&["all", "--case", "flat-r4, X=rotation(1,2)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("all hard checks passed"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("interior:"));
}

#[test]
fn failed_hard_check_exits_one() {
    let out = kkw(&["boundary", "--case", "collar-flat", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["sections"][0]["name"], "boundary");
}

#[test]
fn bad_case_exits_two() {
    let out = kkw(&["geometry", "--case", "flat-r3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown registry id"));
}

#[test]
fn report_file_and_case_file() {
    let dir = tempfile::tempdir().unwrap();
    let case = dir.path().join("case.json");
    std::fs::write(&case, r#"{"chart": "sphere-s4", "killing": {"kind": "rotation", "axes": [1, 2]}}"#).unwrap();
    let report = dir.path().join("report.json");
    let out = kkw(&["interior", "--case", case.to_str().unwrap(), "--order", "3", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["order"], 3);
    assert_eq!(v["chart"], "sphere-s4");
}

#[test]
fn order_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kkw"))
        .args(["geometry", "--case", "flat-r2", "--format", "json"])
        .env("WRES_ORDER", "5")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 5);
}

#[test]
fn case_order_beats_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kkw"))
        .args(["geometry", "--case", "flat-r2, order=3", "--format", "json"])
        .env("WRES_ORDER", "5")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 3);
}

#[test]
fn float_tier_override() {
    let out = kkw(&["interior", "--case", "sphere-s4", "--tier", "float", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tier"], "float");
}
