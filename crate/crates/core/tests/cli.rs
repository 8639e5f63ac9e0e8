use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-surface")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cubic-surface-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn malformed_json_is_a_schema_error() {
    let p = scratch("malformed.json", "{\"schema\": 1, \"points\": [");
    let o = bin(&["construct", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: InvalidInput"), "{}", stderr(&o));
}

#[test]
fn wrong_schema_version_is_rejected() {
    let p = scratch("schema2.json", r#"{"schema": 2, "field": "Q", "points": []}"#);
    let o = bin(&["construct", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_input_file_exits_2() {
    let o = bin(&["construct", "--input", "/nonexistent/points.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn collinear_points_are_a_domain_error() {
    let p = scratch(
        "collinear.json",
        r#"{"schema": 1, "field": "Q", "points": [["1","0","0"],["0","1","0"],["1","1","0"],["0","0","1"],["1","2","3"],["1","5","11"]]}"#,
    );
    let o = bin(&["construct", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: DegeneratePoints: "), "{}", stderr(&o));
}

#[test]
fn unknown_flags_and_commands_are_usage_errors() {
    assert_eq!(bin(&["group", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["nonsense"]).status.code(), Some(2));
    assert_eq!(bin(&[]).status.code(), Some(2));
}

#[test]
fn explicit_fixture_input_matches_default() {
    let p = scratch(
        "fixture.json",
        r#"{"schema": 1, "field": "Q", "points": [["1","0","0"],["0","1","0"],["0","0","1"],["1","1","1"],["1","2","3"],["1","5","11"]]}"#,
    );
    let a = bin(&["construct", "--format", "json"]);
    let b = bin(&["construct", "--format", "json", "--input", p.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_reports_are_tagged_and_deterministic() {
    let a = bin(&["configurations", "--format", "json", "--full"]);
    let b = bin(&["configurations", "--format", "json", "--full"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "configurations");
    assert_eq!(v["counts"]["double_six_families"]["triple"], 20);
    assert_eq!(v["listing"]["tritangents"].as_array().unwrap().len(), 45);
}

#[test]
fn seeded_commands_repeat_byte_for_byte() {
    for cmd in ["hexahedral", "determinantal", "cayley-salmon"] {
        let a = bin(&[cmd, "--seed", "7"]);
        let b = bin(&[cmd, "--seed", "7"]);
        assert!(a.status.success(), "{cmd}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn output_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("cubic-surface-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("group.json");
    let o = bin(&["group", "--format", "json", "--threads", "2", "--output", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["order"], 51840);
    assert_eq!(v["involutions"], 892);
}

#[test]
fn species_over_gaussian_fixtures() {
    let o = bin(&["species", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let got: Vec<u64> = v["fixtures"].as_array().unwrap().iter().map(|r| r["species"].as_u64().unwrap()).collect();
    assert_eq!(got, [1, 2, 3, 4]);
}
