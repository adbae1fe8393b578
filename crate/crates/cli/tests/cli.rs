use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_superweights"));
    c.current_dir(env!("CARGO_MANIFEST_DIR"));
    c.env_remove("SUPERWEIGHTS_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> Value {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn roots_sl21_matches_golden() {
    let o = run(&["roots", "A", "1", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o), golden("roots_A_1_0.json"));
}

#[test]
fn excluded_family_is_a_domain_error() {
    let o = run(&["roots", "A", "1", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "UnsupportedFamily");
}

#[test]
fn chi_period_of_antipodal_points() {
    let o = run(&["chi-period", "--points", "1,-1", "--weights", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), r#"{"r":2}"#);
    let o = run(&["chi-period", "--points", "1,zeta3,zeta3^2", "--weights", "1,1,1", "--certificate"]);
    assert_eq!(stdout_json(&o)["r"], 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["roots", "Q", "1"]).status.code(), Some(2));
    assert_eq!(run(&["loop", "--descriptor", "missing.json", "--depth", "2"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn loop_decompose_matches_golden() {
    let o = run(&["loop-decompose", "--descriptor", "tests/fixtures/loop_two_points.json", "--depth", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v, golden("loop_decompose_two_points.json"));
    assert_eq!(v["r"], 2);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
}

#[test]
fn bounded_matches_golden() {
    let args = [
        "bounded",
        "--descriptor",
        "tests/fixtures/dense_finite.json",
        "--direction",
        "1,-1",
        "--depth",
        "10",
    ];
    let o = run(&args);
    assert_eq!(stdout_json(&o), golden("bounded_dense_finite.json"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["bounded", "--descriptor", "tests/fixtures/dense_finite.json", "--direction", "1,-1", "--depth", "6"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn manifest_is_written_to_the_output_directory() {
    let dir = std::env::temp_dir().join(format!("superweights-cli-test-{}", std::process::id()));
    let o = bin()
        .env("SUPERWEIGHTS_OUT_DIR", &dir)
        .args(["invariants", "--spec", "tests/fixtures/kac_sl21.json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["dim"], 2);
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    let result = std::fs::read_to_string(dir.join("result.json")).unwrap();
    assert_eq!(result.trim().as_bytes(), o.stdout.trim_ascii_end());
    assert_eq!(manifest["input_digests"].as_object().unwrap().len(), 1);
    assert_eq!(manifest["result_digest"].as_str().unwrap().len(), 64);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_suites_pass() {
    for suite in ["schur", "loop"] {
        let o = run(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        assert_eq!(stdout_json(&o)["passed"], true);
    }
}

#[test]
fn table_output_renders() {
    let o = run(&["endo", "--spec", r#"{"kind":"odd_rank_one","h":"1"}"#, "--format", "table"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("pattern") && text.contains("1, 1"));
}
