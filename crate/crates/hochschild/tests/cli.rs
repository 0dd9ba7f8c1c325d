//! Command-line contract: exit codes, error reporting, and output structure.
//!
//! Exit code 0 covers every mathematically negative-but-well-posed outcome
//! (obstructed continuations, certified no-equivalence); 1 is reserved for
//! unreadable or ill-formed input; 2 for engine-side resource failures.

use std::path::{Path, PathBuf};
use std::process::Output;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_hochschild")
}

fn problems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../problems")
        .canonicalize()
        .unwrap()
}

fn run(args: &[&str]) -> Output {
    std::process::Command::new(bin())
        .args(args)
        .output()
        .expect("binary must run")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["compute", "--help"]).status.code(), Some(0));
}

#[test]
fn missing_subcommand_and_unknown_flag_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["--frobnicate"]).status.code(), Some(1));
}

#[test]
fn unreadable_file_exits_one() {
    let out = run(&["compute", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("cannot read"));
}

#[test]
fn malformed_json_reports_position() {
    let path = write_temp("malformed.json", "{\n  \"kind\": \"algebra\",\n");
    let out = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(
        err.contains("line") && err.contains("column"),
        "parse error must carry a position: {err}"
    );
}

#[test]
fn zero_denominator_exits_one_with_position() {
    let path = write_temp(
        "zero_denominator.json",
        r#"{"kind": "algebra", "payload": {"dim": 1, "structure": [[["1/0"]]], "unit": ["1"]}}"#,
    );
    let out = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("denominator"), "must explain the bad rational: {err}");
    assert!(err.contains("line 1"), "must report the position: {err}");
}

#[test]
fn floating_point_literals_are_rejected() {
    let path = write_temp(
        "float.json",
        r#"{"kind": "algebra", "payload": {"dim": 1, "structure": [[[0.5]]], "unit": [1]}}"#,
    );
    let out = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("floating-point"));
}

#[test]
fn schema_error_names_the_field() {
    let path = write_temp(
        "bad_unit.json",
        r#"{"kind": "algebra", "payload": {"dim": 2, "structure": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], "unit": [1]}}"#,
    );
    let out = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("unit"), "must name the offending field");
}

#[test]
fn unknown_payload_field_exits_one() {
    let path = write_temp(
        "extra_field.json",
        r#"{"kind": "algebra", "payload": {"dim": 1, "structure": [[[1]]], "unit": [1], "extra": 3}}"#,
    );
    let out = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("extra"));
}

#[test]
fn non_associative_structure_is_an_input_error() {
    let path = write_temp(
        "non_associative.json",
        r#"{"kind": "algebra", "payload": {"dim": 2, "structure": [[[0, 1], [1, 0]], [[1, 0], [0, 0]]], "unit": [1, 0]}}"#,
    );
    let out = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("structure"));
}

#[test]
fn kind_mismatch_exits_one() {
    let path = problems().join("dual_z2.json");
    let out = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("invariant") && err.contains("algebra"));
}

#[test]
fn degree_cap_is_an_engine_failure() {
    let path = problems().join("dual_numbers.json");
    let out = run(&["compute", path.to_str().unwrap(), "--max-degree", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn obstructed_continuation_is_in_band() {
    let path = problems().join("moyal_obstructed.json");
    let out = run(&["deform", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("obstructed"));

    let out = run(&["deform", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "obstructed");
    assert_eq!(v["obstruction"]["unconstrained_solvable"], false);
}

#[test]
fn iota_json_has_injective_and_surjective_flags() {
    let path = problems().join("dual_z2.json");
    let out = run(&["invariant", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let degrees = v["degrees"].as_array().unwrap();
    assert!(!degrees.is_empty());
    for entry in degrees {
        assert_eq!(
            entry["iota"],
            serde_json::json!({"injective": true, "surjective": true})
        );
    }
}

#[test]
fn compute_reports_expected_dimensions() {
    let path = problems().join("dual_numbers.json");
    let out = run(&["compute", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let dims: Vec<u64> = v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["dimension"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![2, 1, 1]);
}

#[test]
fn hkr_decomposition_reports_the_bivector() {
    let path = problems().join("hkr_example.json");
    let out = run(&["hkr", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "decomposed");
    let components = v["polyvector"]["components"].as_array().unwrap();
    assert_eq!(components.len(), 1);
    assert_eq!(components[0]["indices"], serde_json::json!([0, 1]));
}

#[test]
fn homogeneous_reports_sphere_dimensions() {
    let path = problems().join("so3_so2.json");
    let out = run(&["homogeneous", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let dims: Vec<u64> = v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["dimension"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 0, 1]);
}

#[test]
fn text_and_json_modes_agree_on_status() {
    let path = problems().join("moyal.json");
    let text = run(&["deform", path.to_str().unwrap()]);
    let json = run(&["deform", path.to_str().unwrap(), "--json"]);
    assert_eq!(text.status.code(), Some(0));
    assert_eq!(json.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["status"], "completed");
    let text_out = String::from_utf8(text.stdout).unwrap();
    assert!(text_out.contains("order 3"));
}
