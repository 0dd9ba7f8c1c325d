//! Exercises the C entry points exactly as a foreign caller would: through
//! raw pointers and NUL-terminated strings.

use hochschild_capi::{
    hoch_last_error, hoch_report_free, hoch_report_json, hoch_report_text, hoch_run_json,
    hoch_version, HochReport, HochStatus,
};
use std::ffi::{c_char, CStr, CString};

const DUAL_NUMBERS: &str = r#"{"kind": "algebra", "payload": {"dim": 2, "structure": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], "unit": [1, 0]}}"#;

fn run(problem: &str, max_degree: u32, to_order: u32) -> (HochStatus, *mut HochReport) {
    let input = CString::new(problem).unwrap();
    let mut handle: *mut HochReport = std::ptr::null_mut();
    let status = unsafe { hoch_run_json(input.as_ptr(), max_degree, to_order, &mut handle) };
    (status, handle)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hoch_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn version_is_a_nonempty_static_string() {
    let v = unsafe { CStr::from_ptr(hoch_version()) };
    assert!(!v.to_bytes().is_empty());
}

#[test]
fn compute_round_trip_through_the_abi() {
    let (status, handle) = run(DUAL_NUMBERS, 2, 0);
    assert_eq!(status, HochStatus::Ok);
    assert!(!handle.is_null());

    let json = unsafe { CStr::from_ptr(hoch_report_json(handle)) }
        .to_str()
        .unwrap()
        .to_owned();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let dims: Vec<u64> = v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["dimension"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![2, 1, 1]);

    let text = unsafe { CStr::from_ptr(hoch_report_text(handle)) }
        .to_str()
        .unwrap()
        .to_owned();
    assert!(!text.is_empty());

    unsafe { hoch_report_free(handle) };

    // A second run over the same input produces byte-identical output.
    let (status, handle2) = run(DUAL_NUMBERS, 2, 0);
    assert_eq!(status, HochStatus::Ok);
    let json2 = unsafe { CStr::from_ptr(hoch_report_json(handle2)) }
        .to_str()
        .unwrap()
        .to_owned();
    assert_eq!(json, json2);
    unsafe { hoch_report_free(handle2) };
}

#[test]
fn malformed_input_reports_input_error() {
    let (status, handle) = run("{\"kind\": \"algebra\"", 2, 0);
    assert_eq!(status, HochStatus::InputError);
    assert!(handle.is_null());
    let message = last_error();
    assert!(message.contains("line"), "error must carry a position: {message}");
}

#[test]
fn degree_cap_reports_engine_error() {
    let (status, handle) = run(DUAL_NUMBERS, 9, 0);
    assert_eq!(status, HochStatus::EngineError);
    assert!(handle.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn null_arguments_are_rejected() {
    let mut handle: *mut HochReport = std::ptr::null_mut();
    let status = unsafe { hoch_run_json(std::ptr::null(), 2, 0, &mut handle) };
    assert_eq!(status, HochStatus::NullArgument);

    let input = CString::new(DUAL_NUMBERS).unwrap();
    let status = unsafe { hoch_run_json(input.as_ptr(), 2, 0, std::ptr::null_mut()) };
    assert_eq!(status, HochStatus::NullArgument);

    assert!(unsafe { hoch_report_json(std::ptr::null()) }.is_null());
    assert!(unsafe { hoch_report_text(std::ptr::null()) }.is_null());
    unsafe { hoch_report_free(std::ptr::null_mut()) };
}

#[test]
fn invalid_utf8_is_rejected() {
    let bytes: [c_char; 3] = [0x7b, -1i8 as c_char, 0];
    let mut handle: *mut HochReport = std::ptr::null_mut();
    let status = unsafe { hoch_run_json(bytes.as_ptr(), 2, 0, &mut handle) };
    assert_eq!(status, HochStatus::InvalidUtf8);
}

#[test]
fn continuation_runs_through_the_abi() {
    let problem = r#"{"kind": "deform", "payload": {"n_vars": 2, "pi": [[0, 1], [-1, 0]], "bounds": {"max_slot_order": 3, "max_coeff_degree": 2}}}"#;
    let (status, handle) = run(problem, 0, 3);
    assert_eq!(status, HochStatus::Ok);
    let json = unsafe { CStr::from_ptr(hoch_report_json(handle)) }
        .to_str()
        .unwrap()
        .to_owned();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["status"], "completed");
    assert_eq!(v["target_order"], 3);
    unsafe { hoch_report_free(handle) };
}
