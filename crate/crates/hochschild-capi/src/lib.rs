//! C ABI for the cohomology engine.
//!
//! The interface is JSON-in, JSON-or-text-out: callers submit the same
//! problem documents the command-line front end accepts and receive an
//! opaque report handle with accessors for both renderings. All functions
//! are panic-safe (unwinds are caught and surfaced as a status code) and
//! null-tolerant. Strings returned by accessors are owned by the handle and
//! remain valid until `hoch_report_free`; the error string returned by
//! `hoch_last_error` is thread-local and remains valid until the next
//! failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hochschild::cli::{parse_problem, run_problem, RunError};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HochStatus {
    /// The call succeeded; out-parameters are populated.
    Ok = 0,
    /// The problem document was unreadable or ill-formed.
    InputError = 1,
    /// The engine hit a resource limit (degree cap, solve window).
    EngineError = 2,
    /// A required pointer argument was null.
    NullArgument = 3,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 4,
    /// An internal invariant was violated; the library state is still sound.
    InternalPanic = 5,
}

/// Opaque result handle. Allocate with `hoch_run_json`, read through the
/// accessors, release with `hoch_report_free`.
pub struct HochReport {
    json: CString,
    text: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

/// Version of the library, as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hoch_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message describing the most recent failure on this thread, or an empty
/// string if none. The pointer is invalidated by the next failing call.
#[no_mangle]
pub extern "C" fn hoch_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses and solves the problem document in `problem_json`.
///
/// `max_degree` bounds the cohomological degree for algebra and invariant
/// problems; `to_order` is the target order for continuation problems; each
/// is ignored by the other kinds. On `Ok`, `*out_report` owns a new handle.
#[no_mangle]
pub unsafe extern "C" fn hoch_run_json(
    problem_json: *const c_char,
    max_degree: u32,
    to_order: u32,
    out_report: *mut *mut HochReport,
) -> HochStatus {
    if problem_json.is_null() || out_report.is_null() {
        set_error("null argument");
        return HochStatus::NullArgument;
    }
    *out_report = std::ptr::null_mut();
    let text = match CStr::from_ptr(problem_json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("problem document is not valid UTF-8");
            return HochStatus::InvalidUtf8;
        }
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| {
        let problem = parse_problem(text)?;
        run_problem(&problem, max_degree as usize, to_order as usize)
    }));
    match outcome {
        Ok(Ok(report)) => {
            let json = CString::new(report.to_json()).unwrap_or_default();
            let rendered = CString::new(report.to_text()).unwrap_or_default();
            let handle = Box::new(HochReport {
                json,
                text: rendered,
            });
            *out_report = Box::into_raw(handle);
            HochStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            match e {
                RunError::Input(_) => HochStatus::InputError,
                RunError::Engine(_) => HochStatus::EngineError,
            }
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".to_string());
            set_error(&message);
            HochStatus::InternalPanic
        }
    }
}

/// JSON rendering of the report, owned by the handle.
#[no_mangle]
pub unsafe extern "C" fn hoch_report_json(report: *const HochReport) -> *const c_char {
    match report.as_ref() {
        Some(r) => r.json.as_ptr(),
        None => {
            set_error("null report handle");
            std::ptr::null()
        }
    }
}

/// Human-readable rendering of the report, owned by the handle.
#[no_mangle]
pub unsafe extern "C" fn hoch_report_text(report: *const HochReport) -> *const c_char {
    match report.as_ref() {
        Some(r) => r.text.as_ptr(),
        None => {
            set_error("null report handle");
            std::ptr::null()
        }
    }
}

/// Releases a handle produced by `hoch_run_json`. Null is a safe no-op.
#[no_mangle]
pub unsafe extern "C" fn hoch_report_free(report: *mut HochReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
