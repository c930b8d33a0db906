//! C ABI over the core toolkit. All strings returned through out-pointers
//! are NUL-terminated, heap-allocated, and must be released with
//! `wchow_string_free`; suite reports are opaque handles released with
//! `wchow_report_free`. Every entry point is panic-safe.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use weierstrass_chow::chowcore::{picard_json, presentation_json, ChowError, Family};
use weierstrass_chow::verifykit::{run_all, SuiteReport};

/// Status codes mirrored by the CLI exit statuses: 0 success, 1 failed
/// mathematical check, 2 invalid input.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WchowStatus {
    WchowOk = 0,
    WchowCheckFailed = 1,
    WchowInvalidInput = 2,
    WchowNullPointer = 3,
    WchowInternalError = 4,
}

/// Opaque verification-suite report.
pub struct WchowReport {
    report: SuiteReport,
}

fn classify(e: &ChowError) -> WchowStatus {
    match e {
        ChowError::UnsupportedMarking
        | ChowError::GenusTooSmall
        | ChowError::IndexOutOfRange
        | ChowError::UnknownFamily(_) => WchowStatus::WchowInvalidInput,
        _ => WchowStatus::WchowCheckFailed,
    }
}

/// # Safety
/// `family` must be a valid NUL-terminated string.
unsafe fn parse_family(family: *const c_char) -> Result<Family, WchowStatus> {
    if family.is_null() {
        return Err(WchowStatus::WchowNullPointer);
    }
    let s = CStr::from_ptr(family)
        .to_str()
        .map_err(|_| WchowStatus::WchowInvalidInput)?;
    Family::parse(s).map_err(|_| WchowStatus::WchowInvalidInput)
}

fn write_string(out: *mut *mut c_char, text: String) -> WchowStatus {
    // interior NULs cannot occur in JSON emitted from valid UTF-8 data
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => return WchowStatus::WchowInternalError,
    };
    unsafe { *out = c.into_raw() };
    WchowStatus::WchowOk
}

fn guarded(f: impl FnOnce() -> WchowStatus) -> WchowStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(WchowStatus::WchowInternalError)
}

/// Computes the presentation of one catalog instance and returns it as a
/// JSON string through `out`.
///
/// # Safety
/// `family` must be a valid NUL-terminated string and `out` a valid
/// pointer; the result must be released with `wchow_string_free`.
#[no_mangle]
pub unsafe extern "C" fn wchow_present_json(
    family: *const c_char,
    g: i64,
    n: u32,
    out: *mut *mut c_char,
) -> WchowStatus {
    guarded(|| {
        if out.is_null() {
            return WchowStatus::WchowNullPointer;
        }
        let family = match parse_family(family) {
            Ok(f) => f,
            Err(s) => return s,
        };
        match presentation_json(family, g, n) {
            Ok(j) => write_string(out, serde_json::to_string(&j).expect("serializable")),
            Err(e) => classify(&e),
        }
    })
}

/// Computes the Picard group of one catalog instance and returns it as a
/// JSON string through `out`.
///
/// # Safety
/// As for `wchow_present_json`.
#[no_mangle]
pub unsafe extern "C" fn wchow_picard_json(
    family: *const c_char,
    g: i64,
    n: u32,
    out: *mut *mut c_char,
) -> WchowStatus {
    guarded(|| {
        if out.is_null() {
            return WchowStatus::WchowNullPointer;
        }
        let family = match parse_family(family) {
            Ok(f) => f,
            Err(s) => return s,
        };
        match picard_json(family, g, n) {
            Ok(j) => write_string(out, serde_json::to_string(&j).expect("serializable")),
            Err(e) => classify(&e),
        }
    })
}

/// Runs the verification suite over `[g_min, g_max]` and hands back an
/// opaque report. Returns `WchowCheckFailed` (with a valid report, so the
/// failures can be inspected) when any check fails.
///
/// # Safety
/// `out` must be a valid pointer; the report must be released with
/// `wchow_report_free`.
#[no_mangle]
pub unsafe extern "C" fn wchow_verify_new(
    g_min: i64,
    g_max: i64,
    out: *mut *mut WchowReport,
) -> WchowStatus {
    guarded(|| {
        if out.is_null() {
            return WchowStatus::WchowNullPointer;
        }
        match run_all(g_min, g_max) {
            Ok(report) => {
                let all_pass = report.all_pass();
                *out = Box::into_raw(Box::new(WchowReport { report }));
                if all_pass {
                    WchowStatus::WchowOk
                } else {
                    WchowStatus::WchowCheckFailed
                }
            }
            Err(_) => WchowStatus::WchowInvalidInput,
        }
    })
}

/// Number of check entries in the report; 0 for a null handle.
///
/// # Safety
/// `report` must be null or a handle from `wchow_verify_new`.
#[no_mangle]
pub unsafe extern "C" fn wchow_report_len(report: *const WchowReport) -> usize {
    if report.is_null() {
        return 0;
    }
    (*report).report.entries.len()
}

/// Whether every check in the report passed; false for a null handle.
///
/// # Safety
/// `report` must be null or a handle from `wchow_verify_new`.
#[no_mangle]
pub unsafe extern "C" fn wchow_report_all_pass(report: *const WchowReport) -> bool {
    if report.is_null() {
        return false;
    }
    (*report).report.all_pass()
}

/// Serializes the report as JSON lines, one check per line.
///
/// # Safety
/// `report` must be a handle from `wchow_verify_new` and `out` a valid
/// pointer; the result must be released with `wchow_string_free`.
#[no_mangle]
pub unsafe extern "C" fn wchow_report_json_lines(
    report: *const WchowReport,
    out: *mut *mut c_char,
) -> WchowStatus {
    guarded(|| {
        if report.is_null() || out.is_null() {
            return WchowStatus::WchowNullPointer;
        }
        write_string(out, (*report).report.to_json_lines())
    })
}

/// Releases a report handle. Null is a no-op.
///
/// # Safety
/// `report` must be null or a handle from `wchow_verify_new`, released at
/// most once.
#[no_mangle]
pub unsafe extern "C" fn wchow_report_free(report: *mut WchowReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library, released at most
/// once.
#[no_mangle]
pub unsafe extern "C" fn wchow_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
