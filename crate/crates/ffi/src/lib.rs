//! C ABI for running scenarios and reading reports.
//!
//! Handles are opaque pointers created by `kl_scenario_*` constructors or
//! [`kl_run`] and released with the matching `*_free`. Every fallible call
//! returns a [`KlStatus`]; on failure the message is available from
//! [`kl_last_error`] until the next failing call on the same thread.
//! Strings returned to the caller are owned by the caller and must be
//! released with [`kl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use koszulab::report::{run_scenario, to_json, to_text, Report};
use koszulab::scenario::{builtin, Overrides, Scenario};
use koszulab::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Internal = 5,
    Panic = 6,
}

/// A scenario ready to run.
pub struct KlScenario {
    name: String,
    inner: Scenario,
}

/// The outcome of a run.
pub struct KlReport {
    inner: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> KlStatus {
    match e {
        Error::Parse { .. } => KlStatus::Parse,
        Error::Invariant(_) | Error::RankDisagreement(_) => KlStatus::Internal,
        _ => KlStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (KlStatus, String)>) -> KlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            KlStatus::Panic
        }
    }
}

fn fail(e: Error) -> (KlStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (KlStatus, String)> {
    if p.is_null() {
        return Err((KlStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (KlStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message of the last failing call on this thread (empty if none). The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn kl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses scenario JSON into a new handle.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kl_scenario_from_json(json: *const c_char, out: *mut *mut KlScenario) -> KlStatus {
    guard(|| {
        if out.is_null() {
            return Err((KlStatus::NullPointer, "out is null".into()));
        }
        let text = read_str(json, "json")?;
        let inner = Scenario::from_json(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(KlScenario {
            name: "scenario".into(),
            inner,
        }));
        Ok(())
    })
}

/// Creates a handle for a built-in scenario.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kl_scenario_builtin(name: *const c_char, out: *mut *mut KlScenario) -> KlStatus {
    guard(|| {
        if out.is_null() {
            return Err((KlStatus::NullPointer, "out is null".into()));
        }
        let name = read_str(name, "name")?;
        let inner = builtin(name).ok_or((KlStatus::InvalidInput, format!("unknown builtin `{name}`")))?;
        *out = Box::into_raw(Box::new(KlScenario {
            name: name.to_string(),
            inner,
        }));
        Ok(())
    })
}

/// Overrides the degree bound.
///
/// # Safety
/// `scenario` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn kl_scenario_set_degree_bound(scenario: *mut KlScenario, degree_bound: i64) -> KlStatus {
    guard(|| {
        let s = scenario.as_mut().ok_or((KlStatus::NullPointer, "scenario is null".to_string()))?;
        if degree_bound < 0 {
            return Err((KlStatus::InvalidInput, "degree bound must be nonnegative".into()));
        }
        s.inner.apply(&Overrides {
            degree_bound: Some(degree_bound),
            ..Overrides::default()
        });
        Ok(())
    })
}

/// Overrides the seed.
///
/// # Safety
/// `scenario` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn kl_scenario_set_seed(scenario: *mut KlScenario, seed: u64) -> KlStatus {
    guard(|| {
        let s = scenario.as_mut().ok_or((KlStatus::NullPointer, "scenario is null".to_string()))?;
        s.inner.seed = seed;
        Ok(())
    })
}

/// Restricts the checks to a comma-separated list of names (empty for
/// none).
///
/// # Safety
/// `scenario` must be a live handle and `checks` a valid NUL-terminated
/// string.
#[no_mangle]
pub unsafe extern "C" fn kl_scenario_set_checks(scenario: *mut KlScenario, checks: *const c_char) -> KlStatus {
    guard(|| {
        let s = scenario.as_mut().ok_or((KlStatus::NullPointer, "scenario is null".to_string()))?;
        let list: Vec<String> = read_str(checks, "checks")?
            .split(',')
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .map(String::from)
            .collect();
        let mut probe = s.inner.clone();
        probe.checks = Some(list.clone());
        probe.effective_checks().map_err(fail)?;
        s.inner.checks = Some(list);
        Ok(())
    })
}

/// Releases a scenario handle. Null is ignored.
///
/// # Safety
/// `scenario` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kl_scenario_free(scenario: *mut KlScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Runs the scenario. A refused scenario (grade hypothesis not met) still
/// yields a report, whose status is 2.
///
/// # Safety
/// `scenario` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kl_run(scenario: *const KlScenario, out: *mut *mut KlReport) -> KlStatus {
    guard(|| {
        if out.is_null() {
            return Err((KlStatus::NullPointer, "out is null".into()));
        }
        let s = scenario.as_ref().ok_or((KlStatus::NullPointer, "scenario is null".to_string()))?;
        let inner = run_scenario(&s.name, &s.inner).map_err(fail)?;
        *out = Box::into_raw(Box::new(KlReport { inner }));
        Ok(())
    })
}

/// Run status: 0 all checks passed, 1 some check failed, 2 refused, -1 for
/// a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kl_report_status(report: *const KlReport) -> i32 {
    match report.as_ref() {
        Some(r) => r.inner.exit_code(),
        None => -1,
    }
}

/// The report as canonical JSON; release with [`kl_string_free`]. Null for
/// a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kl_report_json(report: *const KlReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => out_string(to_json(&r.inner)),
        None => ptr::null_mut(),
    }
}

/// The report as a text table; release with [`kl_string_free`].
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kl_report_text(report: *const KlReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => out_string(to_text(&r.inner)),
        None => ptr::null_mut(),
    }
}

/// Releases a report handle. Null is ignored.
///
/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kl_report_free(report: *mut KlReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
