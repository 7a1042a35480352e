use std::ffi::{CStr, CString};
use std::ptr;

use koszulab_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(kl_last_error()) }.to_str().unwrap().to_string()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    kl_string_free(s);
    out
}

#[test]
fn builtin_run_produces_passing_json() {
    unsafe {
        let mut sc = ptr::null_mut();
        assert_eq!(kl_scenario_builtin(cstr("koszul-n2").as_ptr(), &mut sc), KlStatus::Ok);
        let mut rep = ptr::null_mut();
        assert_eq!(kl_run(sc, &mut rep), KlStatus::Ok);
        assert_eq!(kl_report_status(rep), 0);
        let json = take(kl_report_json(rep));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema"], "koszulab-report/1");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["oracle_agreement"], true);
        let text = take(kl_report_text(rep));
        assert!(text.contains("status: pass"));
        kl_report_free(rep);
        kl_scenario_free(sc);
    }
}

#[test]
fn json_scenario_with_overrides() {
    let json = r#"{"variables":["X","Y"],"psi":[["X","Y"]],"chi":["-Y","X"]}"#;
    unsafe {
        let mut sc = ptr::null_mut();
        assert_eq!(kl_scenario_from_json(cstr(json).as_ptr(), &mut sc), KlStatus::Ok);
        assert_eq!(kl_scenario_set_degree_bound(sc, 2), KlStatus::Ok);
        assert_eq!(kl_scenario_set_seed(sc, 7), KlStatus::Ok);
        assert_eq!(kl_scenario_set_checks(sc, cstr("invariants, thm5").as_ptr()), KlStatus::Ok);
        let mut rep = ptr::null_mut();
        assert_eq!(kl_run(sc, &mut rep), KlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(kl_report_json(rep))).unwrap();
        assert_eq!(v["scenario"]["degree_bound"], 2);
        assert_eq!(v["scenario"]["seed"], 7);
        let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
        assert_eq!(names, ["invariants", "thm5"]);
        kl_report_free(rep);
        kl_scenario_free(sc);
    }
}

#[test]
fn refusal_is_a_report_with_status_two() {
    let json = r#"{"variables":["X"],"psi":[["X","X"]],"chi":["X","-X"]}"#;
    unsafe {
        let mut sc = ptr::null_mut();
        assert_eq!(kl_scenario_from_json(cstr(json).as_ptr(), &mut sc), KlStatus::Ok);
        let mut rep = ptr::null_mut();
        assert_eq!(kl_run(sc, &mut rep), KlStatus::Ok);
        assert_eq!(kl_report_status(rep), 2);
        kl_report_free(rep);
        kl_scenario_free(sc);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut sc = ptr::null_mut();
        assert_eq!(kl_scenario_from_json(cstr("{ nope").as_ptr(), &mut sc), KlStatus::Parse);
        assert!(sc.is_null());
        assert!(last_error().contains("line 1"));

        assert_eq!(kl_scenario_builtin(cstr("no-such").as_ptr(), &mut sc), KlStatus::InvalidInput);
        assert!(last_error().contains("no-such"));

        let bad_poly = r#"{"variables":["X","Y"],"psi":[["X","Z"]],"chi":["-Y","X"]}"#;
        assert_eq!(kl_scenario_from_json(cstr(bad_poly).as_ptr(), &mut sc), KlStatus::Ok);
        let mut rep = ptr::null_mut();
        assert_eq!(kl_run(sc, &mut rep), KlStatus::Parse);
        assert!(rep.is_null());
        assert!(last_error().contains("psi[0][1]"));

        assert_eq!(kl_scenario_set_checks(sc, cstr("thm5,bogus").as_ptr()), KlStatus::InvalidInput);
        assert_eq!(kl_scenario_set_degree_bound(sc, -1), KlStatus::InvalidInput);
        kl_scenario_free(sc);

        let invalid = [0xffu8, 0xfe, 0];
        assert_eq!(
            kl_scenario_from_json(invalid.as_ptr() as *const _, &mut sc),
            KlStatus::InvalidUtf8
        );
    }
}

#[test]
fn null_pointers_are_rejected() {
    unsafe {
        let mut sc = ptr::null_mut();
        assert_eq!(kl_scenario_from_json(ptr::null(), &mut sc), KlStatus::NullPointer);
        assert_eq!(kl_scenario_builtin(cstr("koszul-n2").as_ptr(), ptr::null_mut()), KlStatus::NullPointer);
        let mut rep = ptr::null_mut();
        assert_eq!(kl_run(ptr::null(), &mut rep), KlStatus::NullPointer);
        assert_eq!(kl_scenario_set_seed(ptr::null_mut(), 1), KlStatus::NullPointer);
        assert_eq!(kl_report_status(ptr::null()), -1);
        assert!(kl_report_json(ptr::null()).is_null());
        kl_report_free(ptr::null_mut());
        kl_scenario_free(ptr::null_mut());
        kl_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(kl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/koszulab.h")).unwrap();
    for sym in [
        "KlStatus kl_scenario_from_json(const char *json, KlScenario **out);",
        "KlStatus kl_scenario_builtin(const char *name, KlScenario **out);",
        "KlStatus kl_run(const KlScenario *scenario, KlReport **out);",
        "int32_t kl_report_status(const KlReport *report);",
        "char *kl_report_json(const KlReport *report);",
        "void kl_string_free(char *s);",
        "const char *kl_last_error(void);",
        "typedef struct KlScenario KlScenario;",
        "KL_STATUS_NULL_POINTER = 1",
        "KL_STATUS_PANIC = 6",
    ] {
        assert!(header.contains(sym), "header lacks `{sym}`");
    }
}
