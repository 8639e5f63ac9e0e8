use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use cubic_surface_ffi::*;
use serde_json::Value;

unsafe fn take(s: *mut c_char) -> Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
    cs_string_free(s);
    v
}

fn last_error() -> String {
    let p = cs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn fixture_group_report() {
    unsafe {
        let h = cs_surface_fixture();
        let mut out = ptr::null_mut();
        let mut ok = false;
        let st = cs_run(h, c("group").as_ptr(), ptr::null(), &mut out, &mut ok);
        assert_eq!(st, CsStatus::Ok);
        assert!(ok);
        assert!(cs_last_error().is_null());
        let v = take(out);
        assert_eq!(v["schema"], 1);
        assert_eq!(v["order"], 51840);
        cs_surface_free(h);
    }
}

#[test]
fn points_round_trip_through_handle() {
    unsafe {
        let h = cs_surface_fixture();
        let mut out = ptr::null_mut();
        assert_eq!(cs_surface_points_json(h, &mut out), CsStatus::Ok);
        let text = CStr::from_ptr(out).to_owned();
        cs_string_free(out);

        let mut h2 = ptr::null_mut();
        assert_eq!(cs_surface_from_json(text.as_ptr(), &mut h2), CsStatus::Ok);
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(cs_run(h, c("construct").as_ptr(), ptr::null(), &mut a, ptr::null_mut()), CsStatus::Ok);
        assert_eq!(cs_run(h2, c("construct").as_ptr(), ptr::null(), &mut b, ptr::null_mut()), CsStatus::Ok);
        let (va, vb) = (take(a), take(b));
        assert_eq!(va, vb);
        assert_eq!(va["lines"].as_object().unwrap().len(), 27);
        cs_surface_free(h);
        cs_surface_free(h2);
    }
}

#[test]
fn status_codes() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(cs_surface_from_json(c("{not json").as_ptr(), &mut h), CsStatus::InvalidInput);
        assert!(h.is_null());
        assert!(last_error().starts_with("InvalidInput"));

        assert_eq!(cs_surface_from_json(ptr::null(), &mut h), CsStatus::NullPointer);

        let collinear = r#"{"schema": 1, "field": "Q", "points": [["1","0","0"],["0","1","0"],["1","1","0"],["0","0","1"],["1","2","3"],["1","5","11"]]}"#;
        let mut h = ptr::null_mut();
        let st = cs_surface_from_json(c(collinear).as_ptr(), &mut h);
        assert_eq!(st, CsStatus::Domain);
        assert!(last_error().starts_with("DegeneratePoints"));

        let f = cs_surface_fixture();
        let mut out = ptr::null_mut();
        assert_eq!(cs_run(f, c("no-such-command").as_ptr(), ptr::null(), &mut out, ptr::null_mut()), CsStatus::UnknownCommand);
        assert!(out.is_null());
        assert_eq!(cs_run(f, c("group").as_ptr(), ptr::null(), ptr::null_mut(), ptr::null_mut()), CsStatus::NullPointer);
        cs_surface_free(f);
        cs_surface_free(ptr::null_mut());
        cs_string_free(ptr::null_mut());
    }
}

#[test]
fn options_reach_the_pipeline() {
    unsafe {
        let h = cs_surface_fixture();
        let opts = CsOptions { seed: 3, full: true, census: false, split: false };
        let mut out = ptr::null_mut();
        assert_eq!(cs_run(h, c("configurations").as_ptr(), &opts, &mut out, ptr::null_mut()), CsStatus::Ok);
        let v = take(out);
        assert_eq!(v["listing"]["double_sixes"].as_array().unwrap().len(), 36);
        cs_surface_free(h);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(cs_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/cubic_surface.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["cs_surface_from_json", "cs_run", "cs_string_free", "cs_last_error", "CS_STATUS_DOMAIN"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(st) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(&header).status() else {
        eprintln!("no C compiler, skipping syntax check");
        return;
    };
    assert!(st.success());
}
