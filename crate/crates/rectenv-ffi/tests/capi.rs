//! Exercises the C ABI surface the way a foreign binding would: raw
//! pointers, status codes, and library-owned strings.

use std::ffi::{CStr, CString};
use std::ptr;

use rectenv_ffi::*;

unsafe fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null());
    let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
    rectenv_string_free(ptr);
    s
}

fn build(p: u32, q: u32) -> *mut RectenvEnvelope {
    let mut handle: *mut RectenvEnvelope = ptr::null_mut();
    let code = unsafe { rectenv_build(p, q, 8, false, &mut handle) };
    assert_eq!(code, RECTENV_OK);
    assert!(!handle.is_null());
    handle
}

#[test]
fn build_and_dimension() {
    let env = build(2, 3);
    unsafe {
        assert_eq!(rectenv_dimension(env), 25);
        assert!(rectenv_rule_count(env) > 0);
        rectenv_envelope_free(env);
    }
}

#[test]
fn invalid_shape_reports_error() {
    let mut handle: *mut RectenvEnvelope = ptr::null_mut();
    let code = unsafe { rectenv_build(2, 2, 8, false, &mut handle) };
    assert_eq!(code, RECTENV_ERR_INVALID_ARGUMENT);
    assert!(handle.is_null());
    let msg = unsafe { CStr::from_ptr(rectenv_last_error()) }
        .to_str()
        .unwrap();
    assert!(msg.contains("p != q"), "unexpected message: {msg}");
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        assert_eq!(
            rectenv_build(2, 3, 8, false, ptr::null_mut()),
            RECTENV_ERR_NULL_ARGUMENT
        );
        assert_eq!(rectenv_dimension(ptr::null()), -1);
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            rectenv_normal_form(ptr::null(), ptr::null(), &mut out),
            RECTENV_ERR_NULL_ARGUMENT
        );
        rectenv_envelope_free(ptr::null_mut());
        rectenv_string_free(ptr::null_mut());
    }
}

#[test]
fn normal_form_round_trip() {
    let env = build(2, 3);
    let input = CString::new("1 * G[1,1] G[1,1] G[1,1]").unwrap();
    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    unsafe {
        assert_eq!(
            rectenv_normal_form(env, input.as_ptr(), &mut out),
            RECTENV_OK
        );
        assert_eq!(take_string(out), "1 * G[1,1]");

        let bad = CString::new("not a polynomial ~~").unwrap();
        let mut out2: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            rectenv_normal_form(env, bad.as_ptr(), &mut out2),
            RECTENV_ERR_PARSE
        );
        rectenv_envelope_free(env);
    }
}

#[test]
fn basis_has_dimension_lines() {
    let env = build(2, 3);
    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    unsafe {
        assert_eq!(rectenv_basis(env, &mut out), RECTENV_OK);
        let text = take_string(out);
        assert_eq!(text.lines().count(), 25);
        rectenv_envelope_free(env);
    }
}

#[test]
fn verify_json_passes_lemma_suite() {
    let env = build(2, 3);
    let suite = CString::new("lemma").unwrap();
    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    unsafe {
        let code = rectenv_verify_json(env, suite.as_ptr(), 0, &mut out);
        assert_eq!(code, RECTENV_OK);
        let text = take_string(out);
        let last = text.lines().last().unwrap();
        let summary: serde_json::Value = serde_json::from_str(last).unwrap();
        assert_eq!(summary["dimension"], 25);
        assert_eq!(summary["status"], "pass");

        let bogus = CString::new("nonsense").unwrap();
        let mut out2: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            rectenv_verify_json(env, bogus.as_ptr(), 0, &mut out2),
            RECTENV_ERR_INVALID_ARGUMENT
        );
        rectenv_envelope_free(env);
    }
}
