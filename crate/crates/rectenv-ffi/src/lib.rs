//! C ABI for the envelope engine: opaque handles, integer status codes,
//! UTF-8 strings allocated by this library and released with
//! [`rectenv_string_free`].
//!
//! The matching header is maintained by hand at `include/rectenv.h`; keep
//! the two in sync when changing any exported signature.
//!
//! Conventions:
//! - Every fallible call returns a `RECTENV_*` status code and writes its
//!   result through an out pointer on success.
//! - `rectenv_last_error` returns a thread-local message for the most recent
//!   failing call on this thread.
//! - Panics are caught at the boundary and reported as `RECTENV_ERR_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rectenv::envelope::{self, BuildOptions, EnvelopeContext};
use rectenv::pipeline::{self, Suite, VerifyConfig};
use rectenv::NcPoly;

pub const RECTENV_OK: i32 = 0;
/// A certificate suite ran to completion but at least one check failed.
pub const RECTENV_CERT_FAILED: i32 = 1;
pub const RECTENV_ERR_NULL_ARGUMENT: i32 = 2;
pub const RECTENV_ERR_INVALID_ARGUMENT: i32 = 3;
pub const RECTENV_ERR_BUILD: i32 = 4;
pub const RECTENV_ERR_PARSE: i32 = 5;
pub const RECTENV_ERR_PANIC: i32 = 6;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rectenv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null(), |c| c.as_ptr())
    })
}

/// Opaque envelope handle.
pub struct RectenvEnvelope {
    ctx: EnvelopeContext,
}

fn to_cstring_ptr(s: String) -> *mut c_char {
    CString::new(s)
        .map_or(ptr::null_mut(), CString::into_raw)
}

fn guard<F: FnOnce() -> i32>(f: F) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic".to_string());
            RECTENV_ERR_PANIC
        }
    }
}

/// Builds the envelope for a p x q shape. On success writes a handle that
/// must be released with `rectenv_envelope_free`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rectenv_build(
    p: u32,
    q: u32,
    max_degree: u32,
    allow_unproven: bool,
    out: *mut *mut RectenvEnvelope,
) -> i32 {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null".to_string());
            return RECTENV_ERR_NULL_ARGUMENT;
        }
        let options = BuildOptions {
            max_degree: max_degree as usize,
            allow_unproven,
            ..BuildOptions::default()
        };
        match envelope::build_with(p as usize, q as usize, options) {
            Ok(ctx) => {
                let handle = Box::new(RectenvEnvelope { ctx });
                unsafe { *out = Box::into_raw(handle) };
                RECTENV_OK
            }
            Err(err @ envelope::BuildError::InvalidShape { .. }) => {
                set_error(err.to_string());
                RECTENV_ERR_INVALID_ARGUMENT
            }
            Err(err) => {
                set_error(err.to_string());
                RECTENV_ERR_BUILD
            }
        }
    })
}

/// Releases a handle returned by `rectenv_build`. NULL is a no-op.
///
/// # Safety
/// `env` must be NULL or a pointer previously returned by `rectenv_build`
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn rectenv_envelope_free(env: *mut RectenvEnvelope) {
    if !env.is_null() {
        drop(unsafe { Box::from_raw(env) });
    }
}

/// Certified linear dimension of the envelope, or -1 on NULL.
///
/// # Safety
/// `env` must be NULL or a live handle from `rectenv_build`.
#[no_mangle]
pub unsafe extern "C" fn rectenv_dimension(env: *const RectenvEnvelope) -> i64 {
    if env.is_null() {
        return -1;
    }
    unsafe { &*env }.ctx.dimension() as i64
}

/// Number of rules in the completed rewriting system, or -1 on NULL.
///
/// # Safety
/// `env` must be NULL or a live handle from `rectenv_build`.
#[no_mangle]
pub unsafe extern "C" fn rectenv_rule_count(env: *const RectenvEnvelope) -> i64 {
    if env.is_null() {
        return -1;
    }
    unsafe { &*env }.ctx.system.rules().len() as i64
}

/// Normal form of a polynomial given in the canonical text format (for
/// example `"1 * G[1,1] G[1,1] G[1,1]"`). Writes a newly allocated string.
///
/// # Safety
/// `env` must be a live handle; `poly` a NUL-terminated UTF-8 string; `out`
/// valid writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rectenv_normal_form(
    env: *const RectenvEnvelope,
    poly: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        if env.is_null() || poly.is_null() || out.is_null() {
            set_error("null argument".to_string());
            return RECTENV_ERR_NULL_ARGUMENT;
        }
        let text = match unsafe { CStr::from_ptr(poly) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("polynomial text is not UTF-8".to_string());
                return RECTENV_ERR_PARSE;
            }
        };
        let parsed: NcPoly = match text.parse() {
            Ok(p) => p,
            Err(e) => {
                set_error(format!("parse error: {e}"));
                return RECTENV_ERR_PARSE;
            }
        };
        let ctx = &unsafe { &*env }.ctx;
        let nf = ctx.nf(&parsed);
        unsafe { *out = to_cstring_ptr(nf.to_string()) };
        RECTENV_OK
    })
}

/// Normal-word basis, one word per line. Writes a newly allocated string.
///
/// # Safety
/// `env` must be a live handle; `out` valid writable storage for one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn rectenv_basis(
    env: *const RectenvEnvelope,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        if env.is_null() || out.is_null() {
            set_error("null argument".to_string());
            return RECTENV_ERR_NULL_ARGUMENT;
        }
        let ctx = &unsafe { &*env }.ctx;
        let mut text = String::new();
        for w in ctx.basis.words() {
            text.push_str(&w.to_string());
            text.push('\n');
        }
        unsafe { *out = to_cstring_ptr(text) };
        RECTENV_OK
    })
}

fn parse_suite(name: &str) -> Option<Suite> {
    Some(match name {
        "all" => Suite::All,
        "lemma" => Suite::Lemma,
        "corollary" => Suite::Corollary,
        "units" => Suite::Units,
        "center" => Suite::Center,
        "iso" => Suite::Iso,
        "props" => Suite::Props,
        _ => return None,
    })
}

/// Runs a certificate suite ("all", "lemma", "corollary", "units", "center",
/// "iso", or "props") and writes the report as one JSON object per line,
/// summary last. Returns RECTENV_OK when every certificate passed and
/// RECTENV_CERT_FAILED when the report contains failures.
///
/// # Safety
/// `env` must be a live handle; `suite` a NUL-terminated string; `out_json`
/// valid writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rectenv_verify_json(
    env: *const RectenvEnvelope,
    suite: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
) -> i32 {
    guard(|| {
        if env.is_null() || suite.is_null() || out_json.is_null() {
            set_error("null argument".to_string());
            return RECTENV_ERR_NULL_ARGUMENT;
        }
        let suite = match unsafe { CStr::from_ptr(suite) }.to_str().ok().and_then(parse_suite) {
            Some(s) => s,
            None => {
                set_error("unknown suite name".to_string());
                return RECTENV_ERR_INVALID_ARGUMENT;
            }
        };
        let ctx = &unsafe { &*env }.ctx;
        let cfg = VerifyConfig {
            p: ctx.shape.p,
            q: ctx.shape.q,
            options: ctx.options,
            suite,
            seed,
            jts_samples: pipeline::DEFAULT_JTS_SAMPLES,
            nf_samples: pipeline::DEFAULT_NF_SAMPLES,
        };
        let outcome =
            pipeline::verify_with_generators(&cfg, ctx.generators.clone(), ctx.theorem_mode);
        let mut text = String::new();
        for cert in &outcome.certificates {
            let mut cert = cert.clone();
            cert.elapsed_ms = 0;
            text.push_str(&serde_json::to_string(&cert).expect("serialize"));
            text.push('\n');
        }
        text.push_str(&serde_json::to_string(&outcome.summary).expect("serialize"));
        text.push('\n');
        unsafe { *out_json = to_cstring_ptr(text) };
        if outcome.pass {
            RECTENV_OK
        } else {
            RECTENV_CERT_FAILED
        }
    })
}

/// Frees a string allocated by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a pointer returned by one of the string-producing
/// functions here, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rectenv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
