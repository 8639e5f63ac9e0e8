//! C ABI over the cubic-surface pipelines.
//!
//! A `CsSurface` handle owns six points. Commands run against a handle and
//! hand back a JSON document as a Rust-allocated string that the caller
//! releases with `cs_string_free`. Failures return a status code; the message
//! is kept per thread and read with `cs_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cubic_surface::blowup::{CubicSurface, SixPoints};
use cubic_surface::commands::{run, Command};
use cubic_surface::error::Error;
use cubic_surface::io::{points_from_json, points_to_json};
use cubic_surface::verify::VerifyOptions;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON, wrong schema, or a bad coordinate.
    InvalidInput = 3,
    UnknownCommand = 4,
    /// The computation itself failed (degenerate points, Eckardt point, ...).
    Domain = 5,
    Panic = 6,
}

/// Opaque handle to a validated set of six points.
pub struct CsSurface {
    points: SixPoints,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct CsOptions {
    pub seed: u64,
    pub full: bool,
    pub census: bool,
    pub split: bool,
}

impl From<CsOptions> for VerifyOptions {
    fn from(o: CsOptions) -> Self {
        VerifyOptions { seed: o.seed, full: o.full, census: o.census, split: o.split }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: CsStatus, msg: impl Into<String>) -> CsStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> CsStatus {
    let status = if matches!(e, Error::InvalidInput(_)) { CsStatus::InvalidInput } else { CsStatus::Domain };
    fail(status, format!("{}: {e}", e.name()))
}

fn guarded(f: impl FnOnce() -> CsStatus) -> CsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(CsStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CsStatus> {
    if s.is_null() {
        return Err(fail(CsStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(CsStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn give_string(s: String, out: *mut *mut c_char) -> CsStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CsStatus::Ok
        }
        Err(_) => fail(CsStatus::Panic, "output contained a nul byte"),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Handle for the built-in rational fixture. Never null.
#[no_mangle]
pub extern "C" fn cs_surface_fixture() -> *mut CsSurface {
    Box::into_raw(Box::new(CsSurface { points: SixPoints::fixture() }))
}

/// Parse a points document (`{"schema": 1, "field": ..., "points": [...]}`)
/// and check that the points are in general position.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_surface_from_json(json: *const c_char, out: *mut *mut CsSurface) -> CsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match points_from_json(text).and_then(|p| CubicSurface::from_points(p.clone()).map(|_| p)) {
            Ok(points) => {
                *out = Box::into_raw(Box::new(CsSurface { points }));
                CsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `surface` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cs_surface_free(surface: *mut CsSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// Serialize the handle's points back to a points document.
///
/// # Safety
/// `surface` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_surface_points_json(surface: *const CsSurface, out: *mut *mut c_char) -> CsStatus {
    guarded(|| {
        if surface.is_null() || out.is_null() {
            return fail(CsStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        give_string(points_to_json(&(*surface).points).to_string(), out)
    })
}

/// Run a command (`"construct"`, `"group"`, `"verify-all"`, ...) and return
/// its JSON report. `options` may be null for the defaults. `all_pass` may be
/// null; otherwise it receives whether every checked claim held.
///
/// # Safety
/// `surface` must be a live handle, `command` a NUL-terminated string,
/// `options` null or valid, and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_run(
    surface: *const CsSurface,
    command: *const c_char,
    options: *const CsOptions,
    out: *mut *mut c_char,
    all_pass: *mut bool,
) -> CsStatus {
    guarded(|| {
        if surface.is_null() || out.is_null() {
            return fail(CsStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let name = match read_str(command) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let Some(cmd) = Command::from_name(name) else {
            return fail(CsStatus::UnknownCommand, format!("unknown command {name:?}"));
        };
        let opts: VerifyOptions = if options.is_null() { CsOptions::default() } else { *options }.into();
        match run(cmd, Some((*surface).points.clone()), &opts) {
            Ok(o) => {
                if !all_pass.is_null() {
                    *all_pass = o.ok;
                }
                give_string(o.json.to_string(), out)
            }
            Err(e) => from_error(e),
        }
    })
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn cs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be a string returned by this library, not yet freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
