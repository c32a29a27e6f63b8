//! C ABI over `quiverloc`.
//!
//! Every fallible call returns a [`QlStatus`]; on failure the message is
//! available from [`ql_last_error`] on the same thread. Strings returned as
//! `char *` are owned by the caller and released with [`ql_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quiverloc::combinatorics::Stability;
use quiverloc::report::{run_compute, run_verify, Request, VerdictReport};
use quiverloc::scalars::Mode;
use quiverloc::series::PSeries;
use quiverloc::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    DivisionByZero = 4,
    ShapeMismatch = 5,
    NotInvertible = 6,
    NonTerminating = 7,
    PoleCollision = 8,
    RetryExhausted = 9,
    Diverges = 10,
    Infeasible = 11,
    Panic = 12,
}

/// Scalar field; `Default` keeps the identity's own choice.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlMode {
    Default = 0,
    Exact = 1,
    Prime = 2,
}

/// Parameters for verify and compute. Zero or null fields mean "use the default".
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QlRequest {
    pub n: usize,
    pub r: *const usize,
    pub r_len: usize,
    pub order: usize,
    pub mode: QlMode,
    pub seeds: *const u64,
    pub seeds_len: usize,
    pub trials: usize,
}

/// Opaque verdict of one identity check.
pub struct QlReport(VerdictReport);

/// Opaque truncated power series.
pub struct QlSeries(PSeries);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> QlStatus {
    match e {
        Error::DivisionByZero => QlStatus::DivisionByZero,
        Error::ShapeMismatch(..) => QlStatus::ShapeMismatch,
        Error::NotInvertible => QlStatus::NotInvertible,
        Error::NonTerminating => QlStatus::NonTerminating,
        Error::PoleCollision(_) => QlStatus::PoleCollision,
        Error::RetryExhausted(_) => QlStatus::RetryExhausted,
        Error::Diverges => QlStatus::Diverges,
        Error::Infeasible(..) => QlStatus::Infeasible,
        Error::Invalid(_) => QlStatus::InvalidArgument,
    }
}

struct Fail(QlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QlStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            QlStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(QlStatus::NullArgument, "null argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(QlStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize) -> Result<Option<&'a [T]>, Fail> {
    match (p.is_null(), len) {
        (_, 0) => Ok(None),
        (true, _) => Err(null()),
        (false, n) => Ok(Some(std::slice::from_raw_parts(p, n))),
    }
}

unsafe fn request(req: *const QlRequest) -> Result<Request, Fail> {
    if req.is_null() {
        return Ok(Request::default());
    }
    let q = &*req;
    let nz = |v: usize| (v != 0).then_some(v);
    Ok(Request {
        n: nz(q.n),
        r: slice_arg(q.r, q.r_len)?.map(<[usize]>::to_vec),
        order: nz(q.order),
        mode: match q.mode {
            QlMode::Default => None,
            QlMode::Exact => Some(Mode::Exact),
            QlMode::Prime => Some(Mode::Prime),
        },
        seeds: slice_arg(q.seeds, q.seeds_len)?.map(<[u64]>::to_vec),
        trials: nz(q.trials),
    })
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ql_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer is valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ql_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Check one identity. `req` may be null. `cap` bounds the estimated fixed-point count (0 = default).
///
/// # Safety
/// `identity` must be a NUL-terminated string, `req` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ql_verify(
    identity: *const c_char,
    req: *const QlRequest,
    cap: u64,
    out: *mut *mut QlReport,
) -> QlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let id = str_arg(identity)?;
        let cap = if cap == 0 { quiverloc::report::DEFAULT_CAP } else { cap };
        let rep = run_verify(id, &request(req)?, cap, false)?;
        *out = Box::into_raw(Box::new(QlReport(rep)));
        Ok(())
    })
}

/// 1 if the report passed, 0 if not, -1 for a null handle.
///
/// # Safety
/// `rep` must be null or a live handle from [`ql_verify`].
#[no_mangle]
pub unsafe extern "C" fn ql_report_passed(rep: *const QlReport) -> i32 {
    match rep.as_ref() {
        Some(r) => r.0.passed() as i32,
        None => -1,
    }
}

/// Report as one JSON object; free with [`ql_string_free`]. Null for a null handle.
///
/// # Safety
/// `rep` must be null or a live handle from [`ql_verify`].
#[no_mangle]
pub unsafe extern "C" fn ql_report_json(rep: *const QlReport) -> *mut c_char {
    match rep.as_ref() {
        Some(r) => into_c(serde_json::to_string(&r.0).unwrap_or_default()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `rep` must be null or a handle from [`ql_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ql_report_free(rep: *mut QlReport) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Compute a named series. `stability` is negative for the minus chamber and positive otherwise.
///
/// # Safety
/// `series` must be a NUL-terminated string, `req` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ql_compute(
    series: *const c_char,
    req: *const QlRequest,
    stability: i32,
    seed: u64,
    out: *mut *mut QlSeries,
) -> QlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let id = str_arg(series)?;
        let st = if stability < 0 { Stability::Negative } else { Stability::Positive };
        let s = run_compute(id, &request(req)?, st, seed)?;
        *out = Box::into_raw(Box::new(QlSeries(s)));
        Ok(())
    })
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn ql_series_nvars(s: *const QlSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.nvars)
}

/// Total-degree truncation, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn ql_series_trunc(s: *const QlSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.trunc)
}

/// Coefficient of the monomial with exponents `exps[0..len]`, written as a string to `out`.
///
/// # Safety
/// `s` live, `exps` valid for `len` reads, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ql_series_coeff(
    s: *const QlSeries,
    exps: *const u32,
    len: usize,
    out: *mut *mut c_char,
) -> QlStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let e = slice_arg(exps, len)?.unwrap_or(&[]);
        if e.len() != s.0.nvars {
            return Err(Fail(QlStatus::ShapeMismatch, format!("expected {} exponents, got {}", s.0.nvars, e.len())));
        }
        *out = into_c(s.0.coeff(e).to_string());
        Ok(())
    })
}

/// Series as JSON; free with [`ql_string_free`].
///
/// # Safety
/// `s` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn ql_series_json(s: *const QlSeries) -> *mut c_char {
    s.as_ref().map_or(ptr::null_mut(), |s| into_c(s.0.to_json().to_string()))
}

/// Series as CSV; free with [`ql_string_free`].
///
/// # Safety
/// `s` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn ql_series_csv(s: *const QlSeries) -> *mut c_char {
    s.as_ref().map_or(ptr::null_mut(), |s| into_c(s.0.to_csv()))
}

/// # Safety
/// `s` must be null or a series handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ql_series_free(s: *mut QlSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `p` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ql_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
        ql_string_free(p);
        s
    }

    unsafe fn last() -> String {
        CStr::from_ptr(ql_last_error()).to_str().unwrap().to_owned()
    }

    fn req(r: &[usize], order: usize, mode: QlMode) -> QlRequest {
        QlRequest { n: 0, r: r.as_ptr(), r_len: r.len(), order, mode, seeds: ptr::null(), seeds_len: 0, trials: 0 }
    }

    #[test]
    fn verify_roundtrip() {
        unsafe {
            let id = cstr("main1");
            let rq = req(&[1, 1], 3, QlMode::Prime);
            let mut rep = ptr::null_mut();
            assert_eq!(ql_verify(id.as_ptr(), &rq, 0, &mut rep), QlStatus::Ok);
            assert_eq!(ql_report_passed(rep), 1);
            let v: serde_json::Value = serde_json::from_str(&take(ql_report_json(rep))).unwrap();
            assert_eq!(v["identity"], "main1");
            assert_eq!(v["verdict"], "pass");
            ql_report_free(rep);
        }
    }

    #[test]
    fn verify_with_defaults_and_null_request() {
        unsafe {
            let id = cstr("lyk");
            let mut rep = ptr::null_mut();
            assert_eq!(ql_verify(id.as_ptr(), ptr::null(), 0, &mut rep), QlStatus::Ok);
            assert_eq!(ql_report_passed(rep), 1);
            ql_report_free(rep);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let mut rep = ptr::null_mut();
            let id = cstr("no-such-identity");
            assert_eq!(ql_verify(id.as_ptr(), ptr::null(), 0, &mut rep), QlStatus::InvalidArgument);
            assert!(rep.is_null());
            assert!(last().contains("no-such-identity"));

            assert_eq!(ql_verify(ptr::null(), ptr::null(), 0, &mut rep), QlStatus::NullArgument);
            let bad = [0xffu8, 0];
            assert_eq!(ql_verify(bad.as_ptr().cast(), ptr::null(), 0, &mut rep), QlStatus::InvalidUtf8);

            let id = cstr("main1");
            let rq = req(&[3, 3], 6, QlMode::Exact);
            assert_eq!(ql_verify(id.as_ptr(), &rq, 10, &mut rep), QlStatus::Infeasible);

            let ok = cstr("lyk");
            assert_eq!(ql_verify(ok.as_ptr(), ptr::null(), 0, &mut rep), QlStatus::Ok);
            assert_eq!(last(), "");
            ql_report_free(rep);
        }
    }

    #[test]
    fn compute_rank_one_adjoint() {
        unsafe {
            let id = cstr("hs-z-adj");
            let rq = req(&[1, 0], 3, QlMode::Exact);
            let mut s = ptr::null_mut();
            assert_eq!(ql_compute(id.as_ptr(), &rq, -1, 1, &mut s), QlStatus::Ok);
            assert_eq!(ql_series_nvars(s), 1);
            assert_eq!(ql_series_trunc(s), 3);
            let mut c = ptr::null_mut();
            assert_eq!(ql_series_coeff(s, [0u32].as_ptr(), 1, &mut c), QlStatus::Ok);
            assert_eq!(take(c), "1");
            assert_eq!(ql_series_coeff(s, [0u32, 0].as_ptr(), 2, &mut c), QlStatus::ShapeMismatch);

            let v: serde_json::Value = serde_json::from_str(&take(ql_series_json(s))).unwrap();
            assert_eq!(v["trunc"], 3);
            assert!(!take(ql_series_csv(s)).is_empty());
            ql_series_free(s);
        }
    }

    #[test]
    fn null_handles_are_harmless() {
        unsafe {
            assert_eq!(ql_report_passed(ptr::null()), -1);
            assert!(ql_report_json(ptr::null()).is_null());
            assert!(ql_series_json(ptr::null()).is_null());
            assert_eq!(ql_series_nvars(ptr::null()), 0);
            ql_report_free(ptr::null_mut());
            ql_series_free(ptr::null_mut());
            ql_string_free(ptr::null_mut());
            assert!(!CStr::from_ptr(ql_version()).to_bytes().is_empty());
        }
    }
}
