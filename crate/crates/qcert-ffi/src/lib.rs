//! C ABI over the qcert engine.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_build`
//! functions and released by the matching `*_free`. Every fallible call
//! returns a [`QcertStatus`]; on failure, [`qcert_last_error`] describes the
//! most recent error on the calling thread. Strings returned to C are
//! NUL-terminated, owned by the caller and released with
//! [`qcert_string_free`]. No call unwinds across the boundary.

#![deny(unsafe_op_in_unsafe_fn)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qcert::definiteness::{classify, Classification};
use qcert::linsys::{solve_gamma, Order, ProblemIndex};
use qcert::pohozaev4::{matrix_q4, BuiltMatrix, Family, FamilySpec};
use qcert::pohozaev6::matrix_q6;
use qcert::report::VerificationReport;
use qcert::scan::matrix_json;
use qcert::suites;
use qcert::Error;

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcertStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Homogeneity = 4,
    Convergence = 5,
    Degenerate = 6,
    Input = 7,
    Inconsistent = 8,
    Panic = 9,
}

/// Exact definiteness classes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcertClassification {
    PositiveDefinite = 0,
    PositiveSemidefiniteSingular = 1,
    Indefinite = 2,
    NegativeDefinite = 3,
    NegativeSemidefiniteSingular = 4,
}

/// Family codes accepted by [`qcert_matrix_build`].
pub const QCERT_FAMILY_D: u32 = 0;
pub const QCERT_FAMILY_W: u32 = 1;
pub const QCERT_FAMILY_H: u32 = 2;

/// A built Pohozaev matrix with exact entries.
pub struct QcertMatrix {
    built: BuiltMatrix,
}

/// The reports of one acceptance suite.
pub struct QcertReports {
    reports: Vec<VerificationReport>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> QcertStatus {
    set_error(err.to_string());
    match err {
        Error::Domain(_) => QcertStatus::Domain,
        Error::Homogeneity { .. } => QcertStatus::Homogeneity,
        Error::Convergence { .. } => QcertStatus::Convergence,
        Error::Degenerate { .. } => QcertStatus::Degenerate,
        Error::Input(_) => QcertStatus::Input,
        Error::Inconsistent(_) => QcertStatus::Inconsistent,
    }
}

/// Runs `f`, converting panics into [`QcertStatus::Panic`].
fn guard(f: impl FnOnce() -> QcertStatus) -> QcertStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            QcertStatus::Panic
        }
    }
}

fn invalid(msg: &str) -> QcertStatus {
    set_error(msg);
    QcertStatus::InvalidArgument
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last error on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn qcert_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qcert_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the caller guarantees `s` came from `CString::into_raw` here.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Builds the Pohozaev matrix of the given order (4 or 6), family code,
/// dimension n and index s. On success `*out` owns a new handle.
///
/// # Safety
/// `out` must be NULL or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn qcert_matrix_build(order: u32, family: u32, n: i64, s: i64, out: *mut *mut QcertMatrix) -> QcertStatus {
    if out.is_null() {
        return invalid("out is NULL");
    }
    guard(|| {
        let family = match family {
            QCERT_FAMILY_D => Family::D,
            QCERT_FAMILY_W => Family::W,
            QCERT_FAMILY_H => Family::H,
            _ => return invalid("unknown family code"),
        };
        if order != 4 && order != 6 {
            return invalid("order must be 4 or 6");
        }
        let built = FamilySpec::new(family, n, s, i64::from(order))
            .and_then(|spec| if order == 4 { matrix_q4(&spec) } else { matrix_q6(&spec) });
        match built {
            Ok(built) => {
                // SAFETY: `out` is non-null and the caller guarantees it is writable.
                unsafe { *out = Box::into_raw(Box::new(QcertMatrix { built })) };
                QcertStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a matrix handle. NULL is ignored.
///
/// # Safety
/// `m` must be NULL or a handle from [`qcert_matrix_build`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qcert_matrix_free(m: *mut QcertMatrix) {
    if !m.is_null() {
        // SAFETY: the caller guarantees `m` came from `Box::into_raw` here.
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Matrix dimension, or 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcert_matrix_dim(m: *const QcertMatrix) -> usize {
    // SAFETY: the caller guarantees `m` is NULL or live.
    unsafe { m.as_ref() }.map_or(0, |m| m.built.matrix.dim())
}

/// Exact entries as JSON (rational strings plus the shared pi half-power),
/// or NULL on a NULL handle. Free with [`qcert_string_free`].
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcert_matrix_json(m: *const QcertMatrix) -> *mut c_char {
    // SAFETY: the caller guarantees `m` is NULL or live.
    match unsafe { m.as_ref() } {
        Some(m) => into_c_string(matrix_json(&m.built).to_string()),
        None => {
            set_error("matrix handle is NULL");
            ptr::null_mut()
        }
    }
}

/// Classifies the matrix exactly.
///
/// # Safety
/// `m` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn qcert_matrix_classify(m: *const QcertMatrix, out: *mut QcertClassification) -> QcertStatus {
    // SAFETY: the caller guarantees `m` is NULL or live.
    let Some(m) = (unsafe { m.as_ref() }) else {
        set_error("matrix handle is NULL");
        return QcertStatus::NullPointer;
    };
    if out.is_null() {
        return invalid("out is NULL");
    }
    guard(|| match classify(&m.built.matrix) {
        Ok(v) => {
            let c = match v.classification {
                Classification::PositiveDefinite => QcertClassification::PositiveDefinite,
                Classification::PositiveSemidefiniteSingular => QcertClassification::PositiveSemidefiniteSingular,
                Classification::Indefinite => QcertClassification::Indefinite,
                Classification::NegativeDefinite => QcertClassification::NegativeDefinite,
                Classification::NegativeSemidefiniteSingular => QcertClassification::NegativeSemidefiniteSingular,
            };
            // SAFETY: `out` is non-null and the caller guarantees it is writable.
            unsafe { *out = c };
            QcertStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Solves the linearized system of the given order (2, 4 or 6) and writes
/// Gamma_1..Gamma_{s+3} as a JSON array of rational strings to `*out`.
///
/// # Safety
/// `out` must be NULL or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn qcert_linsys_gamma_json(order: u32, n: i64, k: i64, s: i64, out: *mut *mut c_char) -> QcertStatus {
    if out.is_null() {
        return invalid("out is NULL");
    }
    guard(|| {
        let sol = Order::from_value(i64::from(order)).and_then(|o| ProblemIndex::new(o, n, k, s)).and_then(|i| solve_gamma(&i));
        match sol {
            Ok(sol) => {
                let v: Vec<String> = sol.gamma.iter().map(ToString::to_string).collect();
                let json = serde_json::to_string(&v).expect("strings serialize");
                // SAFETY: `out` is non-null and the caller guarantees it is writable.
                unsafe { *out = into_c_string(json) };
                QcertStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Runs acceptance suite `criterion` (1..8) and stores its reports in a new
/// handle. Criterion 6 includes the transcribed-table cross-checks.
///
/// # Safety
/// `out` must be NULL or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn qcert_run_criterion(criterion: u32, out: *mut *mut QcertReports) -> QcertStatus {
    if out.is_null() {
        return invalid("out is NULL");
    }
    guard(|| {
        let outcome = match criterion {
            1 => suites::criterion_1(),
            2 => suites::criterion_2(),
            3 => suites::criterion_3(),
            4 => suites::criterion_4(),
            5 => suites::criterion_5(),
            6 => suites::criterion_6(true),
            7 => suites::criterion_7(),
            8 => suites::criterion_8(),
            _ => return invalid("criterion must be in 1..=8"),
        };
        // SAFETY: `out` is non-null and the caller guarantees it is writable.
        unsafe { *out = Box::into_raw(Box::new(QcertReports { reports: outcome.reports })) };
        QcertStatus::Ok
    })
}

/// Number of reports, or 0 for NULL.
///
/// # Safety
/// `r` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcert_reports_len(r: *const QcertReports) -> usize {
    // SAFETY: the caller guarantees `r` is NULL or live.
    unsafe { r.as_ref() }.map_or(0, |r| r.reports.len())
}

/// Number of reports whose verdict is not pass, or 0 for NULL.
///
/// # Safety
/// `r` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcert_reports_failed(r: *const QcertReports) -> usize {
    // SAFETY: the caller guarantees `r` is NULL or live.
    unsafe { r.as_ref() }.map_or(0, |r| r.reports.iter().filter(|x| !x.passed()).count())
}

/// All reports as JSON lines, or NULL for a NULL handle. Free with
/// [`qcert_string_free`].
///
/// # Safety
/// `r` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcert_reports_json_lines(r: *const QcertReports) -> *mut c_char {
    // SAFETY: the caller guarantees `r` is NULL or live.
    match unsafe { r.as_ref() } {
        Some(r) => into_c_string(r.reports.iter().map(|x| x.to_json_line() + "\n").collect()),
        None => {
            set_error("reports handle is NULL");
            ptr::null_mut()
        }
    }
}

/// Releases a reports handle. NULL is ignored.
///
/// # Safety
/// `r` must be NULL or a handle from [`qcert_run_criterion`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qcert_reports_free(r: *mut QcertReports) {
    if !r.is_null() {
        // SAFETY: the caller guarantees `r` came from `Box::into_raw` here.
        drop(unsafe { Box::from_raw(r) });
    }
}
