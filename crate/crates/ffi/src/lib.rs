//! C ABI over `lporder`.
//!
//! Polynomials, operators and chains cross the boundary as JSON strings in
//! the same shapes the CLI reads and writes. Every entry point returns an
//! [`LpoStatus`]; on anything but `LPO_OK` or `LPO_VIOLATION` the message is
//! available from [`lpo_last_error_message`]. Strings returned through out
//! pointers belong to the caller and are released with [`lpo_string_free`].
//!
//! Pointer arguments must be null or valid for the access described:
//! strings NUL-terminated, out pointers writable, handles obtained from this
//! library and not yet freed.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lporder::api;
use lporder::harness::{self, ExperimentConfig, SuiteReport};
use lporder::{Error, Mode};
use serde_json::Value;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpoStatus {
    LpoOk = 0,
    /// The call succeeded and found a violation (failed report, order
    /// that does not hold, chain that does not verify).
    LpoViolation = 1,
    LpoNullArgument = 2,
    LpoInvalidUtf8 = 3,
    LpoParseError = 4,
    LpoConfigError = 5,
    /// A mathematical precondition failed (not real-rooted, wrong mode, ...).
    LpoDomainError = 6,
    LpoPanic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpoMode {
    LpoRational = 0,
    LpoFloat = 1,
}

impl From<LpoMode> for Mode {
    fn from(m: LpoMode) -> Self {
        match m {
            LpoMode::LpoRational => Mode::Rational,
            LpoMode::LpoFloat => Mode::Float,
        }
    }
}

/// Opaque run configuration.
pub struct LpoConfig(ExperimentConfig);

/// Opaque suite or hunt report.
pub struct LpoReport(SuiteReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lpo_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

fn status_of(e: &Error) -> LpoStatus {
    match e {
        Error::Parse(_) | Error::Io(_) => LpoStatus::LpoParseError,
        Error::Config(_) | Error::UnknownSuite(_) | Error::GeneratorExhausted(_) => LpoStatus::LpoConfigError,
        _ => LpoStatus::LpoDomainError,
    }
}

struct Failure(LpoStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Outcome<LpoStatus>) -> LpoStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            LpoStatus::LpoPanic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(Failure(LpoStatus::LpoNullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(LpoStatus::LpoInvalidUtf8, e.to_string()))
}

unsafe fn json(p: *const c_char) -> Outcome<Value> {
    Ok(serde_json::from_str(text(p)?).map_err(Error::from)?)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Outcome<()> {
    if out.is_null() {
        return Err(Failure(LpoStatus::LpoNullArgument, "null out pointer".into()));
    }
    let c = CString::new(s).map_err(|e| Failure(LpoStatus::LpoParseError, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, v: &Value) -> Outcome<()> {
    write_string(out, v.to_string())
}

unsafe fn clear(out: *mut *mut c_char) {
    if !out.is_null() {
        *out = ptr::null_mut();
    }
}

fn tolerance(tol: f64) -> Option<f64> {
    (tol.is_finite() && tol > 0.0).then_some(tol)
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lpo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lpo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// New configuration for `suite` (a suite name, or `pb1`/`pb2`/`pb3`)
/// with default trials, seed 0 and rational mode. Null on bad input.
#[no_mangle]
pub unsafe extern "C" fn lpo_config_new(suite: *const c_char) -> *mut LpoConfig {
    let mut handle = ptr::null_mut();
    guard(|| {
        handle = Box::into_raw(Box::new(LpoConfig(ExperimentConfig::new(text(suite)?))));
        Ok(LpoStatus::LpoOk)
    });
    handle
}

/// Configuration parsed from the JSON config-file schema.
#[no_mangle]
pub unsafe extern "C" fn lpo_config_from_json(config: *const c_char, out: *mut *mut LpoConfig) -> LpoStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(LpoStatus::LpoNullArgument, "null out pointer".into()));
        }
        *out = ptr::null_mut();
        let c = ExperimentConfig::from_json_str(text(config)?)?;
        *out = Box::into_raw(Box::new(LpoConfig(c)));
        Ok(LpoStatus::LpoOk)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lpo_config_free(config: *mut LpoConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

unsafe fn config_mut<'a>(config: *mut LpoConfig) -> Outcome<&'a mut ExperimentConfig> {
    config
        .as_mut()
        .map(|c| &mut c.0)
        .ok_or_else(|| Failure(LpoStatus::LpoNullArgument, "null config".into()))
}

#[no_mangle]
pub unsafe extern "C" fn lpo_config_set_trials(config: *mut LpoConfig, trials: usize) -> LpoStatus {
    guard(|| {
        config_mut(config)?.trials = trials;
        Ok(LpoStatus::LpoOk)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lpo_config_set_seed(config: *mut LpoConfig, seed: u64) -> LpoStatus {
    guard(|| {
        config_mut(config)?.seed = seed;
        Ok(LpoStatus::LpoOk)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lpo_config_set_mode(config: *mut LpoConfig, mode: LpoMode) -> LpoStatus {
    guard(|| {
        config_mut(config)?.mode = mode.into();
        Ok(LpoStatus::LpoOk)
    })
}

/// Relative tolerance; zero, negative or non-finite restores the default.
#[no_mangle]
pub unsafe extern "C" fn lpo_config_set_tol(config: *mut LpoConfig, tol: f64) -> LpoStatus {
    guard(|| {
        config_mut(config)?.tol = tolerance(tol);
        Ok(LpoStatus::LpoOk)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lpo_config_set_degrees(config: *mut LpoConfig, min: usize, max: usize) -> LpoStatus {
    guard(|| {
        let c = config_mut(config)?;
        c.min_degree = Some(min);
        c.max_degree = Some(max);
        Ok(LpoStatus::LpoOk)
    })
}

/// Hunt family; null clears it.
#[no_mangle]
pub unsafe extern "C" fn lpo_config_set_family(config: *mut LpoConfig, family: *const c_char) -> LpoStatus {
    guard(|| {
        let family = if family.is_null() {
            None
        } else {
            Some(text(family)?.to_string())
        };
        config_mut(config)?.family = family;
        Ok(LpoStatus::LpoOk)
    })
}

unsafe fn run_report(
    config: *const LpoConfig,
    out: *mut *mut LpoReport,
    run: impl FnOnce(&ExperimentConfig) -> lporder::Result<SuiteReport>,
) -> LpoStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(LpoStatus::LpoNullArgument, "null out pointer".into()));
        }
        *out = ptr::null_mut();
        let c = config
            .as_ref()
            .ok_or_else(|| Failure(LpoStatus::LpoNullArgument, "null config".into()))?;
        let r = run(&c.0)?;
        let status = if r.passed {
            LpoStatus::LpoOk
        } else {
            LpoStatus::LpoViolation
        };
        *out = Box::into_raw(Box::new(LpoReport(r)));
        Ok(status)
    })
}

/// Runs the configured verification suite. `LPO_VIOLATION` means the report
/// was produced and records failures.
#[no_mangle]
pub unsafe extern "C" fn lpo_run_suite(config: *const LpoConfig, out: *mut *mut LpoReport) -> LpoStatus {
    run_report(config, out, harness::run_suite)
}

/// Runs the counterexample hunt named by the configuration's suite field.
#[no_mangle]
pub unsafe extern "C" fn lpo_hunt(config: *const LpoConfig, out: *mut *mut LpoReport) -> LpoStatus {
    run_report(config, out, |c| harness::hunt_counterexamples(&c.suite, c))
}

#[no_mangle]
pub unsafe extern "C" fn lpo_report_free(report: *mut LpoReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// 1 when the report has no failures, 0 otherwise or for null.
#[no_mangle]
pub unsafe extern "C" fn lpo_report_passed(report: *const LpoReport) -> i32 {
    report.as_ref().map_or(0, |r| i32::from(r.0.passed))
}

#[no_mangle]
pub unsafe extern "C" fn lpo_report_failure_count(report: *const LpoReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.failures.len())
}

#[no_mangle]
pub unsafe extern "C" fn lpo_report_trials(report: *const LpoReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.trials)
}

/// The report as JSON lines, the same text the CLI prints.
#[no_mangle]
pub unsafe extern "C" fn lpo_report_json_lines(report: *const LpoReport, out: *mut *mut c_char) -> LpoStatus {
    guard(|| {
        clear(out);
        let r = report
            .as_ref()
            .ok_or_else(|| Failure(LpoStatus::LpoNullArgument, "null report".into()))?;
        write_string(out, r.0.to_json_lines())?;
        Ok(LpoStatus::LpoOk)
    })
}

/// Majorization certificate for `Z(q) ≺ Z(p)`. A non-positive `tol` uses the
/// default. Returns `LPO_VIOLATION` with the certificate when it fails.
#[no_mangle]
pub unsafe extern "C" fn lpo_majorize_check(
    q: *const c_char,
    p: *const c_char,
    tol: f64,
    out: *mut *mut c_char,
) -> LpoStatus {
    guard(|| {
        clear(out);
        let cert = api::majorize_check(&json(q)?, &json(p)?, tolerance(tol))?;
        write_json(out, &cert)?;
        Ok(if api::certificate_holds(&cert) {
            LpoStatus::LpoOk
        } else {
            LpoStatus::LpoViolation
        })
    })
}

/// Doubly stochastic witness (rational inputs only).
#[no_mangle]
pub unsafe extern "C" fn lpo_majorize_witness(q: *const c_char, p: *const c_char, out: *mut *mut c_char) -> LpoStatus {
    guard(|| {
        clear(out);
        write_json(out, &api::majorize_witness(&json(q)?, &json(p)?)?)?;
        Ok(LpoStatus::LpoOk)
    })
}

/// Simple nondegenerate contraction chain from `p` to `q`. `eps` may be
/// null; otherwise both are perturbed to strict polynomials first.
#[no_mangle]
pub unsafe extern "C" fn lpo_chain_decompose(
    p: *const c_char,
    q: *const c_char,
    eps: *const c_char,
    out: *mut *mut c_char,
) -> LpoStatus {
    guard(|| {
        clear(out);
        let eps = if eps.is_null() {
            None
        } else {
            Some(Value::String(text(eps)?.into()))
        };
        write_json(out, &api::chain_decompose(&json(p)?, &json(q)?, eps.as_ref(), None)?)?;
        Ok(LpoStatus::LpoOk)
    })
}

/// Replays a chain; `LPO_VIOLATION` when any step check fails.
#[no_mangle]
pub unsafe extern "C" fn lpo_chain_verify(chain: *const c_char, out: *mut *mut c_char) -> LpoStatus {
    guard(|| {
        clear(out);
        let r = api::chain_verify(&json(chain)?)?;
        write_json(out, &r)?;
        Ok(if r["clean"] == true {
            LpoStatus::LpoOk
        } else {
            LpoStatus::LpoViolation
        })
    })
}

/// `φ(D)[P]`, optionally normalized to a monic image.
#[no_mangle]
pub unsafe extern "C" fn lpo_op_apply(
    phi: *const c_char,
    poly: *const c_char,
    normalized: bool,
    out: *mut *mut c_char,
) -> LpoStatus {
    guard(|| {
        clear(out);
        write_json(out, &api::op_apply(&json(phi)?, &json(poly)?, None, normalized)?)?;
        Ok(LpoStatus::LpoOk)
    })
}

/// `φ(D)[xⁿ]`.
#[no_mangle]
pub unsafe extern "C" fn lpo_op_appell(
    phi: *const c_char,
    n: usize,
    normalized: bool,
    mode: LpoMode,
    out: *mut *mut c_char,
) -> LpoStatus {
    guard(|| {
        clear(out);
        write_json(out, &api::op_appell(&json(phi)?, n, normalized, mode.into())?)?;
        Ok(LpoStatus::LpoOk)
    })
}

/// `(1 - λD) e^{λD} P`; `lambda` is a number string such as `"-3/2"`.
#[no_mangle]
pub unsafe extern "C" fn lpo_op_shift_pencil(
    poly: *const c_char,
    lambda: *const c_char,
    out: *mut *mut c_char,
) -> LpoStatus {
    guard(|| {
        clear(out);
        let lambda = Value::String(text(lambda)?.into());
        write_json(out, &api::op_shift_pencil(&json(poly)?, &lambda)?)?;
        Ok(LpoStatus::LpoOk)
    })
}

/// CSV of pencil roots and partial sums on `points` values of λ in
/// `[-half_width, half_width]`.
#[no_mangle]
pub unsafe extern "C" fn lpo_pencil_scan_csv(
    poly: *const c_char,
    half_width: f64,
    points: usize,
    out: *mut *mut c_char,
) -> LpoStatus {
    guard(|| {
        clear(out);
        write_string(out, api::pencil_scan_csv(&json(poly)?, half_width, points)?)?;
        Ok(LpoStatus::LpoOk)
    })
}
