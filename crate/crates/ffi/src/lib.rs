//! C ABI for `integen`.
//!
//! Objects are opaque handles created and destroyed by this library.
//! Every fallible call returns an [`IntegenStatus`]; on failure a message
//! is kept per thread and can be fetched with
//! [`integen_last_error_message`]. Strings handed out by the library are
//! NUL-terminated UTF-8 and must be released with [`integen_string_free`].
//! Panics never cross the boundary; they surface as
//! `INTEGEN_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use integen::dataset::{from_prefix, read_jsonl, write_jsonl, Record};
use integen::generator::{generate, ExtensionChoice, GenConfig, IntegrablePair, Method};
use integen::verifier::{verify_dataset, verify_exprs};
use integen::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegenStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    InvalidConfig = 4,
    Parse = 5,
    Generation = 6,
    Math = 7,
    OutOfRange = 8,
    Internal = 9,
    Panic = 10,
}

/// Generator settings.
pub struct IntegenConfig {
    inner: GenConfig,
    /// Explicitly set arctangent flag; otherwise derived from the extension.
    arctan: Option<bool>,
}

/// Generated pairs, in index order.
pub struct IntegenDataset {
    records: Vec<Record>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Outcome<T> = Result<T, (IntegenStatus, String)>;

fn status_of(e: &Error) -> IntegenStatus {
    match e {
        Error::InvalidConfig(_) => IntegenStatus::InvalidConfig,
        Error::Parse { .. } => IntegenStatus::Parse,
        Error::Generation(_) => IntegenStatus::Generation,
        Error::Internal(_) => IntegenStatus::Internal,
        _ => IntegenStatus::Math,
    }
}

fn lift(e: Error) -> (IntegenStatus, String) {
    (status_of(&e), e.to_string())
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Outcome<()>) -> IntegenStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IntegenStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("panic: {msg}"));
            IntegenStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Outcome<&'a str> {
    if p.is_null() {
        return Err((IntegenStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (IntegenStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Outcome<&'a T> {
    p.as_ref().ok_or_else(|| (IntegenStatus::NullPointer, format!("{name} is null")))
}

unsafe fn handle_mut<'a, T>(p: *mut T, name: &str) -> Outcome<&'a mut T> {
    p.as_mut().ok_or_else(|| (IntegenStatus::NullPointer, format!("{name} is null")))
}

unsafe fn write_out<T>(out: *mut T, v: T, name: &str) -> Outcome<()> {
    if out.is_null() {
        return Err((IntegenStatus::NullPointer, format!("{name} is null")));
    }
    out.write(v);
    Ok(())
}

fn c_string(s: String) -> Outcome<*mut c_char> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (IntegenStatus::Internal, "string contains NUL".to_string()))
}

/// Version string of the library; static, do not free.
#[no_mangle]
pub extern "C" fn integen_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy of the last error message on this thread, or NULL when the last
/// call succeeded. Free with [`integen_string_free`].
#[no_mangle]
pub extern "C" fn integen_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(m) => CString::new(m.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn integen_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// New configuration with default settings and the given seed.
#[no_mangle]
pub extern "C" fn integen_config_new(seed: u64) -> *mut IntegenConfig {
    Box::into_raw(Box::new(IntegenConfig { inner: GenConfig::new(seed, None), arctan: None }))
}

#[no_mangle]
pub unsafe extern "C" fn integen_config_free(cfg: *mut IntegenConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// `poly`, `sqfree`, `hermite`, `mixed`, or NULL for the default mix.
#[no_mangle]
pub unsafe extern "C" fn integen_config_set_method(
    cfg: *mut IntegenConfig,
    method: *const c_char,
) -> IntegenStatus {
    guard(|| {
        let cfg = handle_mut(cfg, "cfg")?;
        cfg.inner.method = if method.is_null() {
            None
        } else {
            let m: Method = str_arg(method, "method")?
                .parse()
                .map_err(|e: Error| (IntegenStatus::InvalidArgument, e.to_string()))?;
            Some(m)
        };
        Ok(())
    })
}

/// `log`, `exp` or `random`.
#[no_mangle]
pub unsafe extern "C" fn integen_config_set_extension(
    cfg: *mut IntegenConfig,
    extension: *const c_char,
) -> IntegenStatus {
    guard(|| {
        let cfg = handle_mut(cfg, "cfg")?;
        let e: ExtensionChoice = str_arg(extension, "extension")?
            .parse()
            .map_err(|e: Error| (IntegenStatus::InvalidArgument, e.to_string()))?;
        cfg.inner.extension_kind = e;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn integen_config_set_tower_height(
    cfg: *mut IntegenConfig,
    height: usize,
) -> IntegenStatus {
    guard(|| {
        handle_mut(cfg, "cfg")?.inner.tower_height = height;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn integen_config_set_max_theta_degree(
    cfg: *mut IntegenConfig,
    degree: usize,
) -> IntegenStatus {
    guard(|| {
        handle_mut(cfg, "cfg")?.inner.max_theta_degree = degree;
        Ok(())
    })
}

/// Enables or disables arctangent factors. Unless set, they are used on
/// every extension choice except `exp`.
#[no_mangle]
pub unsafe extern "C" fn integen_config_set_arctan_factors(
    cfg: *mut IntegenConfig,
    enabled: bool,
) -> IntegenStatus {
    guard(|| {
        handle_mut(cfg, "cfg")?.arctan = Some(enabled);
        Ok(())
    })
}

fn effective(cfg: &IntegenConfig) -> GenConfig {
    let mut c = cfg.inner.clone();
    c.arctan_factors = cfg.arctan.unwrap_or(c.extension_kind != ExtensionChoice::Exp);
    c
}

/// Checks the configuration without generating anything.
#[no_mangle]
pub unsafe extern "C" fn integen_config_validate(cfg: *const IntegenConfig) -> IntegenStatus {
    guard(|| effective(handle(cfg, "cfg")?).validate().map_err(lift))
}

/// Generates `count` pairs into a new dataset written to `*out`.
#[no_mangle]
pub unsafe extern "C" fn integen_generate(
    cfg: *const IntegenConfig,
    count: usize,
    out: *mut *mut IntegenDataset,
) -> IntegenStatus {
    guard(|| {
        let cfg = effective(handle(cfg, "cfg")?);
        if out.is_null() {
            return Err((IntegenStatus::NullPointer, "out is null".into()));
        }
        let pairs: Vec<IntegrablePair> = generate(&cfg, count).map_err(lift)?;
        let records = pairs.iter().enumerate().map(|(i, p)| Record::from_pair(i as u64, p)).collect();
        write_out(out, Box::into_raw(Box::new(IntegenDataset { records })), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn integen_dataset_free(ds: *mut IntegenDataset) {
    if !ds.is_null() {
        drop(Box::from_raw(ds));
    }
}

/// Number of pairs, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn integen_dataset_len(ds: *const IntegenDataset) -> usize {
    ds.as_ref().map_or(0, |d| d.records.len())
}

/// Which string of a pair to fetch.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegenField {
    IntegrandInfix = 0,
    IntegralInfix = 1,
    /// Space-separated prefix tokens.
    IntegrandPrefix = 2,
    IntegralPrefix = 3,
    Method = 4,
    Tower = 5,
}

/// Copies a field of pair `index` into a new string at `*out`.
#[no_mangle]
pub unsafe extern "C" fn integen_dataset_get(
    ds: *const IntegenDataset,
    index: usize,
    field: IntegenField,
    out: *mut *mut c_char,
) -> IntegenStatus {
    guard(|| {
        let ds = handle(ds, "ds")?;
        let r = ds.records.get(index).ok_or_else(|| {
            (IntegenStatus::OutOfRange, format!("index {index} of {}", ds.records.len()))
        })?;
        let s = match field {
            IntegenField::IntegrandInfix => r.integrand_infix.clone(),
            IntegenField::IntegralInfix => r.integral_infix.clone(),
            IntegenField::IntegrandPrefix => r.integrand_prefix.join(" "),
            IntegenField::IntegralPrefix => r.integral_prefix.join(" "),
            IntegenField::Method => r.method.clone(),
            IntegenField::Tower => r.tower.clone(),
        };
        write_out(out, c_string(s)?, "out")
    })
}

/// The whole dataset as JSON Lines in a new string at `*out`.
#[no_mangle]
pub unsafe extern "C" fn integen_dataset_to_jsonl(
    ds: *const IntegenDataset,
    out: *mut *mut c_char,
) -> IntegenStatus {
    guard(|| {
        let ds = handle(ds, "ds")?;
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &ds.records).map_err(|e| (IntegenStatus::Internal, e.to_string()))?;
        let s = String::from_utf8(buf).map_err(|e| (IntegenStatus::Internal, e.to_string()))?;
        write_out(out, c_string(s)?, "out")
    })
}

/// Checks one pair given as space-separated prefix tokens and writes
/// whether the derivative of the integral equals the integrand.
#[no_mangle]
pub unsafe extern "C" fn integen_verify_prefix(
    integrand: *const c_char,
    integral: *const c_char,
    passed: *mut bool,
) -> IntegenStatus {
    guard(|| {
        let parse = |s: &str| {
            let toks: Vec<&str> = s.split_whitespace().collect();
            from_prefix(&toks).map_err(lift)
        };
        let f = parse(str_arg(integrand, "integrand")?)?;
        let g = parse(str_arg(integral, "integral")?)?;
        let report = verify_exprs(&f, &g).map_err(lift)?;
        write_out(passed, report.passed, "passed")
    })
}

/// Verifies every record of a JSON Lines document; unreadable records
/// count as failures.
#[no_mangle]
pub unsafe extern "C" fn integen_verify_jsonl(
    jsonl: *const c_char,
    passed: *mut usize,
    failed: *mut usize,
) -> IntegenStatus {
    guard(|| {
        let text = str_arg(jsonl, "jsonl")?;
        if passed.is_null() || failed.is_null() {
            return Err((IntegenStatus::NullPointer, "output counter is null".into()));
        }
        let records = read_jsonl(text.as_bytes()).map_err(|e| (IntegenStatus::Internal, e.to_string()))?;
        let pairs: Vec<_> = records.into_iter().map(|r| r.and_then(|r| r.exprs().map_err(|e| e.to_string()))).collect();
        let summary = verify_dataset(&pairs);
        write_out(passed, summary.passed, "passed")?;
        write_out(failed, summary.failed, "failed")
    })
}

/// Parses space-separated prefix tokens and writes the infix form of the
/// expression to `*out`.
#[no_mangle]
pub unsafe extern "C" fn integen_prefix_to_infix(
    tokens: *const c_char,
    out: *mut *mut c_char,
) -> IntegenStatus {
    guard(|| {
        let toks: Vec<&str> = str_arg(tokens, "tokens")?.split_whitespace().collect();
        let e = from_prefix(&toks).map_err(lift)?;
        write_out(out, c_string(e.to_infix())?, "out")
    })
}
