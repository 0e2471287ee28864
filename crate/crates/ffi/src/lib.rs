//! C ABI for the goodness checker.
//!
//! Reports are opaque handles owned by the caller and released with
//! `nilgood_report_free`. Strings returned as `char *` are released with
//! `nilgood_string_free`. Every entry point returns a status code; the
//! message of the last failure on the calling thread is available from
//! `nilgood_last_error_message`. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nilgood::lie::{ClassicalType, Family, DEFAULT_MAX_RANK};
use nilgood::nilpotent::{enumerate_partitions, Partition};
use nilgood::report::to_json;
use nilgood::{check_orbit, CheckOptions, Error, GoodnessReport, Verdict};

/// Status codes; the nonzero values follow the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilgoodStatus {
    Ok = 0,
    /// Null pointer or non-UTF-8 string argument.
    NullOrInvalidArgument = 1,
    /// Bad type, rank or partition.
    InputError = 2,
    /// Internal consistency failure, cache or I/O error.
    StructuralError = 3,
    TimeBudgetExceeded = 4,
    /// A panic was caught at the boundary.
    Panic = 5,
}

/// Verdict codes; equal to the command-line exit code of `check`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilgoodVerdict {
    GoodCertified = 0,
    LikelyNotGood = 10,
    NotCertifiedStandard = 11,
}

/// Run settings; obtain defaults from `nilgood_default_options`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct NilgoodOptions {
    pub seed: u64,
    pub trials: u32,
    /// Zero disables the generating-sequence search.
    pub search_budget: u32,
    /// Zero is unlimited.
    pub time_budget_secs: u64,
}

/// Opaque report handle.
pub struct NilgoodReport {
    report: GoodnessReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> NilgoodStatus {
    match err {
        Error::Config(_) | Error::Validation(_) => NilgoodStatus::InputError,
        Error::TimeBudget(_) => NilgoodStatus::TimeBudgetExceeded,
        Error::Contract(_) | Error::Structural(_) | Error::Cache(_) | Error::Io(_) => {
            NilgoodStatus::StructuralError
        }
    }
}

/// Runs `f`, recording failures and converting panics.
fn guarded(f: impl FnOnce() -> Result<(), (NilgoodStatus, String)>) -> NilgoodStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            NilgoodStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            NilgoodStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (NilgoodStatus, String) {
    (status_of(&e), e.to_string())
}

fn arg_err(msg: &str) -> (NilgoodStatus, String) {
    (NilgoodStatus::NullOrInvalidArgument, msg.to_string())
}

fn parse_type(letter: c_char, rank: u32) -> Result<ClassicalType, (NilgoodStatus, String)> {
    let letter = (letter as u8 as char).to_string();
    let family: Family = letter.parse().map_err(lib_err)?;
    let ty = ClassicalType::new(family, rank as usize).map_err(lib_err)?;
    if ty.rank > DEFAULT_MAX_RANK {
        return Err((
            NilgoodStatus::InputError,
            format!(
                "rank {} exceeds the supported bound {DEFAULT_MAX_RANK}",
                ty.rank
            ),
        ));
    }
    Ok(ty)
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (NilgoodStatus, String)> {
    if s.is_null() {
        return Err(arg_err(&format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| arg_err(&format!("{what} is not UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Default settings: seed 0, 8 trials, search budget 32, no time limit.
#[no_mangle]
pub extern "C" fn nilgood_default_options() -> NilgoodOptions {
    let d = CheckOptions::default();
    NilgoodOptions {
        seed: d.seed,
        trials: d.trials,
        search_budget: d.search_budget,
        time_budget_secs: d.time_budget_secs,
    }
}

/// Checks the orbit of `partition` (e.g. "5,3,2,2") in the algebra of type
/// `type_letter` ('A'..'D') and `rank`. On success stores a new handle in
/// `*out`; on failure `*out` is set to null.
///
/// # Safety
/// `partition` must be a NUL-terminated string, `options` null or valid,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nilgood_check(
    type_letter: c_char,
    rank: u32,
    partition: *const c_char,
    options: *const NilgoodOptions,
    out: *mut *mut NilgoodReport,
) -> NilgoodStatus {
    guarded(|| {
        if out.is_null() {
            return Err(arg_err("out is null"));
        }
        *out = ptr::null_mut();
        let ty = parse_type(type_letter, rank)?;
        let p: Partition = read_str(partition, "partition")?.parse().map_err(lib_err)?;
        p.validate_for(ty).map_err(lib_err)?;
        let o = if options.is_null() {
            nilgood_default_options()
        } else {
            *options
        };
        let opts = CheckOptions {
            seed: o.seed,
            trials: o.trials,
            search_budget: o.search_budget,
            time_budget_secs: o.time_budget_secs,
            ..CheckOptions::default()
        };
        let report = check_orbit(ty, &p, &opts, None).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(NilgoodReport { report }));
        Ok(())
    })
}

/// Releases a report; null is ignored.
///
/// # Safety
/// `report` must be null or a handle from `nilgood_check` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nilgood_report_free(report: *mut NilgoodReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle.
unsafe fn get<'a>(report: *const NilgoodReport) -> Option<&'a GoodnessReport> {
    report.as_ref().map(|r| &r.report)
}

/// Verdict of the report; `GoodCertified` is never returned for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nilgood_report_verdict(report: *const NilgoodReport) -> NilgoodVerdict {
    match get(report).map(|r| r.verdict) {
        Some(Verdict::GoodCertified) => NilgoodVerdict::GoodCertified,
        Some(Verdict::NotCertifiedStandard) | None => NilgoodVerdict::NotCertifiedStandard,
        Some(Verdict::LikelyNotGood { .. }) => NilgoodVerdict::LikelyNotGood,
    }
}

/// `dim g^e`, or 0 for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nilgood_report_dim_ge(report: *const NilgoodReport) -> u32 {
    get(report).map_or(0, |r| r.dim_ge as u32)
}

/// `(dim g^e + rank)/2`, or 0 for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nilgood_report_bound(report: *const NilgoodReport) -> u32 {
    get(report).map_or(0, |r| r.bound)
}

/// Sum of the reported initial degrees, or 0 for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nilgood_report_degree_sum(report: *const NilgoodReport) -> u32 {
    get(report).map_or(0, |r| r.independence.degree_sum)
}

/// Copies up to `len` initial degrees into `buf` and returns the rank, so
/// a call with `len = 0` sizes the buffer.
///
/// # Safety
/// `report` must be null or a live handle; `buf` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn nilgood_report_degrees(
    report: *const NilgoodReport,
    buf: *mut u32,
    len: usize,
) -> usize {
    let Some(r) = get(report) else { return 0 };
    if !buf.is_null() {
        for (i, &d) in r.degrees.iter().take(len).enumerate() {
            *buf.add(i) = d;
        }
    }
    r.degrees.len()
}

/// Report as JSON, identical to `check --output json`; null on failure.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nilgood_report_to_json(report: *const NilgoodReport) -> *mut c_char {
    let Some(r) = get(report) else {
        set_error("report is null");
        return ptr::null_mut();
    };
    match to_json(r) {
        Ok(s) => into_c_string(s),
        Err(e) => {
            set_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// Stores a JSON array of the orbit labels of the algebra in `*out`, in
/// enumeration order.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nilgood_orbit_list(
    type_letter: c_char,
    rank: u32,
    out: *mut *mut c_char,
) -> NilgoodStatus {
    guarded(|| {
        if out.is_null() {
            return Err(arg_err("out is null"));
        }
        *out = ptr::null_mut();
        let ty = parse_type(type_letter, rank)?;
        let json = to_json(&enumerate_partitions(ty)).map_err(lib_err)?;
        *out = into_c_string(json);
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nilgood_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn nilgood_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn nilgood_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
