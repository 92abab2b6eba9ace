//! C ABI over the core library.
//!
//! Groups travel as opaque handles; results travel as JSON strings (the
//! same payloads the CLI prints) so callers never see Rust layouts.
//! Every entry point returns a status code, never unwinds, and tolerates
//! null pointers.  Strings returned through out-parameters are owned by
//! the caller and must be released with `wb_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use weightbench_core::alperin::{alternating_sum_report, check_alperin, check_equivariant};
use weightbench_core::error::Error;
use weightbench_core::group::PermGroup;
use weightbench_core::io::{parse_automorphism, parse_group, parse_pair_spec};
use weightbench_core::kstar::CyclicData;

/// Status code for every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WbStatus {
    Ok = 0,
    /// null pointer, non-UTF-8 text, or an out-parameter missing
    InvalidArgument = 1,
    /// malformed group / automorphism / pair text
    ParseError = 2,
    /// an element or chain cap was exceeded
    CapExceeded = 3,
    NotAnAutomorphism = 4,
    /// bad prime, coprimality failure, or another checked precondition
    PreconditionViolated = 5,
    InternalError = 6,
}

/// Opaque handle to a loaded permutation group.
pub struct WbGroup {
    inner: PermGroup,
}

fn status_of(err: &Error) -> WbStatus {
    match err {
        Error::Parse { .. } | Error::Io(_) => WbStatus::ParseError,
        Error::CapExceeded { .. }
        | Error::ChainCapExceeded { .. }
        | Error::PlaceSelectionFailure { .. } => WbStatus::CapExceeded,
        Error::NotAnAutomorphism(_) | Error::NotAHomomorphism => WbStatus::NotAnAutomorphism,
        Error::InvalidPrime(_)
        | Error::NotASubgroup(_)
        | Error::NotNormal
        | Error::PreconditionViolated(_) => WbStatus::PreconditionViolated,
        Error::PairingFailure => WbStatus::InternalError,
    }
}

/// Runs a closure producing a JSON string, catching panics and writing
/// the result through the out-parameter.
fn run_json<F>(out: *mut *mut c_char, f: F) -> WbStatus
where
    F: FnOnce() -> Result<String, Error>,
{
    if out.is_null() {
        return WbStatus::InvalidArgument;
    }
    unsafe { *out = std::ptr::null_mut() };
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(json)) => match CString::new(json) {
            Ok(s) => {
                unsafe { *out = s.into_raw() };
                WbStatus::Ok
            }
            Err(_) => WbStatus::InternalError,
        },
        Ok(Err(e)) => status_of(&e),
        Err(_) => WbStatus::InternalError,
    }
}

unsafe fn str_arg<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

/// Parse a group from `degree N` + cycle-notation text (same format as
/// the CLI's .grp files).  On success `*out` owns the new handle.
#[no_mangle]
pub unsafe extern "C" fn wb_group_parse(
    text: *const c_char,
    cap_elements: usize,
    out: *mut *mut WbGroup,
) -> WbStatus {
    if out.is_null() {
        return WbStatus::InvalidArgument;
    }
    *out = std::ptr::null_mut();
    let Some(text) = str_arg(text) else {
        return WbStatus::InvalidArgument;
    };
    match catch_unwind(|| parse_group(text, cap_elements)) {
        Ok(Ok(group)) => {
            *out = Box::into_raw(Box::new(WbGroup { inner: group }));
            WbStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => WbStatus::InternalError,
    }
}

#[no_mangle]
pub unsafe extern "C" fn wb_group_free(group: *mut WbGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Group order, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn wb_group_order(group: *const WbGroup) -> u64 {
    group.as_ref().map_or(0, |g| g.inner.order() as u64)
}

/// Number of permuted points, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn wb_group_degree(group: *const WbGroup) -> u32 {
    group.as_ref().map_or(0, |g| g.inner.degree() as u32)
}

/// Brauer-count versus weight-count comparison; `*out` receives the JSON
/// report.
#[no_mangle]
pub unsafe extern "C" fn wb_alperin_check_json(
    group: *const WbGroup,
    prime: u64,
    out: *mut *mut c_char,
) -> WbStatus {
    let Some(g) = group.as_ref() else {
        return WbStatus::InvalidArgument;
    };
    run_json(out, || {
        let report = check_alperin(&g.inner, prime)?;
        Ok(serde_json::to_string(&report).expect("report serializes"))
    })
}

/// The three-way alternating-sum comparison; `*out` receives the JSON
/// report.
#[no_mangle]
pub unsafe extern "C" fn wb_alternating_sums_json(
    group: *const WbGroup,
    prime: u64,
    cap_chains: usize,
    out: *mut *mut c_char,
) -> WbStatus {
    let Some(g) = group.as_ref() else {
        return WbStatus::InvalidArgument;
    };
    run_json(out, || {
        let report = alternating_sum_report(&g.inner, prime, cap_chains)?;
        Ok(serde_json::to_string(&report).expect("report serializes"))
    })
}

/// Equivariant orbit-count comparison under the automorphism described
/// by `auto_text` (same format as the CLI's .auto files).
#[no_mangle]
pub unsafe extern "C" fn wb_equivariant_check_json(
    group: *const WbGroup,
    prime: u64,
    auto_text: *const c_char,
    out: *mut *mut c_char,
) -> WbStatus {
    let Some(g) = group.as_ref() else {
        return WbStatus::InvalidArgument;
    };
    let Some(auto_text) = str_arg(auto_text) else {
        return WbStatus::InvalidArgument;
    };
    run_json(out, || {
        let alpha = parse_automorphism(auto_text, &g.inner)?;
        let report = check_equivariant(&g.inner, prime, &alpha)?;
        Ok(serde_json::to_string(&report).expect("report serializes"))
    })
}

/// Exhaustive fixed-rank bucket sweep for the cyclic order `m`; pass
/// `prime = 0` to skip the coprimality requirement.
#[no_mangle]
pub unsafe extern "C" fn wb_cyclic_sweep_json(
    m: u64,
    prime: u64,
    out: *mut *mut c_char,
) -> WbStatus {
    run_json(out, || {
        let data = CyclicData::new(m, (prime != 0).then_some(prime))?;
        Ok(serde_json::to_string(&data.bucket_sweep()).expect("report serializes"))
    })
}

/// Fixed-rank comparison of the two twisted subgroups described by
/// `spec_text` (two lines of `t u` pairs, as for the CLI's --spec).
#[no_mangle]
pub unsafe extern "C" fn wb_pair_ranks_json(
    m: u64,
    prime: u64,
    spec_text: *const c_char,
    out: *mut *mut c_char,
) -> WbStatus {
    let Some(spec_text) = str_arg(spec_text) else {
        return WbStatus::InvalidArgument;
    };
    run_json(out, || {
        let data = CyclicData::new(m, (prime != 0).then_some(prime))?;
        let (first, second) = parse_pair_spec(spec_text, &data)?;
        let report = data.verify_pair_ranks(&first, &second)?;
        Ok(serde_json::to_string(&report).expect("report serializes"))
    })
}

/// Release a string returned through any `*_json` out-parameter.
#[no_mangle]
pub unsafe extern "C" fn wb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
