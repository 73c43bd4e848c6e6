// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! C ABI over `ccts-core`.
//!
//! Instances and search outcomes are opaque handles owned by the caller
//! and released with their `_free` function. Every fallible call returns a
//! [`CctsStatus`]; on failure `ccts_last_error_message` describes the
//! problem. Strings returned to the caller are NUL-terminated UTF-8 and
//! must be released with [`ccts_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ccts_core::json::parse_solution;
use ccts_core::ncl::parse_ncl;
use ccts_core::{
    parse_instance, reduction, solve_bfs, star, verify_sequence, Error, Instance, SearchOutcome, SwapSequence,
};

/// Opaque CCTS instance.
pub struct CctsInstance(Instance);

/// Opaque result of an exhaustive search.
pub struct CctsOutcome(SearchOutcome<SwapSequence>);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CctsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotStar = 4,
    LimitExceeded = 5,
    Panic = 6,
    OutOfRange = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CctsOutcomeKind {
    Solvable = 0,
    Unsolvable = 1,
    LimitExceeded = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let msg = CString::new(message.into().replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: CctsStatus, message: impl Into<String>) -> CctsStatus {
    set_error(message);
    status
}

fn status_of(e: &Error) -> CctsStatus {
    match e {
        Error::NotStar => CctsStatus::NotStar,
        Error::LimitExceeded { .. } => CctsStatus::LimitExceeded,
        _ => CctsStatus::Parse,
    }
}

/// Run `f`, turning a panic into [`CctsStatus::Panic`].
fn guard(f: impl FnOnce() -> CctsStatus) -> CctsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(CctsStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CctsStatus> {
    if s.is_null() {
        return Err(fail(CctsStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(CctsStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ccts_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn ccts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ccts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse an instance document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ccts_instance_parse(json: *const c_char, out: *mut *mut CctsInstance) -> CctsStatus {
    guard(|| {
        if out.is_null() {
            return fail(CctsStatus::NullArgument, "null output pointer");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_instance(text) {
            Ok(inst) => {
                *out = Box::into_raw(Box::new(CctsInstance(inst)));
                CctsStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `inst` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ccts_instance_free(inst: *mut CctsInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of base-graph vertices; 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ccts_instance_vertex_count(inst: *const CctsInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.n())
}

/// Number of colors; 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ccts_instance_color_count(inst: *const CctsInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.k())
}

/// Breadth-first search. Running out of budget is not an error: the
/// outcome reports it.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ccts_solve(
    inst: *const CctsInstance,
    max_states: usize,
    out: *mut *mut CctsOutcome,
) -> CctsStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else {
            return fail(CctsStatus::NullArgument, "null instance");
        };
        if out.is_null() {
            return fail(CctsStatus::NullArgument, "null output pointer");
        }
        *out = Box::into_raw(Box::new(CctsOutcome(solve_bfs(&inst.0, max_states))));
        CctsStatus::Ok
    })
}

/// # Safety
/// `outcome` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ccts_outcome_kind(outcome: *const CctsOutcome) -> CctsOutcomeKind {
    match outcome.as_ref().map(|o| &o.0) {
        Some(SearchOutcome::Solvable { .. }) => CctsOutcomeKind::Solvable,
        Some(SearchOutcome::Unsolvable { .. }) => CctsOutcomeKind::Unsolvable,
        _ => CctsOutcomeKind::LimitExceeded,
    }
}

/// # Safety
/// `outcome` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ccts_outcome_states_explored(outcome: *const CctsOutcome) -> usize {
    outcome.as_ref().map_or(0, |o| o.0.states_explored())
}

/// Witness length; 0 when there is no witness.
///
/// # Safety
/// `outcome` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ccts_outcome_witness_len(outcome: *const CctsOutcome) -> usize {
    outcome
        .as_ref()
        .and_then(|o| o.0.witness())
        .map_or(0, SwapSequence::len)
}

/// The `index`-th swap of the witness.
///
/// # Safety
/// `outcome` must be a live handle; `u` and `v` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ccts_outcome_witness_swap(
    outcome: *const CctsOutcome,
    index: usize,
    u: *mut usize,
    v: *mut usize,
) -> CctsStatus {
    let Some(o) = outcome.as_ref() else {
        return fail(CctsStatus::NullArgument, "null outcome");
    };
    if u.is_null() || v.is_null() {
        return fail(CctsStatus::NullArgument, "null output pointer");
    }
    match o.0.witness().and_then(|w| w.swaps().get(index)) {
        Some(&(a, b)) => {
            *u = a;
            *v = b;
            CctsStatus::Ok
        }
        None => fail(CctsStatus::OutOfRange, format!("no swap at index {index}")),
    }
}

/// Outcome as JSON; free with [`ccts_string_free`]. NULL for NULL.
///
/// # Safety
/// `outcome` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ccts_outcome_to_json(outcome: *const CctsOutcome) -> *mut c_char {
    outcome
        .as_ref()
        .map_or(ptr::null_mut(), |o| into_c_string(o.0.to_json()))
}

/// # Safety
/// `outcome` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ccts_outcome_free(outcome: *mut CctsOutcome) {
    if !outcome.is_null() {
        drop(Box::from_raw(outcome));
    }
}

/// Star swap-graph decision. `verdict_json` may be NULL; otherwise it
/// receives the verdict document.
///
/// # Safety
/// `inst` must be a live handle; `solvable` must be writable;
/// `verdict_json` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn ccts_decide_star(
    inst: *const CctsInstance,
    oracle_budget: usize,
    solvable: *mut bool,
    verdict_json: *mut *mut c_char,
) -> CctsStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else {
            return fail(CctsStatus::NullArgument, "null instance");
        };
        if solvable.is_null() {
            return fail(CctsStatus::NullArgument, "null output pointer");
        }
        match star::decide(&inst.0, oracle_budget) {
            Ok(v) => {
                *solvable = v.solvable;
                if !verdict_json.is_null() {
                    *verdict_json = into_c_string(v.to_json());
                }
                CctsStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Check a solution document against an instance.
///
/// # Safety
/// `inst` must be a live handle; `solution_json` a NUL-terminated string;
/// `valid` writable.
#[no_mangle]
pub unsafe extern "C" fn ccts_verify(
    inst: *const CctsInstance,
    solution_json: *const c_char,
    valid: *mut bool,
) -> CctsStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else {
            return fail(CctsStatus::NullArgument, "null instance");
        };
        if valid.is_null() {
            return fail(CctsStatus::NullArgument, "null output pointer");
        }
        let text = match read_str(solution_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_solution(text) {
            Ok((_, seq)) => {
                *valid = verify_sequence(&inst.0, &seq);
                CctsStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Reduce an NCL document. `layout_json` may be NULL; otherwise it
/// receives the gadget layout.
///
/// # Safety
/// `ncl_json` must be a NUL-terminated string; `out` writable;
/// `layout_json` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn ccts_ncl_reduce(
    ncl_json: *const c_char,
    cubic: bool,
    out: *mut *mut CctsInstance,
    layout_json: *mut *mut c_char,
) -> CctsStatus {
    guard(|| {
        if out.is_null() {
            return fail(CctsStatus::NullArgument, "null output pointer");
        }
        let text = match read_str(ncl_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let reduced = parse_ncl(text).and_then(|inst| reduction::reduce(&inst, cubic));
        match reduced {
            Ok(r) => {
                if !layout_json.is_null() {
                    *layout_json = into_c_string(r.layout.to_json());
                }
                *out = Box::into_raw(Box::new(CctsInstance(r.instance)));
                CctsStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}
