//! C ABI over the `goodpair` library.
//!
//! Digraphs and certificates are opaque heap handles released with their
//! `_free` functions. Strings returned through out-parameters are owned by
//! the caller and released with [`gp_string_free`]. Every call returns a
//! [`GpStatus`]; after a failure [`gp_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use goodpair::constructions::{reduce_and_lift_with, ReduceOptions};
use goodpair::solver::{find_good_pair_exact, ExactOutcome, SearchOptions};
use goodpair::{arc_connectivity, parse_digraph, serialize_digraph, verify_good_pair, Digraph, Format, GoodPairCert};

/// Result codes. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpStatus {
    /// Success, or a good pair was found.
    Ok = 0,
    /// Definitive negative answer: no good pair, or a certificate that
    /// does not verify.
    None = 1,
    /// The node budget ran out before a decision.
    Inconclusive = 2,
    /// Malformed text, bad vertex, unsupported order.
    InvalidInput = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// Internal failure; the library caught a panic.
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpFormat {
    EdgeList = 0,
    Digraph6 = 1,
}

/// Opaque digraph handle.
pub struct GpDigraph(Digraph);

/// Opaque good-pair certificate handle.
pub struct GpCert(GoodPairCert);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: GpStatus, msg: impl Into<String>) -> GpStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> GpStatus) -> GpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(GpStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, GpStatus> {
    if text.is_null() {
        return Err(fail(GpStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(GpStatus::InvalidInput, "string is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn outcome_status(o: &ExactOutcome) -> GpStatus {
    match o {
        ExactOutcome::Found(_) => GpStatus::Ok,
        ExactOutcome::NoneExists => GpStatus::None,
        ExactOutcome::Inconclusive => GpStatus::Inconclusive,
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn gp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses edge-list or digraph6 text, sniffed from the first character.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_digraph_parse(text: *const c_char, out: *mut *mut GpDigraph) -> GpStatus {
    guard(|| {
        if out.is_null() {
            return fail(GpStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_digraph(text, Format::sniff(text)) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(GpDigraph(d)));
                GpStatus::Ok
            }
            Err(e) => fail(GpStatus::InvalidInput, e.to_string()),
        }
    })
}

/// # Safety
/// `d` must be null or a handle from [`gp_digraph_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gp_digraph_free(d: *mut GpDigraph) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gp_digraph_order(d: *const GpDigraph) -> usize {
    d.as_ref().map_or(0, |d| d.0.order())
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gp_digraph_arc_count(d: *const GpDigraph) -> usize {
    d.as_ref().map_or(0, |d| d.0.arc_count())
}

/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_digraph_serialize(d: *const GpDigraph, format: GpFormat, out: *mut *mut c_char) -> GpStatus {
    guard(|| {
        let (Some(d), false) = (d.as_ref(), out.is_null()) else {
            return fail(GpStatus::NullPointer, "null argument");
        };
        let f = match format {
            GpFormat::EdgeList => Format::EdgeList,
            GpFormat::Digraph6 => Format::Digraph6,
        };
        *out = into_c_string(serialize_digraph(&d.0, f));
        GpStatus::Ok
    })
}

/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_arc_connectivity(d: *const GpDigraph, out: *mut usize) -> GpStatus {
    guard(|| {
        let (Some(d), false) = (d.as_ref(), out.is_null()) else {
            return fail(GpStatus::NullPointer, "null argument");
        };
        match arc_connectivity(&d.0) {
            Ok((lambda, _)) => {
                *out = lambda;
                GpStatus::Ok
            }
            Err(e) => fail(GpStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Exact search. A negative root leaves that root free; a zero budget uses
/// the library default. On [`GpStatus::Ok`] a certificate is stored in
/// `out`, otherwise `out` is set to null.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_find_good_pair(
    d: *const GpDigraph,
    root_out: i64,
    root_in: i64,
    budget: u64,
    out: *mut *mut GpCert,
) -> GpStatus {
    guard(|| {
        let (Some(d), false) = (d.as_ref(), out.is_null()) else {
            return fail(GpStatus::NullPointer, "null argument");
        };
        *out = ptr::null_mut();
        let mut opts = SearchOptions {
            root_out: usize::try_from(root_out).ok(),
            root_in: usize::try_from(root_in).ok(),
            ..SearchOptions::default()
        };
        if budget > 0 {
            opts = opts.budget(budget);
        }
        match find_good_pair_exact(&d.0, opts) {
            Ok(search) => {
                let status = outcome_status(&search.outcome);
                if let Some(c) = search.outcome.into_cert() {
                    *out = Box::into_raw(Box::new(GpCert(c)));
                }
                status
            }
            Err(e) => fail(GpStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Reduction pipeline. The trace, one JSON object per line, is stored in
/// `trace` when it is non-null.
///
/// # Safety
/// `d` must be a live handle, `out` a valid pointer, `trace` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gp_reduce(
    d: *const GpDigraph,
    budget: u64,
    out: *mut *mut GpCert,
    trace: *mut *mut c_char,
) -> GpStatus {
    guard(|| {
        let (Some(d), false) = (d.as_ref(), out.is_null()) else {
            return fail(GpStatus::NullPointer, "null argument");
        };
        let mut opts = ReduceOptions::default();
        if budget > 0 {
            opts.node_budget = budget;
        }
        let r = reduce_and_lift_with(&d.0, opts);
        if !trace.is_null() {
            *trace = into_c_string(r.trace.to_json_lines());
        }
        let status = outcome_status(&r.outcome);
        *out = r
            .outcome
            .into_cert()
            .map_or(ptr::null_mut(), |c| Box::into_raw(Box::new(GpCert(c))));
        status
    })
}

/// [`GpStatus::Ok`] when the certificate is a good pair of `d`,
/// [`GpStatus::None`] with a reason in [`gp_last_error`] otherwise.
///
/// # Safety
/// `d` and `cert` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn gp_verify(d: *const GpDigraph, cert: *const GpCert) -> GpStatus {
    guard(|| {
        let (Some(d), Some(c)) = (d.as_ref(), cert.as_ref()) else {
            return fail(GpStatus::NullPointer, "null argument");
        };
        match verify_good_pair(&d.0, &c.0) {
            Ok(()) => GpStatus::Ok,
            Err(e) => fail(GpStatus::None, e.to_string()),
        }
    })
}

/// # Safety
/// `cert` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_cert_to_json(cert: *const GpCert, out: *mut *mut c_char) -> GpStatus {
    guard(|| {
        let (Some(c), false) = (cert.as_ref(), out.is_null()) else {
            return fail(GpStatus::NullPointer, "null argument");
        };
        *out = into_c_string(c.0.to_json());
        GpStatus::Ok
    })
}

/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_cert_from_json(text: *const c_char, out: *mut *mut GpCert) -> GpStatus {
    guard(|| {
        if out.is_null() {
            return fail(GpStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match GoodPairCert::from_json(text) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(GpCert(c)));
                GpStatus::Ok
            }
            Err(e) => fail(GpStatus::InvalidInput, e.to_string()),
        }
    })
}

/// # Safety
/// `cert` must be a live handle; `root_out` and `root_in` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn gp_cert_roots(cert: *const GpCert, root_out: *mut usize, root_in: *mut usize) -> GpStatus {
    guard(|| {
        let (Some(c), false, false) = (cert.as_ref(), root_out.is_null(), root_in.is_null()) else {
            return fail(GpStatus::NullPointer, "null argument");
        };
        (*root_out, *root_in) = c.0.roots();
        GpStatus::Ok
    })
}

/// # Safety
/// `cert` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gp_cert_free(cert: *mut GpCert) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> *mut GpDigraph {
        let c = CString::new(text).unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(unsafe { gp_digraph_parse(c.as_ptr(), &mut d) }, GpStatus::Ok);
        d
    }

    #[test]
    fn parse_error_sets_message() {
        let c = CString::new("3\n0 7\n").unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(unsafe { gp_digraph_parse(c.as_ptr(), &mut d) }, GpStatus::InvalidInput);
        assert!(d.is_null());
        let msg = unsafe { CStr::from_ptr(gp_last_error()) }.to_str().unwrap();
        assert!(msg.contains('7'), "{msg}");
    }

    #[test]
    fn null_arguments() {
        let mut lambda = 0;
        assert_eq!(unsafe { gp_arc_connectivity(ptr::null(), &mut lambda) }, GpStatus::NullPointer);
        assert_eq!(unsafe { gp_digraph_parse(ptr::null(), &mut ptr::null_mut()) }, GpStatus::NullPointer);
        assert_eq!(unsafe { gp_digraph_order(ptr::null()) }, 0);
        unsafe {
            gp_digraph_free(ptr::null_mut());
            gp_cert_free(ptr::null_mut());
            gp_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn lambda_of_c3() {
        let d = parse("3\n0 1\n1 2\n2 0\n");
        let mut lambda = 9;
        unsafe {
            assert_eq!(gp_arc_connectivity(d, &mut lambda), GpStatus::Ok);
            assert_eq!(lambda, 1);
            assert_eq!(gp_digraph_arc_count(d), 3);
            gp_digraph_free(d);
        }
    }
}
