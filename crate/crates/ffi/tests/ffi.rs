use std::ffi::{CStr, CString};
use std::ptr;

use goodpair_ffi::*;

fn parse(text: &str) -> *mut GpDigraph {
    let c = CString::new(text).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { gp_digraph_parse(c.as_ptr(), &mut d) }, GpStatus::Ok);
    d
}

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    gp_string_free(s);
    out
}

const K3: &str = "3\n0 1\n0 2\n1 0\n1 2\n2 0\n2 1\n";

#[test]
fn find_serialize_and_verify() {
    unsafe {
        let d = parse(K3);
        assert_eq!(gp_digraph_order(d), 3);
        let mut cert = ptr::null_mut();
        assert_eq!(gp_find_good_pair(d, 1, 2, 0, &mut cert), GpStatus::Ok);
        let (mut r_out, mut r_in) = (9, 9);
        assert_eq!(gp_cert_roots(cert, &mut r_out, &mut r_in), GpStatus::Ok);
        assert_eq!((r_out, r_in), (1, 2));
        assert_eq!(gp_verify(d, cert), GpStatus::Ok);

        let mut json = ptr::null_mut();
        assert_eq!(gp_cert_to_json(cert, &mut json), GpStatus::Ok);
        let text = CString::new(take_string(json)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(gp_cert_from_json(text.as_ptr(), &mut back), GpStatus::Ok);
        assert_eq!(gp_verify(d, back), GpStatus::Ok);

        let c3 = parse("3\n0 1\n1 2\n2 0\n");
        assert_eq!(gp_verify(c3, back), GpStatus::None);
        assert!(!gp_last_error().is_null());

        let mut d6 = ptr::null_mut();
        assert_eq!(gp_digraph_serialize(d, GpFormat::Digraph6, &mut d6), GpStatus::Ok);
        let d6 = take_string(d6);
        let again = parse(&d6);
        assert_eq!(gp_digraph_arc_count(again), 6);

        for h in [cert, back] {
            gp_cert_free(h);
        }
        for h in [d, c3, again] {
            gp_digraph_free(h);
        }
    }
}

#[test]
fn none_and_inconclusive() {
    unsafe {
        let c3 = parse("3\n0 1\n1 2\n2 0\n");
        let mut cert = ptr::null_mut();
        assert_eq!(gp_find_good_pair(c3, -1, -1, 0, &mut cert), GpStatus::None);
        assert!(cert.is_null());
        let mut trace = ptr::null_mut();
        assert_eq!(gp_reduce(c3, 0, &mut cert, &mut trace), GpStatus::None);
        assert!(take_string(trace).contains("exact-fallback"));
        gp_digraph_free(c3);

        let mut rows = String::from("9\n");
        for u in 0..9 {
            for v in [(u + 1) % 9, (u + 2) % 9, (u + 4) % 9] {
                rows.push_str(&format!("{u} {v}\n"));
            }
        }
        let d = parse(&rows);
        assert_eq!(gp_find_good_pair(d, 3, 5, 1, &mut cert), GpStatus::Inconclusive);
        assert!(cert.is_null());
        assert_eq!(gp_reduce(d, 0, &mut cert, ptr::null_mut()), GpStatus::Ok);
        assert_eq!(gp_verify(d, cert), GpStatus::Ok);
        gp_cert_free(cert);
        gp_digraph_free(d);
    }
}

#[test]
fn bad_input() {
    unsafe {
        let d = parse(K3);
        let mut cert = ptr::null_mut();
        assert_eq!(gp_find_good_pair(d, 7, -1, 0, &mut cert), GpStatus::InvalidInput);
        let bad = CString::new("{\"n\": 2}").unwrap();
        assert_eq!(gp_cert_from_json(bad.as_ptr(), &mut cert), GpStatus::InvalidInput);
        assert_eq!(gp_find_good_pair(d, -1, -1, 0, ptr::null_mut()), GpStatus::NullPointer);
        gp_digraph_free(d);
    }
}

#[test]
fn header_declares_every_function() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/goodpair.h")).unwrap();
    for f in [
        "gp_last_error",
        "gp_digraph_parse",
        "gp_digraph_free",
        "gp_digraph_order",
        "gp_digraph_arc_count",
        "gp_digraph_serialize",
        "gp_arc_connectivity",
        "gp_find_good_pair",
        "gp_reduce",
        "gp_verify",
        "gp_cert_to_json",
        "gp_cert_from_json",
        "gp_cert_roots",
        "gp_cert_free",
        "gp_string_free",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct GpDigraph GpDigraph;"));
    assert!(header.contains("GP_STATUS_INCONCLUSIVE = 2"));
}
