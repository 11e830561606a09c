use std::ffi::{CStr, CString};
use std::ptr;

use khi_ffi::*;

fn named(name: &str) -> *mut KhiDiagram {
    let name = CString::new(name).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { khi_diagram_named(name.as_ptr(), &mut d) }, KhiStatus::Ok);
    assert!(!d.is_null());
    d
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(khi_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn trefoil_invariants() {
    let d = named("3_1");
    assert_eq!(unsafe { khi_diagram_crossings(d) }, 3);
    let mut out = KhiInvariants::default();
    assert_eq!(unsafe { khi_s_invariants(d, 20, &mut out) }, KhiStatus::Ok);
    assert_eq!((out.s_lower, out.s_upper, out.s_classic), (2, 2, 2));
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { khi_diagram_mirror(d, &mut m) }, KhiStatus::Ok);
    assert_eq!(unsafe { khi_s_invariants(m, 20, &mut out) }, KhiStatus::Ok);
    assert_eq!((out.s_lower, out.s_upper), (-2, -2));
    unsafe {
        khi_diagram_free(m);
        khi_diagram_free(d);
    }
}

#[test]
fn m9_46_splits_s() {
    let d = named("m9_46");
    let mut out = KhiInvariants::default();
    assert_eq!(unsafe { khi_s_invariants(d, 20, &mut out) }, KhiStatus::Ok);
    assert_eq!((out.s_lower, out.s_upper, out.w, out.r), (0, 2, 3, 8));
    unsafe { khi_diagram_free(d) };
}

#[test]
fn homology_json_and_text() {
    let d = named("3_1");
    let mut s = ptr::null_mut();
    let st = unsafe { khi_homology(d, KhiTheory::Bn, KhiVariant::Reduced, true, true, 20, &mut s) };
    assert_eq!(st, KhiStatus::Ok);
    let json = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { khi_string_free(s) };
    assert!(json.contains("\"schema\":1"), "{json}");
    assert!(json.contains("\"free\":[[0,2],[1,2]]"), "{json}");
    let st = unsafe { khi_homology(d, KhiTheory::Kh, KhiVariant::Unreduced, false, false, 20, &mut s) };
    assert_eq!(st, KhiStatus::Ok);
    assert!(!unsafe { CStr::from_ptr(s) }.to_bytes().is_empty());
    unsafe {
        khi_string_free(s);
        khi_diagram_free(d);
    }
}

#[test]
fn error_codes() {
    let mut d = ptr::null_mut();
    let bad = CString::new("x a + u:1,2 o:3\n").unwrap();
    assert_eq!(unsafe { khi_diagram_parse(bad.as_ptr(), &mut d) }, KhiStatus::InvalidDiagram);
    assert!(d.is_null());
    assert!(!last_error().is_empty());
    let unknown = CString::new("8_19").unwrap();
    assert_eq!(unsafe { khi_diagram_named(unknown.as_ptr(), &mut d) }, KhiStatus::InvalidDiagram);
    assert!(last_error().contains("8_19"));
    assert_eq!(unsafe { khi_diagram_named(ptr::null(), &mut d) }, KhiStatus::NullPointer);
    assert_eq!(unsafe { khi_diagram_crossings(ptr::null()) }, -1);

    let t = named("7_1");
    let mut out = KhiInvariants::default();
    assert_eq!(unsafe { khi_s_invariants(t, 3, &mut out) }, KhiStatus::ResourceLimit);
    assert!(last_error().contains('3'));
    let mut s = ptr::null_mut();
    let st = unsafe { khi_homology(t, KhiTheory::Bn, KhiVariant::Reduced, true, true, 3, &mut s) };
    assert_eq!(st, KhiStatus::ResourceLimit);
    assert!(s.is_null());
    unsafe { khi_diagram_free(t) };
}

#[test]
fn parse_round_trip() {
    let text = CString::new(std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/unknot.sik")).unwrap()).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { khi_diagram_parse(text.as_ptr(), &mut d) }, KhiStatus::Ok);
    assert_eq!(unsafe { khi_diagram_crossings(d) }, 0);
    unsafe { khi_diagram_free(d) };
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/khi.h")).unwrap();
    for sym in ["khi_diagram_parse", "khi_s_invariants", "khi_homology", "khi_last_error", "KhiInvariants"] {
        assert!(h.contains(sym), "{sym} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(format!("{dir}/include"))
        .arg(format!("{dir}/tests/smoke.c"))
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success());
}
