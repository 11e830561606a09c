//! C ABI over `khi`.
//!
//! Diagrams are opaque handles created by [`khi_diagram_parse`] or
//! [`khi_diagram_named`] and released with [`khi_diagram_free`]. Every call
//! returns a [`KhiStatus`]; on failure a message is kept per thread and can
//! be read with [`khi_last_error`]. Strings handed out by the library must
//! be released with [`khi_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use khi::cli::{module_to_json, render_table, Format};
use khi::coeffs::RingSpec;
use khi::complex::{build_involutive, build_variant, ComplexError, ConeMode, Variant};
use khi::diagram::{build_named, parse_diagram, InvolutiveDiagram};
use khi::homology::homology_graded;
use khi::invariants::{invariants, InvariantError};

/// Opaque diagram handle.
pub struct KhiDiagram(InvolutiveDiagram);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KhiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidDiagram = 3,
    ResourceLimit = 4,
    Computation = 5,
    Panic = 6,
}

/// `(𝔽₂, 0)`, `(𝔽₂[H], H)` or `(𝔽₂, 1)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KhiTheory {
    Kh = 0,
    Bn = 1,
    Bn1 = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KhiVariant {
    Unreduced = 0,
    Reduced = 1,
    Coreduced = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KhiInvariants {
    pub s_lower: i64,
    pub s_upper: i64,
    pub s_classic: i64,
    pub d_lower: u32,
    pub d_upper: u32,
    pub w: i64,
    pub r: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes stripped"));
}

fn fail(status: KhiStatus, msg: impl Into<String>) -> KhiStatus {
    set_error(msg);
    status
}

fn complex_status(e: &ComplexError) -> KhiStatus {
    match e {
        ComplexError::ResourceLimit { .. } => KhiStatus::ResourceLimit,
        _ => KhiStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> KhiStatus) -> KhiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(KhiStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, KhiStatus> {
    if p.is_null() {
        return Err(fail(KhiStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(KhiStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn publish(d: InvolutiveDiagram, out: *mut *mut KhiDiagram) -> KhiStatus {
    *out = Box::into_raw(Box::new(KhiDiagram(d)));
    KhiStatus::Ok
}

/// Parses `.sik` text into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn khi_diagram_parse(text: *const c_char, out: *mut *mut KhiDiagram) -> KhiStatus {
    guard(|| {
        if out.is_null() {
            return fail(KhiStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_diagram(text) {
            Ok(d) => publish(d, out),
            Err(e) => fail(KhiStatus::InvalidDiagram, e.to_string()),
        }
    })
}

/// Builds one of the bundled diagrams, e.g. `"3_1"`, `"mirror:m9_46"`,
/// `"torus2(5)+"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn khi_diagram_named(name: *const c_char, out: *mut *mut KhiDiagram) -> KhiStatus {
    guard(|| {
        if out.is_null() {
            return fail(KhiStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match build_named(name) {
            Ok(d) => publish(d, out),
            Err(e) => fail(KhiStatus::InvalidDiagram, e.to_string()),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn khi_diagram_free(d: *mut KhiDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of crossings, or -1 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn khi_diagram_crossings(d: *const KhiDiagram) -> i32 {
    match d.as_ref() {
        Some(d) => d.0.n_crossings() as i32,
        None => -1,
    }
}

/// Returns the mirror image as a new handle.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn khi_diagram_mirror(d: *const KhiDiagram, out: *mut *mut KhiDiagram) -> KhiStatus {
    guard(|| {
        let (Some(d), false) = (d.as_ref(), out.is_null()) else {
            return fail(KhiStatus::NullPointer, "null argument");
        };
        publish(d.0.mirror(), out)
    })
}

/// `(s̲, s̄, s)` with both extraction methods cross-checked.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn khi_s_invariants(d: *const KhiDiagram, cap: u32, out: *mut KhiInvariants) -> KhiStatus {
    guard(|| {
        let (Some(d), Some(out)) = (d.as_ref(), out.as_mut()) else {
            return fail(KhiStatus::NullPointer, "null argument");
        };
        match invariants(&d.0, cap as usize) {
            Ok(r) => {
                *out = KhiInvariants {
                    s_lower: r.s_lower,
                    s_upper: r.s_upper,
                    s_classic: r.s_classic,
                    d_lower: r.d_lower,
                    d_upper: r.d_upper,
                    w: r.w,
                    r: r.r,
                };
                KhiStatus::Ok
            }
            Err(InvariantError::Complex(e)) => fail(complex_status(&e), e.to_string()),
            Err(e) => fail(KhiStatus::Computation, e.to_string()),
        }
    })
}

/// Homology as a newly allocated string: JSON when `json` is true,
/// otherwise the text table.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn khi_homology(
    d: *const KhiDiagram,
    theory: KhiTheory,
    variant: KhiVariant,
    involutive: bool,
    json: bool,
    cap: u32,
    out: *mut *mut c_char,
) -> KhiStatus {
    guard(|| {
        let (Some(d), false) = (d.as_ref(), out.is_null()) else {
            return fail(KhiStatus::NullPointer, "null argument");
        };
        *out = ptr::null_mut();
        let ring = match theory {
            KhiTheory::Kh => RingSpec::F2H0,
            KhiTheory::Bn => RingSpec::F2HH,
            KhiTheory::Bn1 => RingSpec::F2H1,
        };
        let variant = match variant {
            KhiVariant::Unreduced => Variant::Unreduced,
            KhiVariant::Reduced => Variant::Reduced,
            KhiVariant::Coreduced => Variant::Coreduced,
        };
        let built = if involutive {
            build_involutive(&d.0, ring, ConeMode::Tau, variant, cap as usize)
        } else {
            build_variant(&d.0, ring, variant, cap as usize)
        };
        let c = match built {
            Ok(c) => c,
            Err(e) => return fail(complex_status(&e), e.to_string()),
        };
        let m = homology_graded(&c);
        let text = if json { module_to_json(&m, None).to_string() } else { render_table(&m, Format::Text) };
        match CString::new(text) {
            Ok(s) => {
                *out = s.into_raw();
                KhiStatus::Ok
            }
            Err(_) => fail(KhiStatus::Computation, "output contains NUL"),
        }
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn khi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn khi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
