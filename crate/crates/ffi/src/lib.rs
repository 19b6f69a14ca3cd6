//! C interface to `spinetorsion`.
//!
//! Spines are opaque `StSpine` handles. Every call returns an `StStatus`;
//! results come back through out-pointers. Strings returned to the caller
//! are owned by it and must be released with `st_string_free`. After a
//! failing call, `st_last_error_message` gives the message of that error
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use spinetorsion::io::{parse_spine, serialize_spine};
use spinetorsion::moves::{apply_negative, apply_positive_variant};
use spinetorsion::spider::RepKind;
use spinetorsion::{report, BranchedSpine, Error};

/// Opaque handle to a validated branched spine.
pub struct StSpine {
    inner: BranchedSpine,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Input failed to parse or validate.
    Validation = 3,
    /// The requested move does not apply or would leave a non-standard spine.
    NotApplicable = 4,
    /// Homology is nonzero and no basis was requested.
    NotAcyclic = 5,
    /// Any other computation error.
    Computation = 6,
    Usage = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> StStatus {
    match e {
        _ if e.is_validation() => StStatus::Validation,
        Error::NotApplicable(_) | Error::ResultNonStandard(_) | Error::SelfAdjacentFace(_) => StStatus::NotApplicable,
        Error::NotAcyclicNoBasis(_) => StStatus::NotAcyclic,
        Error::Usage(_) => StStatus::Usage,
        _ => StStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), StStatus>) -> StStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            StStatus::Panic
        }
    }
}

fn lib<T>(r: spinetorsion::Result<T>) -> Result<T, StStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, StStatus> {
    if p.is_null() {
        set_error("null string argument".into());
        return Err(StStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        StStatus::InvalidUtf8
    })
}

unsafe fn spine_ref<'a>(p: *const StSpine) -> Result<&'a BranchedSpine, StStatus> {
    if p.is_null() {
        set_error("null spine handle".into());
        return Err(StStatus::NullPointer);
    }
    Ok(&(*p).inner)
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), StStatus> {
    if out.is_null() {
        set_error("null output pointer".into());
        return Err(StStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), StStatus> {
    let c = CString::new(s).map_err(|_| StStatus::Computation)?;
    write_out(out, c.into_raw())
}

unsafe fn write_spine(out: *mut *mut StSpine, s: BranchedSpine) -> Result<(), StStatus> {
    write_out(out, Box::into_raw(Box::new(StSpine { inner: s })))
}

/// Parse and validate a spine file held in `text`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_spine_parse(text: *const c_char, out: *mut *mut StSpine) -> StStatus {
    guard(|| {
        let t = read_str(text)?;
        let s = lib(parse_spine(t))?;
        write_spine(out, s)
    })
}

/// Release a spine handle. Null is ignored.
///
/// # Safety
/// `spine` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn st_spine_free(spine: *mut StSpine) {
    if !spine.is_null() {
        drop(Box::from_raw(spine));
    }
}

/// # Safety
/// `spine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_spine_tet_count(spine: *const StSpine, out: *mut usize) -> StStatus {
    guard(|| write_out(out, spine_ref(spine)?.v()))
}

/// χ(P) and χ(X(P)).
///
/// # Safety
/// `spine` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_spine_euler_characteristics(spine: *const StSpine, chi_p: *mut i64, chi_x: *mut i64) -> StStatus {
    guard(|| {
        let (p, x) = spine_ref(spine)?.euler_characteristics();
        write_out(chi_p, p)?;
        write_out(chi_x, x)
    })
}

/// Canonical spine file text.
///
/// # Safety
/// `spine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_spine_serialize(spine: *const StSpine, out: *mut *mut c_char) -> StStatus {
    guard(|| write_string(out, serialize_spine(spine_ref(spine)?)))
}

/// JSON summary (counts, Euler characteristics, H₁, boundary).
///
/// # Safety
/// `spine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_spine_summary_json(spine: *const StSpine, out: *mut *mut c_char) -> StStatus {
    guard(|| write_string(out, report::summary(spine_ref(spine)?).to_string()))
}

/// JSON torsion report for `rep` (`trivial`, `free-abelian`, `cyclic:N[:CHAR]`).
///
/// # Safety
/// `spine` must be a live handle, `rep` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_torsion_json(
    spine: *const StSpine,
    rep: *const c_char,
    sign_refined: bool,
    auto_basis: bool,
    out: *mut *mut c_char,
) -> StStatus {
    guard(|| {
        let s = spine_ref(spine)?;
        let kind = lib(RepKind::parse(read_str(rep)?))?;
        let v = lib(report::torsion_report(s, &kind, sign_refined, auto_basis))?;
        write_string(out, v.to_string())
    })
}

/// JSON Euler chain class and maw cochain.
///
/// # Safety
/// `spine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_euler_json(spine: *const StSpine, out: *mut *mut c_char) -> StStatus {
    guard(|| {
        let v = lib(report::euler(spine_ref(spine)?))?;
        write_string(out, v.to_string())
    })
}

/// 2→3 move across face class `face`; `variant` 0 or 1.
///
/// # Safety
/// `spine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_move_positive(spine: *const StSpine, face: usize, variant: u8, out: *mut *mut StSpine) -> StStatus {
    guard(|| {
        let m = lib(apply_positive_variant(spine_ref(spine)?, face, variant))?;
        write_spine(out, m.after)
    })
}

/// 3→2 move removing edge class `edge`.
///
/// # Safety
/// `spine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_move_negative(spine: *const StSpine, edge: usize, out: *mut *mut StSpine) -> StStatus {
    guard(|| {
        let m = lib(apply_negative(spine_ref(spine)?, edge))?;
        write_spine(out, m.after)
    })
}

/// Number of branched spines with `tets` vertices up to isomorphism.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_census_count(tets: usize, out: *mut usize) -> StStatus {
    guard(|| {
        if tets == 0 {
            set_error("tets must be at least 1".into());
            return Err(StStatus::Usage);
        }
        write_out(out, spinetorsion::census::census(tets).len())
    })
}

/// Message of the last failing call on this thread, or null.
///
/// # Safety
/// The returned string must be released with `st_string_free`.
#[no_mangle]
pub unsafe extern "C" fn st_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(m) => CString::new(m.as_str()).map(CString::into_raw).unwrap_or(std::ptr::null_mut()),
        None => std::ptr::null_mut(),
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn st_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
