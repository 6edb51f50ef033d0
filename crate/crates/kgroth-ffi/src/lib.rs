//! C ABI over `kgroth`. Objects are opaque heap handles released with the
//! matching `_free` function; strings returned to the caller are released
//! with [`kg_string_free`]. Every fallible call returns a [`KgStatus`] and
//! records a message readable through [`kg_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kgroth::expansions::{coeff_matrix_padded, CoeffKind, ExpansionError};
use kgroth::grothendieck::{jacobi_trudi, GrothError, JTRequest, Variant};
use kgroth::polynomial::poly_to_json;
use kgroth::verify::{self, Suite, VerifyOptions};
use kgroth::{Partition, Poly};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// A series did not stabilize under truncation.
    Unstable = 3,
    /// A verification suite found failing cases.
    VerifyFailed = 4,
    /// An internal panic was caught at the boundary.
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KgVariant {
    /// G_{λ/μ}
    G = 0,
    /// G_{λ⫽μ}
    Gds = 1,
    /// g_{λ/μ}
    Dual = 2,
}

impl From<KgVariant> for Variant {
    fn from(v: KgVariant) -> Variant {
        match v {
            KgVariant::G => Variant::G,
            KgVariant::Gds => Variant::Gds,
            KgVariant::Dual => Variant::Dual,
        }
    }
}

/// An integer partition.
pub struct KgPartition(Partition);

/// An exact polynomial, or a series truncated in (α,β)-degree.
pub struct KgPoly {
    poly: Poly,
    cutoff: u32,
    exact: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), (KgStatus, String)>) -> KgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            KgStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            KgStatus::Internal
        }
    }
}

fn groth_err(e: GrothError) -> (KgStatus, String) {
    match e {
        GrothError::Unstable { .. } => (KgStatus::Unstable, e.to_string()),
        e => (KgStatus::InvalidArgument, e.to_string()),
    }
}

fn expansion_err(e: ExpansionError) -> (KgStatus, String) {
    match e {
        ExpansionError::Groth(g) => groth_err(g),
        e => (KgStatus::InvalidArgument, e.to_string()),
    }
}

fn null() -> (KgStatus, String) {
    (KgStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, (KgStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| (KgStatus::InvalidArgument, "string is not UTF-8".into()))
}

unsafe fn part<'a>(p: *const KgPartition) -> Result<&'a Partition, (KgStatus, String)> {
    p.as_ref().map(|p| &p.0).ok_or_else(null)
}

fn give_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failing call on this thread (empty after success).
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn kg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `"3,1"` (empty string for the empty partition).
///
/// # Safety
/// `s` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_partition_parse(s: *const c_char, out: *mut *mut KgPartition) -> KgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let p: Partition = text(s)?.parse().map_err(|e: kgroth::partitions::PartitionError| (KgStatus::InvalidArgument, e.to_string()))?;
        *out = Box::into_raw(Box::new(KgPartition(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kg_partition_free(p: *mut KgPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of cells; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kg_partition_size(p: *const KgPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.size())
}

/// Evaluates the Jacobi-Trudi determinant of `variant` for `outer/inner` in
/// `nvars` variables. `cutoff` is the starting (α,β)-degree cutoff for the
/// G variants and is raised until the result is stable.
///
/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kg_grothendieck(
    variant: KgVariant,
    outer: *const KgPartition,
    inner: *const KgPartition,
    nvars: usize,
    cutoff: u32,
    out: *mut *mut KgPoly,
) -> KgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let req = JTRequest::new(part(outer)?.clone(), part(inner)?.clone(), nvars, variant.into()).cutoff(cutoff);
        let s = jacobi_trudi(&req).map_err(groth_err)?;
        let (cutoff, exact) = (s.cutoff(), s.is_exact());
        *out = Box::into_raw(Box::new(KgPoly { poly: s.into_body(), cutoff, exact }));
        Ok(())
    })
}

/// Expansion coefficient `kind` ("I", "Itilde", "E", "Etilde", "D",
/// "Dtilde", "b", "B") with subscript `lower` and superscript `upper`.
///
/// # Safety
/// Handles and strings must be valid and `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn kg_coefficient(
    kind: *const c_char,
    lower: *const KgPartition,
    upper: *const KgPartition,
    out: *mut *mut KgPoly,
) -> KgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let name = text(kind)?;
        let kind = CoeffKind::parse(name).ok_or_else(|| (KgStatus::InvalidArgument, format!("unknown coefficient {name:?}")))?;
        let (lo, up) = (part(lower)?, part(upper)?);
        let p = coeff_matrix_padded(kind, lo, up, lo.len().max(up.len())).map_err(expansion_err)?;
        *out = Box::into_raw(Box::new(KgPoly { poly: p, cutoff: 0, exact: true }));
        Ok(())
    })
}

/// Canonical text form, e.g. `"a2 + b1"`; null for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kg_poly_render(p: *const KgPoly, unicode: bool) -> *mut c_char {
    p.as_ref().map_or(ptr::null_mut(), |p| give_string(p.poly.render(unicode)))
}

/// JSON term list; null for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kg_poly_to_json(p: *const KgPoly) -> *mut c_char {
    p.as_ref().map_or(ptr::null_mut(), |p| give_string(poly_to_json(&p.poly).to_string()))
}

/// Whether the value is exact rather than a truncated series.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kg_poly_is_exact(p: *const KgPoly) -> bool {
    p.as_ref().is_some_and(|p| p.exact)
}

/// The (α,β)-degree through which a series is known; 0 when exact.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kg_poly_cutoff(p: *const KgPoly) -> u32 {
    p.as_ref().map_or(0, |p| if p.exact { 0 } else { p.cutoff })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kg_poly_free(p: *mut KgPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a verification suite ("duality", "forms", "branching", "cauchy",
/// "pieri", "fock-oracle", "omega", "corners", "integral", "flagged") over
/// the `rows x cols` box. Writes the case and failure counts and returns
/// `VerifyFailed` when any case fails.
///
/// # Safety
/// `suite` must be a nul-terminated string; `cases` and `failures` valid.
#[no_mangle]
pub unsafe extern "C" fn kg_verify(
    suite: *const c_char,
    rows: usize,
    cols: usize,
    nvars: usize,
    degree: u32,
    seed: u64,
    cases: *mut usize,
    failures: *mut usize,
) -> KgStatus {
    guard(|| {
        if cases.is_null() || failures.is_null() {
            return Err(null());
        }
        let name = text(suite)?;
        let suite = Suite::parse(name).ok_or_else(|| (KgStatus::InvalidArgument, format!("unknown suite {name:?}")))?;
        let opts = VerifyOptions { rows, cols, nvars, degree, seed, ..VerifyOptions::default() };
        let r = verify::run(suite, &opts).map_err(|e| match e.unstable_cutoff() {
            Some(_) => (KgStatus::Unstable, e.to_string()),
            None => (KgStatus::InvalidArgument, e.to_string()),
        })?;
        *cases = r.cases;
        *failures = r.failures.len();
        match r.minimal_failure() {
            None => Ok(()),
            Some(f) => Err((KgStatus::VerifyFailed, format!("{}: {}", f.case, f.detail))),
        }
    })
}
