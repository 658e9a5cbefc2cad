//! C ABI for the core library: opaque handles, integer status codes and
//! JSON documents at the boundary. Every entry point catches panics; on any
//! non-`Ok` status a thread-local message is available through
//! [`dgdim_last_error_message`]. Strings returned through out-parameters
//! are owned by the caller and must be released with [`dgdim_string_free`].

use dgdim_core::complex::FreeComplex;
use dgdim_core::dg_spec::DgAlgebra;
use dgdim_core::dimension::{ldim, verify_theorem, ComplexAnalysis};
use dgdim_core::error::Error;
use dgdim_core::extint::ExtInt;
use dgdim_core::jobs::seeded_linear_forms;
use dgdim_core::koszul::KoszulAlgebra;
use dgdim_core::parse::parse_polynomial_list;
use dgdim_core::poly::Polynomial;
use dgdim_core::schema::{load_document, LoadedObject};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgdimStatus {
    Ok = 0,
    NullArgument = 1,
    ParseError = 2,
    InvalidInput = 3,
    Unsupported = 4,
    VerificationFailure = 5,
    InternalPanic = 6,
}

/// An integer extended by the two infinities: `kind` is -1, 0 or 1 for
/// negative infinity, finite (in `value`) and positive infinity.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DgdimExtInt {
    pub kind: i32,
    pub value: i64,
}

impl From<ExtInt> for DgdimExtInt {
    fn from(v: ExtInt) -> Self {
        match v {
            ExtInt::NegInf => DgdimExtInt { kind: -1, value: 0 },
            ExtInt::Finite(n) => DgdimExtInt { kind: 0, value: n },
            ExtInt::PosInf => DgdimExtInt { kind: 1, value: 0 },
        }
    }
}

/// Opaque handle to a validated free complex.
pub struct DgdimComplex {
    inner: FreeComplex,
}

/// Opaque handle to a Koszul algebra.
pub struct DgdimKoszul {
    inner: Arc<KoszulAlgebra>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(e: &Error) -> DgdimStatus {
    match e {
        Error::Parse { .. } => DgdimStatus::ParseError,
        Error::Unsupported(_) => DgdimStatus::Unsupported,
        Error::ComplexViolation { .. } => DgdimStatus::VerificationFailure,
        Error::Invalid(_) | Error::RingMismatch(_) => DgdimStatus::InvalidInput,
    }
}

fn fail(e: &Error) -> DgdimStatus {
    set_error(e.to_string());
    status_of(e)
}

fn guarded(f: impl FnOnce() -> DgdimStatus) -> DgdimStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic".to_string());
            DgdimStatus::InternalPanic
        }
    }
}

/// Message for the last non-`Ok` status on this thread, or null. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dgdim_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Release a string returned through an out-parameter.
///
/// # Safety
/// `s` must be a pointer previously returned by this library and not yet
/// freed, or null.
#[no_mangle]
pub unsafe extern "C" fn dgdim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, DgdimStatus> {
    if ptr.is_null() {
        set_error("null argument".to_string());
        return Err(DgdimStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".to_string());
        DgdimStatus::InvalidInput
    })
}

unsafe fn read_optional_str<'a>(ptr: *const c_char) -> Result<Option<&'a str>, DgdimStatus> {
    if ptr.is_null() {
        return Ok(None);
    }
    read_str(ptr).map(Some)
}

fn write_string(out: *mut *mut c_char, s: String) -> DgdimStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            DgdimStatus::Ok
        }
        Err(_) => {
            set_error("report contains an interior nul byte".to_string());
            DgdimStatus::InternalPanic
        }
    }
}

/// Parse a schema document (`"object": "complex"`, or `"koszul"` which is
/// taken as its underlying complex) and validate it.
///
/// # Safety
/// `doc` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgdim_complex_from_json(
    doc: *const c_char,
    out: *mut *mut DgdimComplex,
) -> DgdimStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out-parameter".to_string());
            return DgdimStatus::NullArgument;
        }
        let text = match read_str(doc) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let loaded = match load_document(text) {
            Ok(l) => l,
            Err(e) => return fail(&e),
        };
        let complex = match loaded.object {
            LoadedObject::Complex(x) => x,
            LoadedObject::Koszul(a) => a.to_free_complex(),
            _ => {
                set_error("document does not describe a complex".to_string());
                return DgdimStatus::InvalidInput;
            }
        };
        if let Err(e) = complex.validate() {
            return fail(&e);
        }
        *out = Box::into_raw(Box::new(DgdimComplex { inner: complex }));
        DgdimStatus::Ok
    })
}

/// # Safety
/// `ptr` must come from `dgdim_complex_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dgdim_complex_free(ptr: *mut DgdimComplex) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

unsafe fn complex_ref<'a>(ptr: *const DgdimComplex) -> Result<&'a FreeComplex, DgdimStatus> {
    if ptr.is_null() {
        set_error("null handle".to_string());
        return Err(DgdimStatus::NullArgument);
    }
    Ok(&(*ptr).inner)
}

/// Least degree with nonvanishing homology.
///
/// # Safety
/// `ptr` must be a live complex handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgdim_complex_inf(
    ptr: *const DgdimComplex,
    out: *mut DgdimExtInt,
) -> DgdimStatus {
    guarded(|| {
        let x = match complex_ref(ptr) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match ComplexAnalysis::new(x) {
            Ok(a) => {
                *out = a.inf().into();
                DgdimStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Krull dimension of the complex.
///
/// # Safety
/// `ptr` must be a live complex handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgdim_complex_dim(
    ptr: *const DgdimComplex,
    out: *mut DgdimExtInt,
) -> DgdimStatus {
    guarded(|| {
        let x = match complex_ref(ptr) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match ComplexAnalysis::new(x) {
            Ok(a) => {
                *out = a.foxby_dim().into();
                DgdimStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Dimension of one homology module.
///
/// # Safety
/// `ptr` must be a live complex handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgdim_complex_homology_dim(
    ptr: *const DgdimComplex,
    degree: i64,
    out: *mut DgdimExtInt,
) -> DgdimStatus {
    guarded(|| {
        let x = match complex_ref(ptr) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match x.homology(degree) {
            Ok(h) => {
                *out = h.dim().into();
                DgdimStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Length-dimension search; the full report is returned as a JSON string.
/// `pool_csv` may be null (the ring variables are used).
///
/// # Safety
/// `ptr` must be a live complex handle, `out_json` a valid pointer;
/// `pool_csv` is either null or nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn dgdim_complex_ldim_json(
    ptr: *const DgdimComplex,
    pool_csv: *const c_char,
    limit: usize,
    out_json: *mut *mut c_char,
) -> DgdimStatus {
    guarded(|| {
        let x = match complex_ref(ptr) {
            Ok(x) => x,
            Err(s) => return s,
        };
        let pool_text = match read_optional_str(pool_csv) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let ring = x.ring().clone();
        let pool: Vec<Polynomial> = match pool_text {
            Some(t) => match parse_polynomial_list(&ring, t) {
                Ok(p) => p,
                Err(e) => return fail(&e),
            },
            None => (0..ring.nvars()).map(|i| Polynomial::var(&ring, i)).collect(),
        };
        match ldim(x, &pool, limit, "ffi") {
            Ok(report) => write_string(
                out_json,
                serde_json::to_string(&report).expect("report serializes"),
            ),
            Err(e) => fail(&e),
        }
    })
}

/// Parse a `"koszul"` schema document.
///
/// # Safety
/// `doc` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgdim_koszul_from_json(
    doc: *const c_char,
    out: *mut *mut DgdimKoszul,
) -> DgdimStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out-parameter".to_string());
            return DgdimStatus::NullArgument;
        }
        let text = match read_str(doc) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match load_document(text) {
            Ok(loaded) => match loaded.object {
                LoadedObject::Koszul(a) => {
                    *out = Box::into_raw(Box::new(DgdimKoszul { inner: a }));
                    DgdimStatus::Ok
                }
                _ => {
                    set_error("document does not describe a Koszul algebra".to_string());
                    DgdimStatus::InvalidInput
                }
            },
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `ptr` must come from `dgdim_koszul_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dgdim_koszul_free(ptr: *mut DgdimKoszul) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// DG Krull dimension of the algebra.
///
/// # Safety
/// `ptr` must be a live Koszul handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgdim_koszul_dgdim(
    ptr: *const DgdimKoszul,
    out: *mut i64,
) -> DgdimStatus {
    guarded(|| {
        if ptr.is_null() {
            set_error("null handle".to_string());
            return DgdimStatus::NullArgument;
        }
        let algebra = (*ptr).inner.clone();
        *out = DgAlgebra::Koszul(algebra).dgdim();
        DgdimStatus::Ok
    })
}

/// Predicate-equivalence and dimension-chain report for one candidate
/// sequence, as JSON. `seq_csv` may be empty for the empty sequence;
/// `pool_csv` may be null (variables plus ten seeded linear forms).
///
/// # Safety
/// `ptr` must be a live Koszul handle, `out_json` a valid pointer;
/// `seq_csv` must be nul-terminated and `pool_csv` null or nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn dgdim_koszul_verify_theorem_json(
    ptr: *const DgdimKoszul,
    seq_csv: *const c_char,
    pool_csv: *const c_char,
    limit: usize,
    seed: u64,
    out_json: *mut *mut c_char,
) -> DgdimStatus {
    guarded(|| {
        if ptr.is_null() {
            set_error("null handle".to_string());
            return DgdimStatus::NullArgument;
        }
        let algebra = (*ptr).inner.clone();
        let ring = algebra.ring().clone();
        let seq_text = match read_str(seq_csv) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let seq = match parse_polynomial_list(&ring, seq_text) {
            Ok(p) => p,
            Err(e) => return fail(&e),
        };
        let mut pool: Vec<Polynomial> = match read_optional_str(pool_csv) {
            Ok(Some(t)) => match parse_polynomial_list(&ring, t) {
                Ok(p) => p,
                Err(e) => return fail(&e),
            },
            Ok(None) => (0..ring.nvars()).map(|i| Polynomial::var(&ring, i)).collect(),
            Err(s) => return s,
        };
        pool.extend(seeded_linear_forms(&ring, 10, seed));
        match verify_theorem(&algebra, &seq, &pool, limit) {
            Ok(report) => write_string(
                out_json,
                serde_json::to_string(&report).expect("report serializes"),
            ),
            Err(e) => fail(&e),
        }
    })
}
