//! C ABI over the `biserial` library.
//!
//! Modules are opaque `BsRep` handles created from the CLI module-spec grammar
//! (`"1_0"`, `"str: be al- la"`, `"band:p:mu=3"`, ...) and released with
//! [`bs_rep_free`]. Every fallible call returns a [`BsStatus`]; on failure the
//! message is available from [`bs_last_error`] until the next call on the same
//! thread. Strings returned by the library are freed with [`bs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use biserial::cli::parse_module_spec;
use biserial::deform::classify;
use biserial::hom::{ext1_dim, hom_dim, stable_hom_dim};
use biserial::iso::is_isomorphic;
use biserial::linalg::Fp;
use biserial::rep::{syzygy, Rep};
use biserial::type0::{check_plus, Type0Word};
use biserial::Error;

/// Result codes.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed word, module spec, or type-0 word.
    Parse = 3,
    InvalidPrime = 4,
    /// Invalid band parameter or multiplicity.
    InvalidParameter = 5,
    /// The operands live over different fields.
    FieldMismatch = 6,
    /// The computation itself failed.
    Failed = 7,
    Panic = 8,
}

/// Opaque module handle.
pub struct BsRep {
    rep: Rep,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BsStatus {
    match e {
        Error::UnknownToken(_)
        | Error::NotComposable { .. }
        | Error::InvalidString(_)
        | Error::InvalidBand(_)
        | Error::NotClosed(_)
        | Error::ModuleSpec(_)
        | Error::Type0(_) => BsStatus::Parse,
        Error::InvalidPrime(_) => BsStatus::InvalidPrime,
        Error::InvalidParameter(_) => BsStatus::InvalidParameter,
        _ => BsStatus::Failed,
    }
}

/// Runs `body`, recording any error or panic for `bs_last_error`.
fn guard(body: impl FnOnce() -> Result<(), (BsStatus, String)>) -> BsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BsStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (BsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (BsStatus, String) {
    (BsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (BsStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (BsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn rep_ref<'a>(p: *const BsRep, what: &str) -> Result<&'a Rep, (BsStatus, String)> {
    p.as_ref().map(|h| &h.rep).ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (BsStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

fn same_field(a: &Rep, b: &Rep) -> Result<(), (BsStatus, String)> {
    if a.field() != b.field() {
        return Err((BsStatus::FieldMismatch, "modules are over different fields".into()));
    }
    Ok(())
}

/// The message for the last failed call on this thread, or null. Owned by the
/// library and valid until the next call.
#[no_mangle]
pub extern "C" fn bs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a module over `F_p` from a spec string.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bs_rep_from_spec(p: u32, spec: *const c_char, out: *mut *mut BsRep) -> BsStatus {
    guard(|| {
        let spec = read_str(spec, "spec")?;
        let f = Fp::new(p).map_err(lib_err)?;
        let rep = parse_module_spec(f, spec).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(BsRep { rep })))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `rep` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bs_rep_free(rep: *mut BsRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Total dimension and the dimension at each vertex (`dims` holds 3 entries).
///
/// # Safety
/// `rep` must be a live handle; `dim` writable; `dims` null or writable for 3 values.
#[no_mangle]
pub unsafe extern "C" fn bs_rep_dims(rep: *const BsRep, dim: *mut usize, dims: *mut usize) -> BsStatus {
    guard(|| {
        let r = rep_ref(rep, "rep")?;
        write_out(dim, r.dim())?;
        if !dims.is_null() {
            for (k, d) in r.dim_vector().into_iter().enumerate() {
                dims.add(k).write(d);
            }
        }
        Ok(())
    })
}

/// `dim Hom(from, to)`, or the stable dimension when `stable` is true.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bs_hom_dim(from: *const BsRep, to: *const BsRep, stable: bool, out: *mut usize) -> BsStatus {
    guard(|| {
        let (a, b) = (rep_ref(from, "from")?, rep_ref(to, "to")?);
        same_field(a, b)?;
        write_out(out, if stable { stable_hom_dim(a, b) } else { hom_dim(a, b) })
    })
}

/// `dim Ext¹(from, to)`.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bs_ext1_dim(from: *const BsRep, to: *const BsRep, out: *mut usize) -> BsStatus {
    guard(|| {
        let (a, b) = (rep_ref(from, "from")?, rep_ref(to, "to")?);
        same_field(a, b)?;
        write_out(out, ext1_dim(a, b).map_err(lib_err)?)
    })
}

/// A new handle for the syzygy of `rep`.
///
/// # Safety
/// `rep` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bs_syzygy(rep: *const BsRep, out: *mut *mut BsRep) -> BsStatus {
    guard(|| {
        let r = rep_ref(rep, "rep")?;
        write_out(out, Box::into_raw(Box::new(BsRep { rep: syzygy(r) })))
    })
}

/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bs_is_isomorphic(a: *const BsRep, b: *const BsRep, out: *mut bool) -> BsStatus {
    guard(|| {
        let (a, b) = (rep_ref(a, "a")?, rep_ref(b, "b")?);
        same_field(a, b)?;
        write_out(out, is_isomorphic(a, b))
    })
}

/// The deformation classification as a JSON object; free with `bs_string_free`.
///
/// # Safety
/// `rep` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bs_classify_json(rep: *const BsRep, max_order: usize, out: *mut *mut c_char) -> BsStatus {
    guard(|| {
        let r = rep_ref(rep, "rep")?;
        let c = classify(r, max_order).map_err(lib_err)?;
        let text = serde_json::to_string(&c).map_err(|e| (BsStatus::Failed, e.to_string()))?;
        let c = CString::new(text).map_err(|e| (BsStatus::Failed, e.to_string()))?;
        write_out(out, c.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn bs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Condition (+) for a type-0 word such as `"XYX"` (`"-"` is the empty word).
///
/// # Safety
/// `word` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bs_type0_check_plus(word: *const c_char, out: *mut bool) -> BsStatus {
    guard(|| {
        let z: Type0Word = read_str(word, "word")?.parse().map_err(lib_err)?;
        write_out(out, check_plus(&z))
    })
}
