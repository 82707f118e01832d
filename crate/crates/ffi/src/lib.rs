//! C ABI over `cherednik_lab`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free`. Every fallible call returns a `ClStatus`; the message
//! of the last failure on the calling thread is available from
//! `cl_last_error`. Strings returned through out-parameters are released
//! with `cl_string_free`. Scalars cross the boundary as `"p/q"` strings.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cherednik_lab::affine_coinvariants::{BoxBasis, FiberWeights};
use cherednik_lab::affine_weyl::{WeylLetter, WeylWord};
use cherednik_lab::scalars::{format_scalar, parse_scalar, parse_scalar_list};
use cherednik_lab::zhelobenko::{build_intertwiner, verify_intertwining, IntertwinerChain};
use cherednik_lab::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    LevelMismatch = 4,
    NonGeneric = 5,
    VanishingDenominator = 6,
    OutOfRange = 7,
    Internal = 8,
}

/// Weights of one coinvariant fiber.
pub struct ClFiber {
    inner: FiberWeights,
}

/// An intertwiner built from a word.
pub struct ClChain {
    inner: IntertwinerChain,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ClStatus {
    match e {
        Error::LevelMismatch { .. } => ClStatus::LevelMismatch,
        Error::NonGeneric { .. } => ClStatus::NonGeneric,
        Error::VanishingDenominator(_) => ClStatus::VanishingDenominator,
        Error::IndexOutOfRange { .. } => ClStatus::OutOfRange,
        Error::BoxOverflow(_) | Error::DepthExceeded(_) | Error::BasisMismatch(_) => ClStatus::Internal,
        _ => ClStatus::InvalidInput,
    }
}

type FfiResult<T> = std::result::Result<T, (ClStatus, String)>;

fn lib<T>(r: cherednik_lab::Result<T>) -> FfiResult<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

/// Runs `f`, records failures and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> ClStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ClStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            ClStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err((ClStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (ClStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn non_null<T>(p: *const T, what: &str) -> FfiResult<()> {
    if p.is_null() {
        Err((ClStatus::NullArgument, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn cl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates fiber weights from `kappa` and comma separated `mu`, `lambda`.
/// The level is `kappa - m`.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cl_fiber_new(
    kappa: *const c_char,
    mu: *const c_char,
    lambda: *const c_char,
    out: *mut *mut ClFiber,
) -> ClStatus {
    guard(|| {
        non_null(out, "out")?;
        let kappa = lib(parse_scalar(read_str(kappa, "kappa")?))?;
        let mu = lib(parse_scalar_list(read_str(mu, "mu")?))?;
        let lambda = lib(parse_scalar_list(read_str(lambda, "lambda")?))?;
        let fw = lib(FiberWeights::new(kappa, mu, lambda))?;
        *out = Box::into_raw(Box::new(ClFiber { inner: fw }));
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a handle from `cl_fiber_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cl_fiber_free(f: *mut ClFiber) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// 1 if the fiber's parameters are generic, 0 if not, -1 on a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_fiber_is_generic(f: *const ClFiber) -> c_int {
    match f.as_ref() {
        Some(f) => c_int::from(f.inner.is_generic()),
        None => -1,
    }
}

/// Number of points `N` of the fiber, 0 on a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_fiber_points(f: *const ClFiber) -> usize {
    f.as_ref().map_or(0, |f| f.inner.n)
}

/// Builds the intertwiner of `word` (e.g. `"pi t1"`) on the box of keys
/// with total degree `degree` and exponents in `[lo, hi]`.
///
/// # Safety
/// `f` must be a live handle, `word` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cl_chain_build(
    f: *const ClFiber,
    word: *const c_char,
    degree: i64,
    lo: i64,
    hi: i64,
    out: *mut *mut ClChain,
) -> ClStatus {
    guard(|| {
        non_null(f, "fiber")?;
        non_null(out, "out")?;
        let fw = &(*f).inner;
        if lo > hi {
            return Err((ClStatus::InvalidInput, format!("empty box {lo}..{hi}")));
        }
        let w = lib(WeylWord::parse(fw.m, read_str(word, "word")?))?;
        let b = BoxBasis::for_fiber(fw, degree, lo, hi);
        let chain = lib(build_intertwiner(&w, fw, &b))?;
        *out = Box::into_raw(Box::new(ClChain { inner: chain }));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from `cl_chain_build` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cl_chain_free(c: *mut ClChain) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Shape of the composite matrix (rows index the target box).
///
/// # Safety
/// `c` must be a live handle; `rows` and `cols` writable.
#[no_mangle]
pub unsafe extern "C" fn cl_chain_shape(c: *const ClChain, rows: *mut usize, cols: *mut usize) -> ClStatus {
    guard(|| {
        non_null(c, "chain")?;
        non_null(rows, "rows")?;
        non_null(cols, "cols")?;
        *rows = (*c).inner.composite.rows();
        *cols = (*c).inner.composite.cols();
        Ok(())
    })
}

/// Entry of the composite matrix as a `"p/q"` string.
///
/// # Safety
/// `c` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cl_chain_entry(c: *const ClChain, row: usize, col: usize, out: *mut *mut c_char) -> ClStatus {
    guard(|| {
        non_null(c, "chain")?;
        non_null(out, "out")?;
        let m = &(*c).inner.composite;
        if row >= m.rows() || col >= m.cols() {
            return Err((ClStatus::OutOfRange, format!("entry ({row}, {col}) outside {}x{}", m.rows(), m.cols())));
        }
        *out = to_c_string(format_scalar(&m.entries[row][col]));
        Ok(())
    })
}

/// The chain serialized as JSON, identical to the command line output.
///
/// # Safety
/// `c` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cl_chain_to_json(c: *const ClChain, out: *mut *mut c_char) -> ClStatus {
    guard(|| {
        non_null(c, "chain")?;
        non_null(out, "out")?;
        let s = serde_json::to_string_pretty(&(*c).inner).map_err(|e| (ClStatus::Internal, e.to_string()))?;
        *out = to_c_string(s + "\n");
        Ok(())
    })
}

/// Checks that the operator of `letter` (`t0`, ..., `pi`, `pi^-1`)
/// intertwines the Cherednik algebra actions on the box. Writes 1 to
/// `passed` if every identity holds, 0 otherwise.
///
/// # Safety
/// `f` must be a live handle, `letter` NUL-terminated, `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn cl_verify_intertwining(
    f: *const ClFiber,
    letter: *const c_char,
    degree: i64,
    lo: i64,
    hi: i64,
    passed: *mut c_int,
) -> ClStatus {
    guard(|| {
        non_null(f, "fiber")?;
        non_null(passed, "passed")?;
        let fw = &(*f).inner;
        let l: WeylLetter = lib(read_str(letter, "letter")?.parse())?;
        lib(WeylWord::new(fw.m, vec![l]))?;
        let b = BoxBasis::for_fiber(fw, degree, lo, hi);
        let r = lib(verify_intertwining(l, fw, &b))?;
        if let Some(c) = r.first_failure() {
            set_error(&format!("{}: {}", c.identity, c.witness.clone().unwrap_or_default()));
        }
        *passed = c_int::from(r.passed());
        Ok(())
    })
}
