//! C ABI over the `pericyclic` library.
//!
//! Values cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! a [`PcStatus`]; on failure `pc_last_error()` describes the error until the
//! next call on the same thread. Strings returned through `char **` outputs
//! are owned by the caller and released with `pc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};

use pericyclic::cyclic::{cyclic_nerve, FiniteCategory};
use pericyclic::points::Supernatural;
use pericyclic::ternary::{carry_polynomial, TritVector};
use pericyclic::zmax::{compose, transpose, ArcMap, GeneratorSpec};
use pericyclic::Error;

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Parse = 4,
    NotComposable = 5,
    Precondition = 6,
    ResourceLimit = 7,
    OutOfTruncation = 8,
    Panic = 9,
}

/// A balanced-ternary integer.
pub struct PcTrits(TritVector);

/// A morphism `E_N → E_M` in canonical form.
pub struct PcArc(ArcMap);

/// A point of the topos, as a supernatural number.
pub struct PcSupernatural(Supernatural);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PcStatus {
    match e {
        Error::InvalidInput(_) => PcStatus::InvalidInput,
        Error::Parse(_) => PcStatus::Parse,
        Error::NotComposable(_) => PcStatus::NotComposable,
        Error::Precondition(_) => PcStatus::Precondition,
        Error::ResourceLimit(_) => PcStatus::ResourceLimit,
        Error::OutOfTruncation(_) => PcStatus::OutOfTruncation,
    }
}

struct Failure(PcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome + UnwindSafe) -> PcStatus {
    set_error("");
    match catch_unwind(f) {
        Ok(Ok(())) => PcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PcStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null("string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(PcStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null("handle"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

unsafe fn put_value<T>(out: *mut T, v: T) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = v;
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn pc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a decimal integer.
///
/// # Safety
/// `decimal` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_trits_from_decimal(decimal: *const c_char, out: *mut *mut PcTrits) -> PcStatus {
    guard(|| {
        let s = text(decimal)?;
        let m = s.trim().parse().map_err(|_| Failure(PcStatus::Parse, format!("bad integer `{s}`")))?;
        put(out, PcTrits(TritVector::encode(&m)))
    })
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_trits_add(a: *const PcTrits, b: *const PcTrits, out: *mut *mut PcTrits) -> PcStatus {
    guard(|| put(out, PcTrits(handle(a)?.0.add(&handle(b)?.0))))
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_trits_mul(a: *const PcTrits, b: *const PcTrits, out: *mut *mut PcTrits) -> PcStatus {
    guard(|| put(out, PcTrits(handle(a)?.0.mul(&handle(b)?.0))))
}

/// Digit list such as `[-1, 1]`, least significant first.
///
/// # Safety
/// `v` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_trits_digits(v: *const PcTrits, out: *mut *mut c_char) -> PcStatus {
    guard(|| put_string(out, handle(v)?.0.to_string()))
}

/// # Safety
/// `v` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_trits_to_decimal(v: *const PcTrits, out: *mut *mut c_char) -> PcStatus {
    guard(|| put_string(out, handle(v)?.0.decode().to_string()))
}

/// # Safety
/// `v` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_trits_free(v: *mut PcTrits) {
    free(v)
}

/// The reduced carry polynomial `s_n`, e.g. `-a0*b0^2 - a0^2*b0`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_carry_polynomial(n: usize, out: *mut *mut c_char) -> PcStatus {
    guard(|| put_string(out, carry_polynomial(n)?.to_string()))
}

/// Accepts the JSON form `{src_period, dst_period, degree, values}` or a
/// generator such as `face(2,1)` or `cyclic(3)`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_arc_parse(spec: *const c_char, out: *mut *mut PcArc) -> PcStatus {
    guard(|| {
        let s = text(spec)?;
        let f = if s.trim_start().starts_with('{') {
            serde_json::from_str(s).map_err(|e| Failure(PcStatus::InvalidInput, e.to_string()))?
        } else {
            s.parse::<GeneratorSpec>()?.to_arc()?
        };
        put(out, PcArc(f))
    })
}

/// `g ∘ f`.
///
/// # Safety
/// `g`, `f` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_arc_compose(g: *const PcArc, f: *const PcArc, out: *mut *mut PcArc) -> PcStatus {
    guard(|| put(out, PcArc(compose(&handle(g)?.0, &handle(f)?.0)?)))
}

/// Transpose of a degree-1 map.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_arc_transpose(f: *const PcArc, out: *mut *mut PcArc) -> PcStatus {
    guard(|| put(out, PcArc(transpose(&handle(f)?.0)?)))
}

/// # Safety
/// `f` must be a live handle; the outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pc_arc_shape(
    f: *const PcArc,
    src_period: *mut usize,
    dst_period: *mut usize,
    degree: *mut usize,
) -> PcStatus {
    guard(|| {
        let f = &handle(f)?.0;
        put_value(src_period, f.src_period())?;
        put_value(dst_period, f.dst_period())?;
        put_value(degree, f.degree())
    })
}

/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_arc_to_json(f: *const PcArc, out: *mut *mut c_char) -> PcStatus {
    guard(|| put_string(out, serde_json::to_string(&handle(f)?.0).expect("serializable")))
}

/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_arc_free(f: *mut PcArc) {
    free(f)
}

/// Parses `3*2^inf`, `zhat`, `1` and similar.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_supernatural_parse(spec: *const c_char, out: *mut *mut PcSupernatural) -> PcStatus {
    guard(|| put(out, PcSupernatural(text(spec)?.parse()?)))
}

/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_supernatural_contains(s: *const PcSupernatural, n: u64, out: *mut bool) -> PcStatus {
    guard(|| put_value(out, handle(s)?.0.contains(n)?))
}

/// # Safety
/// `s`, `t` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_supernatural_equivalent(
    s: *const PcSupernatural,
    t: *const PcSupernatural,
    out: *mut bool,
) -> PcStatus {
    guard(|| put_value(out, handle(s)?.0.nhat_equivalent(&handle(t)?.0)))
}

/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_supernatural_to_string(s: *const PcSupernatural, out: *mut *mut c_char) -> PcStatus {
    guard(|| put_string(out, handle(s)?.0.to_string()))
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_supernatural_free(s: *mut PcSupernatural) {
    free(s)
}

/// Builds the cyclic nerve of a category given as JSON up to `levels` and
/// reports the number of violated relation instances.
///
/// # Safety
/// `category_json` must be a nul-terminated string and `violations` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_nerve_validate(
    category_json: *const c_char,
    levels: usize,
    violations: *mut usize,
) -> PcStatus {
    guard(|| {
        let c = FiniteCategory::from_json(text(category_json)?)?;
        put_value(violations, cyclic_nerve(&c, levels).set().validate().len())
    })
}
