//! C interface to the `zimin` crate.
//!
//! Objects are passed as opaque handles created by `*_new`/query functions
//! and released with the matching `*_free`. Every fallible call returns a
//! [`ZiminStatus`]; on failure [`zimin_last_error`] describes the cause for
//! the calling thread. Strings handed out are NUL-terminated and must be
//! released with [`zimin_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zimin::series::rat::{parse_rat, to_decimal, Rat};
use zimin::series::{iz2, iz3, iz3_bounds, izn_generic_bounds, BoundsResult};
use zimin::seq::{SeqKind, SeqStore, SeqTable};
use zimin::{Error, Pattern, Word};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZiminStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Bounds = 3,
    Letter = 4,
    Size = 5,
    Precondition = 6,
    Domain = 7,
    Convergence = 8,
    Parse = 9,
    EmptyPattern = 10,
    Io = 11,
    Panic = 12,
}

impl From<&Error> for ZiminStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Bounds { .. } => ZiminStatus::Bounds,
            Error::Letter { .. } => ZiminStatus::Letter,
            Error::Size(_) => ZiminStatus::Size,
            Error::Precondition(_) => ZiminStatus::Precondition,
            Error::Domain(_) => ZiminStatus::Domain,
            Error::Convergence(_) => ZiminStatus::Convergence,
            Error::Parse(_) => ZiminStatus::Parse,
            Error::EmptyPattern => ZiminStatus::EmptyPattern,
            Error::Io(_) => ZiminStatus::Io,
        }
    }
}

/// A word over `{0, .., q-1}`.
pub struct ZiminWord(Word);

/// A pattern; variables are the distinct characters of its literal.
pub struct ZiminPattern(Pattern);

/// A certified interval `[lower, upper]` for a density.
pub struct ZiminBounds(BoundsResult);

/// A prefix of a counting sequence.
pub struct ZiminSeq(SeqTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(ZiminStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail((&e).into(), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ZiminStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> ZiminStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ZiminStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ZiminStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(ZiminStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn zimin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn zimin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `letters` must point to `len` readable bytes (or be NULL when `len` is 0);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zimin_word_new(letters: *const u8, len: usize, q: u32, out: *mut *mut ZiminWord) -> ZiminStatus {
    guard(|| {
        let slice = if len == 0 {
            &[][..]
        } else if letters.is_null() {
            return Err(null("letters"));
        } else {
            std::slice::from_raw_parts(letters, len)
        };
        let w = Word::new(slice.to_vec(), q)?;
        put(out, Box::into_raw(Box::new(ZiminWord(w))))
    })
}

/// # Safety
/// `w` must come from [`zimin_word_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn zimin_word_free(w: *mut ZiminWord) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `w` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn zimin_word_len(w: *const ZiminWord) -> usize {
    w.as_ref().map_or(0, |w| w.0.len())
}

/// # Safety
/// `literal` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zimin_pattern_parse(literal: *const c_char, out: *mut *mut ZiminPattern) -> ZiminStatus {
    guard(|| {
        let p = Pattern::parse(text(literal, "literal")?)?;
        put(out, Box::into_raw(Box::new(ZiminPattern(p))))
    })
}

/// # Safety
/// `p` must come from [`zimin_pattern_parse`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn zimin_pattern_free(p: *mut ZiminPattern) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Whether `w` is an image of `p` under a nonerasing morphism.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zimin_is_instance(w: *const ZiminWord, p: *const ZiminPattern, out: *mut bool) -> ZiminStatus {
    guard(|| {
        let found = zimin::is_instance(&borrow(w, "word")?.0, &borrow(p, "pattern")?.0)?;
        put(out, found.is_some())
    })
}

/// Whether some factor of `w` is an instance of `p`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zimin_encounters(w: *const ZiminWord, p: *const ZiminPattern, out: *mut bool) -> ZiminStatus {
    guard(|| {
        let hit = zimin::encounters(&borrow(w, "word")?.0, &borrow(p, "pattern")?.0)?;
        put(out, hit)
    })
}

/// # Safety
/// `p` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zimin_is_unavoidable(p: *const ZiminPattern, out: *mut bool) -> ZiminStatus {
    guard(|| put(out, zimin::is_unavoidable(&borrow(p, "pattern")?.0)?))
}

/// Whether `w` is an instance of the `n`-th Zimin word.
///
/// # Safety
/// `w` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zimin_is_zimin_instance(w: *const ZiminWord, n: u32, out: *mut bool) -> ZiminStatus {
    guard(|| put(out, zimin::is_zimin_instance(&borrow(w, "word")?.0, n)))
}

unsafe fn bounds_out(r: zimin::Result<BoundsResult>, out: *mut *mut ZiminBounds) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(ZiminBounds(r?))))
}

unsafe fn eps_arg(eps: *const c_char) -> Result<Rat, Fail> {
    Ok(parse_rat(text(eps, "eps")?)?)
}

/// Bounds on the `Z_2` density over `q` letters of width below `eps`
/// (decimal or `a/b` text).
///
/// # Safety
/// `eps` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zimin_iz2(q: u32, eps: *const c_char, out: *mut *mut ZiminBounds) -> ZiminStatus {
    guard(|| bounds_out(iz2(q, &eps_arg(eps)?), out))
}

/// Bounds on the `Z_3` density, auto-tuned to width below `eps`.
///
/// # Safety
/// As [`zimin_iz2`].
#[no_mangle]
pub unsafe extern "C" fn zimin_iz3(q: u32, eps: *const c_char, out: *mut *mut ZiminBounds) -> ZiminStatus {
    guard(|| bounds_out(iz3(q, &eps_arg(eps)?), out))
}

/// `Z_3` bounds at a fixed context cap and series depth.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zimin_iz3_bounds(q: u32, n_cap: usize, m: usize, out: *mut *mut ZiminBounds) -> ZiminStatus {
    guard(|| bounds_out(iz3_bounds(q, n_cap, m), out))
}

/// Closed-form bounds valid for every `Z_n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zimin_izn_generic_bounds(n: u32, q: u32, out: *mut *mut ZiminBounds) -> ZiminStatus {
    guard(|| bounds_out(izn_generic_bounds(n, q), out))
}

/// Endpoints rounded half-to-even to `digits` places.
///
/// # Safety
/// `b` must be live; `lower` and `upper` must be writable. Free the strings
/// with [`zimin_string_free`].
#[no_mangle]
pub unsafe extern "C" fn zimin_bounds_decimal(
    b: *const ZiminBounds,
    digits: u32,
    lower: *mut *mut c_char,
    upper: *mut *mut c_char,
) -> ZiminStatus {
    guard(|| {
        let b = &borrow(b, "bounds")?.0;
        if lower.is_null() || upper.is_null() {
            return Err(null("output pointer"));
        }
        put(lower, c_string(to_decimal(&b.lower, digits)))?;
        put(upper, c_string(to_decimal(&b.upper, digits)))
    })
}

/// Endpoints as exact fractions `num/den`.
///
/// # Safety
/// As [`zimin_bounds_decimal`].
#[no_mangle]
pub unsafe extern "C" fn zimin_bounds_exact(
    b: *const ZiminBounds,
    lower: *mut *mut c_char,
    upper: *mut *mut c_char,
) -> ZiminStatus {
    guard(|| {
        let b = &borrow(b, "bounds")?.0;
        if lower.is_null() || upper.is_null() {
            return Err(null("output pointer"));
        }
        put(lower, c_string(b.lower.to_string()))?;
        put(upper, c_string(b.upper.to_string()))
    })
}

/// # Safety
/// `b` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn zimin_bounds_free(b: *mut ZiminBounds) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Entries `0..=max` of sequence `kind` (`a`, `b`, `c`, `d` or `bhat`).
/// `ell` is ignored for `a`.
///
/// # Safety
/// `kind` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zimin_seq(
    kind: *const c_char,
    q: u32,
    ell: usize,
    max: usize,
    out: *mut *mut ZiminSeq,
) -> ZiminStatus {
    guard(|| {
        let kind: SeqKind = text(kind, "kind")?.parse()?;
        let ell = kind.needs_ell().then_some(ell);
        let table = SeqStore::new().get(kind, q, ell, max)?;
        put(out, Box::into_raw(Box::new(ZiminSeq(table))))
    })
}

/// # Safety
/// `s` must be live.
#[no_mangle]
pub unsafe extern "C" fn zimin_seq_len(s: *const ZiminSeq) -> usize {
    s.as_ref().map_or(0, |s| s.0.values().len())
}

/// Entry `i` as a decimal string.
///
/// # Safety
/// `s` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zimin_seq_value(s: *const ZiminSeq, i: usize, out: *mut *mut c_char) -> ZiminStatus {
    guard(|| {
        let s = &borrow(s, "sequence")?.0;
        let v = s.get(i).ok_or(Error::Bounds { start: i, end: i + 1, len: s.values().len() })?;
        put(out, c_string(v.to_str_radix(10)))
    })
}

/// # Safety
/// `s` must come from [`zimin_seq`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn zimin_seq_free(s: *mut ZiminSeq) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
