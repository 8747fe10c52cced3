//! C ABI over the `cremona` crate.
//!
//! Maps cross the boundary as opaque `CremonaMap` handles. Every fallible
//! call returns a `CremonaStatus`; on failure the message is available from
//! `cremona_last_error` until the next call on the same thread. Strings
//! handed out by this library must be released with `cremona_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cremona::cremap::{parse_map_body, solve_inverse, RationalMapP2};
use cremona::dynamics::classify_growth;
use cremona::exactalg::Field;
use cremona::fixtures::run_fixture;
use cremona::groups::{bs_check, Character, Gl2qEmbedding};
use cremona::Error;

/// Result codes shared by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CremonaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    ComputationFailed = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Opaque birational self-map of the projective plane.
pub struct CremonaMap {
    field: Field,
    map: RationalMapP2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(CremonaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_input_error() { CremonaStatus::InvalidInput } else { CremonaStatus::ComputationFailed };
        Failure(status, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(CremonaStatus::ComputationFailed, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CremonaStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CremonaStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            CremonaStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(CremonaStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(CremonaStatus::InvalidUtf8, e.to_string()))
}

unsafe fn read_opt_str<'a>(p: *const c_char) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        read_str(p).map(Some)
    }
}

unsafe fn handle<'a>(p: *const CremonaMap) -> Result<&'a CremonaMap, Failure> {
    p.as_ref().ok_or_else(null)
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(CremonaStatus::ComputationFailed, "interior NUL in output".into()))
}

unsafe fn write_json<T: serde::Serialize>(out: *mut *mut c_char, value: &T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = into_c_string(serde_json::to_string(value)?)?;
    Ok(())
}

unsafe fn write_map(out: *mut *mut CremonaMap, field: Field, map: RationalMapP2) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(CremonaMap { field, map }));
    Ok(())
}

/// Message of the most recent failure on this thread, or NULL.
///
/// The pointer stays valid until the next call into this library from the
/// same thread. Do not free it.
#[no_mangle]
pub extern "C" fn cremona_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
///
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cremona_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a map such as `P2 [x*y, y*z, z*x]` or `A2 [x, y + 1]`.
///
/// `field` is a minimal polynomial in `t` (for example `t^2+t+1`); NULL or
/// an empty string selects the rationals.
///
/// # Safety
///
/// `field` may be NULL; `body` must be a NUL-terminated string; `out` must
/// be writable. The handle written to `out` must be released with
/// `cremona_map_free`.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_parse(
    field: *const c_char,
    body: *const c_char,
    out: *mut *mut CremonaMap,
) -> CremonaStatus {
    guard(|| {
        let field = match read_opt_str(field)?.map(str::trim) {
            None | Some("") => Field::Rational,
            Some(src) => Field::parse(src)?,
        };
        let (map, _) = parse_map_body(&field, read_str(body)?)?;
        write_map(out, field, map)
    })
}

/// Releases a map handle. NULL is ignored.
///
/// # Safety
///
/// `map` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_free(map: *mut CremonaMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Degree of the homogeneous components.
///
/// # Safety
///
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_degree(map: *const CremonaMap, out: *mut u32) -> CremonaStatus {
    guard(|| {
        let m = handle(map)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = m.map.degree();
        Ok(())
    })
}

/// Writes `a ∘ b` to `out`.
///
/// # Safety
///
/// `a` and `b` must be live handles over the same field; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_compose(
    a: *const CremonaMap,
    b: *const CremonaMap,
    out: *mut *mut CremonaMap,
) -> CremonaStatus {
    guard(|| {
        let (a, b) = (handle(a)?, handle(b)?);
        if a.field != b.field {
            return Err(Error::FieldMismatch.into());
        }
        write_map(out, a.field.clone(), a.map.compose(&b.map)?)
    })
}

/// Solves for the inverse map.
///
/// # Safety
///
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_inverse(map: *const CremonaMap, out: *mut *mut CremonaMap) -> CremonaStatus {
    guard(|| {
        let m = handle(map)?;
        write_map(out, m.field.clone(), solve_inverse(&m.map)?)
    })
}

/// Tests equality as maps, that is up to a common scalar factor.
///
/// # Safety
///
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_equals(
    a: *const CremonaMap,
    b: *const CremonaMap,
    out: *mut bool,
) -> CremonaStatus {
    guard(|| {
        let (a, b) = (handle(a)?, handle(b)?);
        let out = out.as_mut().ok_or_else(null)?;
        *out = a.field == b.field && a.map.equals(&b.map);
        Ok(())
    })
}

/// Fills `buf[0..k]` with the degrees of the first `k` iterates.
///
/// # Safety
///
/// `map` must be a live handle; `buf` must point to at least `len`
/// writable `uint32_t` values. Fails with `BufferTooSmall` when `len < k`.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_iterate_degrees(
    map: *const CremonaMap,
    k: usize,
    buf: *mut u32,
    len: usize,
) -> CremonaStatus {
    guard(|| {
        let m = handle(map)?;
        if buf.is_null() {
            return Err(null());
        }
        if len < k {
            return Err(Failure(CremonaStatus::BufferTooSmall, format!("need {k} slots, got {len}")));
        }
        let degrees = m.map.iterate_degrees(k)?;
        std::slice::from_raw_parts_mut(buf, k).copy_from_slice(&degrees);
        Ok(())
    })
}

/// Renders the map as `[p0, p1, p2]`.
///
/// # Safety
///
/// `map` must be a live handle; `out` must be writable. Free the result
/// with `cremona_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_to_string(map: *const CremonaMap, out: *mut *mut c_char) -> CremonaStatus {
    guard(|| {
        let m = handle(map)?;
        if out.is_null() {
            return Err(null());
        }
        *out = into_c_string(m.map.to_string())?;
        Ok(())
    })
}

/// Growth classification of the first `k` iterate degrees, as JSON.
///
/// # Safety
///
/// `map` must be a live handle; `out` must be writable. Free the result
/// with `cremona_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_classify_json(
    map: *const CremonaMap,
    k: usize,
    out: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| {
        let m = handle(map)?;
        let degrees: Vec<u64> = m.map.iterate_degrees(k)?.into_iter().map(u64::from).collect();
        write_json(out, &classify_growth(&degrees)?)
    })
}

/// Baumslag-Solitar verdict for BS(m, n), as JSON.
///
/// # Safety
///
/// `out` must be writable. Free the result with `cremona_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cremona_bs_check_json(m: i64, n: i64, out: *mut *mut c_char) -> CremonaStatus {
    guard(|| write_json(out, &bs_check(m, n)?))
}

/// Verifies the GL(2,Q) embedding with weight `k` and character `chi`
/// (for example `trivial` or `-1->-1,2->1/2`) on `pairs` random pairs.
///
/// # Safety
///
/// `chi` may be NULL for the trivial character; `out` must be writable.
/// Free the result with `cremona_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cremona_gl2q_verify_json(
    k: i64,
    chi: *const c_char,
    pairs: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| {
        let chi = match read_opt_str(chi)? {
            None => Character::trivial(),
            Some(src) => Character::parse(src)?,
        };
        let report = Gl2qEmbedding::new(k, chi)?.verify(pairs, seed)?;
        write_json(out, &report)
    })
}

/// Runs one named fixture. `passed` receives the overall verdict and `out`
/// the JSON comparison record.
///
/// # Safety
///
/// `name` must be a NUL-terminated string; `passed` and `out` must be
/// writable. Free the result with `cremona_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cremona_fixture_json(
    name: *const c_char,
    passed: *mut bool,
    out: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| {
        let name = read_str(name)?;
        let passed = passed.as_mut().ok_or_else(null)?;
        let result = run_fixture(name)?;
        *passed = result.pass;
        write_json(out, &result)
    })
}
