//! C ABI over `cubicgauss`: opaque polynomial and Jacobian-ring handles, the discriminant
//! construction, and JSON suite reports.
//!
//! Every function returns a [`CgStatus`]; on failure the message is available from
//! [`cg_last_error_message`] on the same thread. Strings returned through out-pointers are
//! owned by the caller and released with [`cg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cubicgauss::jacobian::JacobianRing;
use cubicgauss::poly::parse;
use cubicgauss::threefold::{conic_bundle, LineInX};
use cubicgauss::verify::{run_suite, Suite, VerifyOptions, SCHEMA_VERSION};
use cubicgauss::{Error, FieldKind, Polynomial, VarSet};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CgStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidArgument = 3,
    Field = 4,
    Computation = 5,
    Utf8 = 6,
    Panic = 7,
}

/// Opaque polynomial handle.
pub struct CgPolynomial(Polynomial);

/// Opaque Jacobian-ring handle.
pub struct CgJacobianRing(JacobianRing);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(CgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::UnknownVariable(_) | Error::TooManyVariables(_) => CgStatus::Parse,
            Error::InvalidField(_) | Error::FieldMismatch(_) | Error::Characteristic2 => CgStatus::Field,
            Error::UnknownSuite(_) | Error::NotHomogeneous(_) | Error::OutOfRange(_) => CgStatus::InvalidArgument,
            _ => CgStatus::Computation,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CgStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CgStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(CgStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(CgStatus::Utf8, format!("{what} is not valid UTF-8")))
}

unsafe fn field_arg(p: *const c_char, default: FieldKind) -> Result<FieldKind, Fail> {
    if p.is_null() {
        return Ok(default);
    }
    Ok(FieldKind::parse(text(p, "field")?)?)
}

fn check_out<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(CgStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(CgStatus::NullPointer, "handle is null".into()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Version of the JSON report schema. Static storage; do not free.
#[no_mangle]
pub extern "C" fn cg_schema_version() -> *const c_char {
    static V: &[u8] = b"1\0";
    debug_assert_eq!(&V[..V.len() - 1], SCHEMA_VERSION.as_bytes());
    V.as_ptr() as *const c_char
}

/// Message of the last failed call on this thread. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn cg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial. `vars` is a comma-separated variable list (null: x0..x4);
/// `field` is `q` or `p=<prime>` (null: q).
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_polynomial_parse(
    text_in: *const c_char,
    vars: *const c_char,
    field: *const c_char,
    out: *mut *mut CgPolynomial,
) -> CgStatus {
    guard(|| {
        check_out(out)?;
        let src = text(text_in, "text")?;
        let field = field_arg(field, FieldKind::Rational)?;
        let vars = if vars.is_null() {
            VarSet::projective4()
        } else {
            let names: Vec<&str> = text(vars, "vars")?.split(',').map(str::trim).collect();
            VarSet::new(&names)?
        };
        let p = parse(src, &vars, field)?;
        *out = Box::into_raw(Box::new(CgPolynomial(p)));
        Ok(())
    })
}

/// Canonical text form of a polynomial; free with [`cg_string_free`].
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_polynomial_to_string(poly: *const CgPolynomial, out: *mut *mut c_char) -> CgStatus {
    guard(|| {
        check_out(out)?;
        *out = into_c_string(handle(poly)?.0.to_string());
        Ok(())
    })
}

/// # Safety
/// `poly` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_polynomial_free(poly: *mut CgPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Jacobian ring of a form; smoothness is queried separately.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_jacobian_ring_new(poly: *const CgPolynomial, out: *mut *mut CgJacobianRing) -> CgStatus {
    guard(|| {
        check_out(out)?;
        let ring = JacobianRing::new(&handle(poly)?.0)?;
        *out = Box::into_raw(Box::new(CgJacobianRing(ring)));
        Ok(())
    })
}

/// Writes dim R^0, …, dim R^N into `dims` (capacity `cap`) and N + 1 into `len`.
/// If `cap` is too small only `len` is written and INVALID_ARGUMENT is returned.
///
/// # Safety
/// `ring` must be a live handle; `dims` must hold `cap` values; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_jacobian_ring_dims(ring: *const CgJacobianRing, dims: *mut usize, cap: usize, len: *mut usize) -> CgStatus {
    guard(|| {
        check_out(len)?;
        let d = handle(ring)?.0.dims();
        *len = d.len();
        if cap < d.len() {
            return Err(Fail(CgStatus::InvalidArgument, format!("need capacity {}", d.len())));
        }
        check_out(dims)?;
        ptr::copy_nonoverlapping(d.as_ptr(), dims, d.len());
        Ok(())
    })
}

/// Whether the hypersurface of the ring is smooth (J contains every form of degree N + 1).
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_jacobian_ring_is_smooth(ring: *const CgJacobianRing, out: *mut bool) -> CgStatus {
    guard(|| {
        check_out(out)?;
        *out = handle(ring)?.0.is_smooth()?;
        Ok(())
    })
}

/// # Safety
/// `ring` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_jacobian_ring_free(ring: *mut CgJacobianRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Discriminant quintic and conic of a cubic in x0..x4 containing x1 = x2 = x4 = 0.
///
/// # Safety
/// `cubic` must be a live handle; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_discriminant(
    cubic: *const CgPolynomial,
    out_quintic: *mut *mut CgPolynomial,
    out_conic: *mut *mut CgPolynomial,
) -> CgStatus {
    guard(|| {
        check_out(out_quintic)?;
        check_out(out_conic)?;
        let line = LineInX::coordinate_line(&handle(cubic)?.0)?;
        let b = conic_bundle(&line)?;
        *out_quintic = Box::into_raw(Box::new(CgPolynomial(b.quintic)));
        *out_conic = Box::into_raw(Box::new(CgPolynomial(b.conic_c)));
        Ok(())
    })
}

/// Runs a verification suite and returns its JSON report through `out_json`.
/// `field` null selects the suite default; `trials` 0 selects the suite default.
/// `passed` (nullable) receives whether the suite had no failures.
///
/// # Safety
/// `name` must be NUL-terminated; `field` null or NUL-terminated; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_run_suite(
    name: *const c_char,
    field: *const c_char,
    seed: u64,
    trials: usize,
    out_json: *mut *mut c_char,
    passed: *mut bool,
) -> CgStatus {
    guard(|| {
        check_out(out_json)?;
        let suite = Suite::parse(text(name, "name")?)?;
        let field = if field.is_null() { None } else { Some(field_arg(field, FieldKind::Rational)?) };
        let opts = VerifyOptions { field, seed, trials: (trials > 0).then_some(trials), ..Default::default() };
        let report = run_suite(suite, &opts);
        if !passed.is_null() {
            *passed = report.passed();
        }
        let s = serde_json::to_string(&report).map_err(|e| Fail(CgStatus::Computation, e.to_string()))?;
        *out_json = into_c_string(s);
        Ok(())
    })
}
