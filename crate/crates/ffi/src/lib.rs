//! C interface to `lbforge`.
//!
//! Objects are opaque handles released with the matching `*_free`. Every
//! fallible call returns an [`LbfStatus`]; on failure the message is kept per
//! thread and can be fetched with [`lbf_last_error`]. Strings handed out by
//! the library are released with [`lbf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lbforge::lie::{build_sl, jordanian, r_dj};
use lbforge::pairing::{admissible_degree, Admissible, DoubleType, Vertex};
use lbforge::rmatrix::{build_r, catalog_constant, cyb_spectral, skew_spectral_check};
use lbforge::twist::quasi_twist_verify;
use lbforge::{wire, CaseSpec, ConstTensor2, Error, LieAlgebraData, RKind, SpectralTensor2};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LbfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    RejectedCase = 3,
    KindMismatch = 4,
    Parse = 5,
    Degenerate = 6,
    Internal = 7,
}

/// Handle to `sl_n`.
pub struct LbfAlgebra {
    inner: LieAlgebraData,
}

/// Handle to a spectral r-matrix together with its algebra.
pub struct LbfTensor {
    alg: LieAlgebraData,
    r: SpectralTensor2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> LbfStatus {
    match e {
        Error::RejectedCase(_) => LbfStatus::RejectedCase,
        Error::KindMismatch(_) => LbfStatus::KindMismatch,
        Error::Parse(_) => LbfStatus::Parse,
        Error::DegenerateChange(_) | Error::DegenerateSubstitution => LbfStatus::Degenerate,
        _ => LbfStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), LbfStatus>) -> LbfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LbfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            LbfStatus::Internal
        }
    }
}

fn fail(e: Error) -> LbfStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, LbfStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(LbfStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        LbfStatus::InvalidArgument
    })
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn check_out<T>(p: *mut T) -> Result<(), LbfStatus> {
    if p.is_null() {
        set_error("null output pointer");
        Err(LbfStatus::NullArgument)
    } else {
        Ok(())
    }
}

/// Copy of the last error message on this thread, or null. Free with
/// [`lbf_string_free`].
#[no_mangle]
pub extern "C" fn lbf_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(s) => s.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lbf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates `sl_n`, `n >= 2`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lbf_algebra_sl(n: u32, out: *mut *mut LbfAlgebra) -> LbfStatus {
    guard(|| {
        check_out(out)?;
        let inner = build_sl(n as usize).map_err(fail)?;
        *out = Box::into_raw(Box::new(LbfAlgebra { inner }));
        Ok(())
    })
}

/// # Safety
/// `alg` must be null or a handle from [`lbf_algebra_sl`].
#[no_mangle]
pub unsafe extern "C" fn lbf_algebra_free(alg: *mut LbfAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lbf_algebra_dim(alg: *const LbfAlgebra) -> usize {
    alg.as_ref().map(|a| a.inner.dim()).unwrap_or(0)
}

fn constant_part(alg: &LieAlgebraData, spec: &CaseSpec, name: Option<&str>) -> Result<RKind, Error> {
    let value: ConstTensor2 = match name {
        None | Some("") | Some("catalog") => return catalog_constant(alg, spec),
        Some("zero") => ConstTensor2::zero(),
        Some("dj") => r_dj(alg),
        Some("dj21") => r_dj(alg).swap(),
        Some("jordanian") => jordanian(alg, 0),
        Some(other) => return Err(Error::InvalidInput(format!("unknown constant part {other:?}"))),
    };
    RKind::classify(alg, value)
}

/// Builds the closed-form r-matrix for `case_text` (e.g. `"I:two-points:1,2"`).
/// `r_name` is one of `zero`, `dj`, `dj21`, `jordanian`, or null for the
/// catalog constant of the case.
///
/// # Safety
/// `alg` must be a live handle, strings NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lbf_build_r(
    alg: *const LbfAlgebra,
    case_text: *const c_char,
    r_name: *const c_char,
    out: *mut *mut LbfTensor,
) -> LbfStatus {
    guard(|| {
        check_out(out)?;
        let alg = alg.as_ref().ok_or_else(|| {
            set_error("null algebra handle");
            LbfStatus::NullArgument
        })?;
        let spec: CaseSpec = read_str(case_text)?.parse().map_err(fail)?;
        let name = if r_name.is_null() { None } else { Some(read_str(r_name)?) };
        let kind = constant_part(&alg.inner, &spec, name).map_err(fail)?;
        let r = build_r(&alg.inner, &spec, &kind).map_err(fail)?;
        *out = Box::into_raw(Box::new(LbfTensor {
            alg: alg.inner.clone(),
            r,
        }));
        Ok(())
    })
}

/// Parses a tensor JSON document.
///
/// # Safety
/// `json` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lbf_tensor_from_json(json: *const c_char, out: *mut *mut LbfTensor) -> LbfStatus {
    guard(|| {
        check_out(out)?;
        let (alg, r) = wire::tensor_from_json(read_str(json)?).map_err(fail)?;
        *out = Box::into_raw(Box::new(LbfTensor { alg, r }));
        Ok(())
    })
}

/// # Safety
/// `t` must be a live handle, `out` valid. Free the result with
/// [`lbf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lbf_tensor_to_json(t: *const LbfTensor, out: *mut *mut c_char) -> LbfStatus {
    guard(|| {
        check_out(out)?;
        let t = tensor_ref(t)?;
        *out = to_c_string(wire::tensor_to_json(&t.alg, &t.r));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn lbf_tensor_free(t: *mut LbfTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

unsafe fn tensor_ref<'a>(t: *const LbfTensor) -> Result<&'a LbfTensor, LbfStatus> {
    t.as_ref().ok_or_else(|| {
        set_error("null tensor handle");
        LbfStatus::NullArgument
    })
}

/// Sets `*pass` to whether the spectral Yang–Baxter expression vanishes.
///
/// # Safety
/// `t` must be a live handle, `pass` valid.
#[no_mangle]
pub unsafe extern "C" fn lbf_tensor_check_cybe(t: *const LbfTensor, pass: *mut bool) -> LbfStatus {
    guard(|| {
        check_out(pass)?;
        let t = tensor_ref(t)?;
        *pass = cyb_spectral(&t.alg, &t.r).is_zero();
        Ok(())
    })
}

/// Sets `*pass` to whether `r(u,v) + τ r(v,u) = 0`.
///
/// # Safety
/// `t` must be a live handle, `pass` valid.
#[no_mangle]
pub unsafe extern "C" fn lbf_tensor_check_skew(t: *const LbfTensor, pass: *mut bool) -> LbfStatus {
    guard(|| {
        check_out(pass)?;
        let t = tensor_ref(t)?;
        *pass = skew_spectral_check(&t.r);
        Ok(())
    })
}

/// Solves for `σ(u) = pu + q` taking the `(c1, c2)` family to `(d1, d2)` and
/// checks the scaled identity on `sl_2`. Rationals are `"a/b"` strings;
/// `p`, `q` and the scaling `c` are returned the same way.
///
/// # Safety
/// Inputs NUL-terminated; all outputs valid.
#[no_mangle]
pub unsafe extern "C" fn lbf_quasi_twist(
    c1: *const c_char,
    c2: *const c_char,
    d1: *const c_char,
    d2: *const c_char,
    p: *mut *mut c_char,
    q: *mut *mut c_char,
    c: *mut *mut c_char,
    equal: *mut bool,
) -> LbfStatus {
    guard(|| {
        check_out(p)?;
        check_out(q)?;
        check_out(c)?;
        check_out(equal)?;
        let parse = |s| -> Result<_, LbfStatus> { lbforge::rat::parse(read_str(s)?).map_err(fail) };
        let (c1, c2, d1, d2) = (parse(c1)?, parse(c2)?, parse(d1)?, parse(d2)?);
        let report = quasi_twist_verify(&c1, &c2, &d1, &d2).map_err(fail)?;
        *p = to_c_string(report.change.p().to_string());
        *q = to_c_string(report.change.q().to_string());
        *c = to_c_string(report.scaling.to_string());
        *equal = report.equal;
        Ok(())
    })
}

/// Admissible degree of `1/a(u)` for double type 1, 2 or 3. `simple_k = 0`
/// selects the lowest-root vertex, otherwise a simple root with coefficient
/// `simple_k`. Writes `-1` when no such structure exists.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lbf_admissible_degree(double_type: u32, simple_k: u32, out: *mut i32) -> LbfStatus {
    guard(|| {
        check_out(out)?;
        let dt = match double_type {
            1 => DoubleType::I,
            2 => DoubleType::II,
            3 => DoubleType::III,
            other => {
                set_error(format!("double type must be 1, 2 or 3, got {other}"));
                return Err(LbfStatus::InvalidArgument);
            }
        };
        let vertex = if simple_k == 0 { Vertex::MinusAlphaMax } else { Vertex::Simple(simple_k) };
        *out = match admissible_degree(dt, vertex).map_err(fail)? {
            Admissible::MaxDegree(d) => d as i32,
            Admissible::Impossible => -1,
        };
        Ok(())
    })
}
