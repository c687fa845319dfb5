//! C ABI for the xhr library.
//!
//! Conventions:
//! * every fallible call returns an [`XhrStatus`]; outputs go through out
//!   pointers, which are written only on `XHR_OK`;
//! * structured results (polynomials, verification reports) are returned as
//!   JSON in a heap-allocated C string, released with [`xhr_string_free`];
//! * [`xhr_last_error_message`] gives a thread-local detail string for the
//!   most recent failure;
//! * `XhrFamily` is an opaque handle onto one exceptional family, created by
//!   [`xhr_family_new`] and released with [`xhr_family_free`].
//!
//! The committed header `include/xhr.h` is generated with cbindgen
//! (`cbindgen --crate xhr-ffi --config cbindgen.toml --output include/xhr.h`).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use xhr_core::error::Error;
use xhr_core::exceptional::{ExceptionalFamily, SeedSpec};
use xhr_core::hr::{hr_poly, HrParams};
use xhr_core::laurent::LaurentPoly;
use xhr_core::rat::{format_rational, parse_rational};
use xhr_core::verify;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XhrStatus {
    Ok = 0,
    /// Null pointer, unparsable string, or out-of-range argument.
    InvalidArgument = 1,
    /// A closed form degenerates for these parameters (vanishing Pochhammer
    /// factor or Gamma pole).
    DegenerateParameter = 2,
    /// The requested weight or integrand diverges on the unit circle.
    DivergentWeight = 3,
    /// Index outside the family's index set.
    IndexOutOfSet = 4,
    /// A verification suite ran and reported failures.
    VerificationFailed = 5,
    /// Internal invariant violation.
    InternalError = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let cleaned: Vec<u8> = msg.bytes().filter(|b| *b != 0).collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn fail(status: XhrStatus, msg: &str) -> XhrStatus {
    set_error(msg);
    status
}

fn fail_with(e: &Error) -> XhrStatus {
    let status = match e {
        Error::Config(_) | Error::NotPureGauge => XhrStatus::InvalidArgument,
        Error::DegenerateParameter { .. } | Error::GammaPole { .. } => {
            XhrStatus::DegenerateParameter
        }
        Error::DivergentWeight { .. } | Error::PoleOnCircle { .. } => XhrStatus::DivergentWeight,
        Error::IndexOutOfSet { .. } => XhrStatus::IndexOutOfSet,
        _ => XhrStatus::InternalError,
    };
    fail(status, &e.to_string())
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, XhrStatus> {
    if s.is_null() {
        return Err(fail(XhrStatus::InvalidArgument, "null string argument"));
    }
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| fail(XhrStatus::InvalidArgument, "argument is not valid UTF-8"))
}

unsafe fn read_params(
    alpha: *const c_char,
    beta: *const c_char,
) -> Result<HrParams, XhrStatus> {
    let alpha = parse_rational(unsafe { read_str(alpha) }?).map_err(|e| fail_with(&e))?;
    let beta = parse_rational(unsafe { read_str(beta) }?).map_err(|e| fail_with(&e))?;
    Ok(HrParams::new(alpha, beta))
}

fn write_string(out: *mut *mut c_char, s: String) -> XhrStatus {
    if out.is_null() {
        return fail(XhrStatus::InvalidArgument, "null output pointer");
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            XhrStatus::Ok
        }
        Err(_) => fail(XhrStatus::InternalError, "output contained NUL"),
    }
}

fn poly_json(family: &str, n: i64, p: &LaurentPoly) -> String {
    let coeffs: Vec<(i64, String)> = p.iter().map(|(k, c)| (*k, format_rational(c))).collect();
    serde_json::json!({
        "family": family,
        "n": n,
        "degree": p.degree().unwrap_or(0),
        "coefficients": coeffs,
    })
    .to_string()
}

/// Opaque handle onto one exceptional HR family.
pub struct XhrFamily {
    inner: ExceptionalFamily,
}

/// Detail message for the most recent failure on this thread. Owned by the
/// library; valid until the next failing call.
#[no_mangle]
pub extern "C" fn xhr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through an out-parameter of this
/// library, or null.
#[no_mangle]
pub unsafe extern "C" fn xhr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Creates an exceptional-family handle for type `j0` (1..4), seed degree
/// `l0` (>= 1) and exact rational parameters (e.g. "1/2").
///
/// # Safety
/// `alpha` and `beta` must be valid NUL-terminated strings; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xhr_family_new(
    j0: u8,
    l0: u32,
    alpha: *const c_char,
    beta: *const c_char,
    out: *mut *mut XhrFamily,
) -> XhrStatus {
    if out.is_null() {
        return fail(XhrStatus::InvalidArgument, "null output pointer");
    }
    let params = match unsafe { read_params(alpha, beta) } {
        Ok(p) => p,
        Err(status) => return status,
    };
    match SeedSpec::new(j0, l0, params) {
        Ok(seed) => {
            let handle = Box::new(XhrFamily {
                inner: ExceptionalFamily::new(seed),
            });
            unsafe { *out = Box::into_raw(handle) };
            XhrStatus::Ok
        }
        Err(e) => {
            unsafe { *out = ptr::null_mut() };
            fail_with(&e)
        }
    }
}

/// Releases a family handle.
///
/// # Safety
/// `fam` must come from [`xhr_family_new`] (or be null) and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn xhr_family_free(fam: *mut XhrFamily) {
    if !fam.is_null() {
        drop(unsafe { Box::from_raw(fam) });
    }
}

unsafe fn family_ref<'a>(fam: *const XhrFamily) -> Result<&'a ExceptionalFamily, XhrStatus> {
    if fam.is_null() {
        return Err(fail(XhrStatus::InvalidArgument, "null family handle"));
    }
    Ok(unsafe { &(*fam).inner })
}

/// Writes `P^(j0,l0,n)` as a JSON record
/// `{family, n, degree, coefficients: [[exponent, "p/q"], ...]}`.
///
/// # Safety
/// `fam` must be a live handle; `out_json` must be valid. The result is
/// released with [`xhr_string_free`].
#[no_mangle]
pub unsafe extern "C" fn xhr_family_poly_json(
    fam: *const XhrFamily,
    n: i64,
    out_json: *mut *mut c_char,
) -> XhrStatus {
    let fam = match unsafe { family_ref(fam) } {
        Ok(f) => f,
        Err(s) => return s,
    };
    match fam.poly(n) {
        Ok(p) => {
            let label = format!("exceptional-{}-l{}", fam.seed().j0, fam.seed().l0);
            write_string(out_json, poly_json(&label, n, &p))
        }
        Err(e) => fail_with(&e),
    }
}

/// Writes the biorthogonal partner `Q^(j0,l0,n)` as a JSON record.
///
/// # Safety
/// As [`xhr_family_poly_json`].
#[no_mangle]
pub unsafe extern "C" fn xhr_family_partner_json(
    fam: *const XhrFamily,
    n: i64,
    out_json: *mut *mut c_char,
) -> XhrStatus {
    let fam = match unsafe { family_ref(fam) } {
        Ok(f) => f,
        Err(s) => return s,
    };
    match fam.partner(n) {
        Ok(p) => {
            let label = format!("exceptional-partner-{}-l{}", fam.seed().j0, fam.seed().l0);
            write_string(out_json, poly_json(&label, n, &p))
        }
        Err(e) => fail_with(&e),
    }
}

/// Degree of `P^(j0,l0,n)`; fails for indices outside the index set.
///
/// # Safety
/// `fam` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn xhr_family_degree(
    fam: *const XhrFamily,
    n: i64,
    out: *mut i64,
) -> XhrStatus {
    let fam = match unsafe { family_ref(fam) } {
        Ok(f) => f,
        Err(s) => return s,
    };
    if out.is_null() {
        return fail(XhrStatus::InvalidArgument, "null output pointer");
    }
    match fam.degree(n) {
        Ok(d) => {
            unsafe { *out = d };
            XhrStatus::Ok
        }
        Err(e) => fail_with(&e),
    }
}

/// The closed-form norm `h^(j0,l0)_n` (state-addition index excluded).
///
/// # Safety
/// `fam` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn xhr_family_norm(
    fam: *const XhrFamily,
    n: i64,
    out: *mut f64,
) -> XhrStatus {
    let fam = match unsafe { family_ref(fam) } {
        Ok(f) => f,
        Err(s) => return s,
    };
    if out.is_null() {
        return fail(XhrStatus::InvalidArgument, "null output pointer");
    }
    match fam.norm(n) {
        Ok(h) => {
            unsafe { *out = h };
            XhrStatus::Ok
        }
        Err(e) => fail_with(&e),
    }
}

/// Writes the classical HR polynomial `P_n(z; alpha, beta)` as a JSON record.
///
/// # Safety
/// `alpha`, `beta` must be valid strings; `out_json` as above.
#[no_mangle]
pub unsafe extern "C" fn xhr_hr_poly_json(
    alpha: *const c_char,
    beta: *const c_char,
    n: u32,
    out_json: *mut *mut c_char,
) -> XhrStatus {
    let params = match unsafe { read_params(alpha, beta) } {
        Ok(p) => p,
        Err(s) => return s,
    };
    match hr_poly(n, params.alpha(), params.beta()) {
        Ok(p) => write_string(out_json, poly_json("hr", n as i64, &p)),
        Err(e) => fail_with(&e),
    }
}

/// The classical norm `h_n` as a double.
///
/// # Safety
/// `alpha`, `beta` must be valid strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn xhr_hr_norm(
    alpha: *const c_char,
    beta: *const c_char,
    n: u32,
    out: *mut f64,
) -> XhrStatus {
    let params = match unsafe { read_params(alpha, beta) } {
        Ok(p) => p,
        Err(s) => return s,
    };
    if out.is_null() {
        return fail(XhrStatus::InvalidArgument, "null output pointer");
    }
    match params.norm(n) {
        Ok(h) => {
            unsafe { *out = h };
            XhrStatus::Ok
        }
        Err(e) => fail_with(&e),
    }
}

/// Runs a named verification suite and writes its JSON report. Returns
/// `XHR_OK` when every case passed, `XHR_VERIFICATION_FAILED` when the suite
/// ran but reported failures (the report is still written).
///
/// Suites that need a seed read `j0`/`l0`; the others ignore them. The
/// multi-step suite is driven through the CLI instead (it needs a seed list).
///
/// # Safety
/// `suite`, `alpha`, `beta` must be valid strings; `out_report_json` as
/// above.
#[no_mangle]
pub unsafe extern "C" fn xhr_verify_suite(
    suite: *const c_char,
    alpha: *const c_char,
    beta: *const c_char,
    j0: u8,
    l0: u32,
    n_max: u32,
    quad_level: u32,
    out_report_json: *mut *mut c_char,
) -> XhrStatus {
    let name = match unsafe { read_str(suite) } {
        Ok(s) => s,
        Err(s) => return s,
    };
    let params = match unsafe { read_params(alpha, beta) } {
        Ok(p) => p,
        Err(s) => return s,
    };
    if !(4..=12).contains(&quad_level) {
        return fail(XhrStatus::InvalidArgument, "quadrature level not in 4..12");
    }
    let seed = || SeedSpec::new(j0, l0, params.clone());
    let report = match name {
        "gevp" => verify::suite_gevp(&params, n_max),
        "adjoint" => verify::suite_adjoint(&params, n_max),
        "lemma31" => verify::suite_lemma31(&params, n_max),
        "cd" => verify::suite_cd(&params, n_max),
        "pearson" => verify::suite_pearson(&params, n_max),
        "moments" => verify::suite_moments(&params, n_max, quad_level, 1e-10),
        "biorth-classical" => {
            verify::suite_biorth_classical(&params, n_max, quad_level, 1e-9)
        }
        "biorth-exceptional" => match seed() {
            Ok(seed) => verify::suite_biorth_exceptional(
                seed,
                (n_max + 1) as usize,
                quad_level,
                1e-8,
            ),
            Err(e) => return fail_with(&e),
        },
        "states" => match seed() {
            Ok(seed) => verify::suite_states(seed),
            Err(e) => return fail_with(&e),
        },
        "l0-one" => verify::suite_l0_one(&params, n_max),
        other => {
            return fail(
                XhrStatus::InvalidArgument,
                &format!("unknown suite '{other}'"),
            )
        }
    };
    let ok = report.all_passed();
    let json = serde_json::to_string(&report).unwrap_or_default();
    let status = write_string(out_report_json, json);
    if status != XhrStatus::Ok {
        return status;
    }
    if ok {
        XhrStatus::Ok
    } else {
        fail(XhrStatus::VerificationFailed, "suite reported failures")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn family_lifecycle_and_poly() {
        let mut fam: *mut XhrFamily = ptr::null_mut();
        let st = unsafe {
            xhr_family_new(
                1,
                2,
                cstr("1/2").as_ptr(),
                cstr("1/3").as_ptr(),
                &mut fam,
            )
        };
        assert_eq!(st, XhrStatus::Ok);
        assert!(!fam.is_null());

        let mut json: *mut c_char = ptr::null_mut();
        let st = unsafe { xhr_family_poly_json(fam, 0, &mut json) };
        assert_eq!(st, XhrStatus::Ok);
        let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
        unsafe { xhr_string_free(json) };
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["degree"], 1);

        // deleted index reports INDEX_OUT_OF_SET with a message
        let mut json2: *mut c_char = ptr::null_mut();
        let st = unsafe { xhr_family_poly_json(fam, 2, &mut json2) };
        assert_eq!(st, XhrStatus::IndexOutOfSet);
        let msg = unsafe { CStr::from_ptr(xhr_last_error_message()) }
            .to_str()
            .unwrap();
        assert!(msg.contains("index 2"), "{msg}");

        unsafe { xhr_family_free(fam) };
    }

    #[test]
    fn classical_accessors() {
        let mut json: *mut c_char = ptr::null_mut();
        let st = unsafe {
            xhr_hr_poly_json(cstr("1/2").as_ptr(), cstr("1/3").as_ptr(), 1, &mut json)
        };
        assert_eq!(st, XhrStatus::Ok);
        let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap();
        assert!(text.contains("\"2/9\""), "{text}");
        unsafe { xhr_string_free(json) };

        let mut h = 0.0f64;
        let st = unsafe {
            xhr_hr_norm(cstr("0").as_ptr(), cstr("0").as_ptr(), 0, &mut h)
        };
        assert_eq!(st, XhrStatus::Ok);
        assert!((h - 1.0).abs() < 1e-14);
    }

    #[test]
    fn invalid_arguments_are_reported() {
        let mut fam: *mut XhrFamily = ptr::null_mut();
        let st = unsafe {
            xhr_family_new(9, 1, cstr("1/2").as_ptr(), cstr("1/3").as_ptr(), &mut fam)
        };
        assert_eq!(st, XhrStatus::InvalidArgument);
        assert!(fam.is_null());

        let st = unsafe {
            xhr_family_new(1, 1, cstr("0.5").as_ptr(), cstr("1/3").as_ptr(), &mut fam)
        };
        assert_eq!(st, XhrStatus::InvalidArgument);
        let msg = unsafe { CStr::from_ptr(xhr_last_error_message()) }
            .to_str()
            .unwrap();
        assert!(msg.contains("decimal"), "{msg}");
    }

    #[test]
    fn verify_suite_roundtrip() {
        let mut json: *mut c_char = ptr::null_mut();
        let st = unsafe {
            xhr_verify_suite(
                cstr("gevp").as_ptr(),
                cstr("2/5").as_ptr(),
                cstr("1/3").as_ptr(),
                0,
                0,
                6,
                9,
                &mut json,
            )
        };
        assert_eq!(st, XhrStatus::Ok);
        let v: serde_json::Value =
            serde_json::from_str(unsafe { CStr::from_ptr(json) }.to_str().unwrap()).unwrap();
        assert_eq!(v["failed"], 0);
        unsafe { xhr_string_free(json) };
    }

    #[test]
    fn divergent_weight_status() {
        let mut fam: *mut XhrFamily = ptr::null_mut();
        // alpha + beta = 1 violates cond_X1w_2
        let st = unsafe {
            xhr_family_new(2, 2, cstr("1/2").as_ptr(), cstr("1/2").as_ptr(), &mut fam)
        };
        assert_eq!(st, XhrStatus::Ok); // construction is fine...
        let mut h = 0.0f64;
        // ...but using the weight-dependent norm fails? the norm itself is a
        // closed form; force the condition through the verify suite instead
        let st2 = unsafe { xhr_family_norm(fam, 0, &mut h) };
        assert_eq!(st2, XhrStatus::Ok);
        let mut json: *mut c_char = ptr::null_mut();
        let st3 = unsafe {
            xhr_verify_suite(
                cstr("biorth-exceptional").as_ptr(),
                cstr("1/2").as_ptr(),
                cstr("1/2").as_ptr(),
                2,
                2,
                4,
                8,
                &mut json,
            )
        };
        assert_eq!(st3, XhrStatus::VerificationFailed);
        let v: serde_json::Value =
            serde_json::from_str(unsafe { CStr::from_ptr(json) }.to_str().unwrap()).unwrap();
        assert!(v["failures"][0].as_str().unwrap().contains("cond_X1w_2"));
        unsafe { xhr_string_free(json) };
        unsafe { xhr_family_free(fam) };
    }
}
