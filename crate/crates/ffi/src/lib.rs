//! C ABI over the cosmo-entropy library.
//!
//! Conventions: every fallible call returns a [`CosmoStatus`] and writes its
//! result through out-pointers; parameter sets travel as opaque
//! [`CosmoParamsHandle`]s created from JSON (or the built-in profiles) and
//! released with [`cosmo_params_free`]. Values that can exceed double range
//! are returned as [`CosmoLogValue`] (sign, natural-log magnitude, log10).
//! No call panics across the boundary.
//!
//! Argument guards use negated comparisons on purpose so NaN inputs fall
//! into the invalid-argument path.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cosmo_entropy::exactradial::{exact_radial, hyp1f1, ExactRadialState, Hyp1F1Args};
use cosmo_entropy::freewaves::{grav_entropy_plane, grav_entropy_spherical};
use cosmo_entropy::numerics::{LogFloat, QuadratureSpec};
use cosmo_entropy::params::{
    derive_scales, load_params, radius_for_entropy, CosmoParams, PLANCK2015_PROFILE_JSON,
    UNIT_PROFILE_JSON,
};
use cosmo_entropy::vacuummatch::{
    grav_entropy_nonperturbative, match_vacuum, x2_closed, x2_quadrature, MatchMode, Parity,
};
use num_complex::Complex64;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosmoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    NumericalError = 4,
}

/// Opaque parameter set; create via `cosmo_params_*`, release via
/// [`cosmo_params_free`].
pub struct CosmoParamsHandle {
    inner: CosmoParams,
}

/// A possibly huge positive-or-negative value in log representation:
/// `value = sign * exp(ln_mag)`, with `log10 = ln_mag / ln(10)`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct CosmoLogValue {
    pub sign: i8,
    pub ln_mag: f64,
    pub log10: f64,
}

impl From<LogFloat> for CosmoLogValue {
    fn from(v: LogFloat) -> Self {
        CosmoLogValue {
            sign: v.sign(),
            ln_mag: v.ln_mag(),
            log10: v.log10(),
        }
    }
}

/// Dimensionless scales derived from a parameter set. `sigma0` may be
/// `+inf` in double precision; the log representation is always finite.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct CosmoScales {
    pub lambda0: f64,
    pub sigma0: f64,
    pub sigma0_log: CosmoLogValue,
    pub a: f64,
    pub e0: f64,
    pub k_eff: f64,
}

/// Inner-solution parity selector for matched-vacuum calls.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosmoParity {
    Sinh = 0,
    Cosh = 1,
}

/// Matching-mode selector for matched-vacuum calls.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosmoMatchMode {
    ExactNumeric = 0,
    PaperLeadingOrder = 1,
}

fn guarded<F: FnOnce() -> CosmoStatus>(f: F) -> CosmoStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(CosmoStatus::NumericalError)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> CosmoStatus {
    if out.is_null() {
        return CosmoStatus::NullPointer;
    }
    unsafe { out.write(value) };
    CosmoStatus::Ok
}

fn params_from_text(text: &str, out: *mut *mut CosmoParamsHandle) -> CosmoStatus {
    match load_params(text) {
        Ok(p) => {
            let handle = Box::new(CosmoParamsHandle { inner: p });
            unsafe { write_out(out, Box::into_raw(handle)) }
        }
        Err(_) => CosmoStatus::ParseError,
    }
}

/// Parses a UTF-8 JSON profile document into a new handle.
///
/// # Safety
/// `json` must point to a NUL-terminated string; `out` must be a valid
/// pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn cosmo_params_from_json(
    json: *const c_char,
    out: *mut *mut CosmoParamsHandle,
) -> CosmoStatus {
    if json.is_null() || out.is_null() {
        return CosmoStatus::NullPointer;
    }
    let text = match unsafe { CStr::from_ptr(json) }.to_str() {
        Ok(t) => t,
        Err(_) => return CosmoStatus::ParseError,
    };
    guarded(|| params_from_text(text, out))
}

/// Creates a handle holding the built-in `planck2015` profile.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn cosmo_params_planck2015(out: *mut *mut CosmoParamsHandle) -> CosmoStatus {
    guarded(|| params_from_text(PLANCK2015_PROFILE_JSON, out))
}

/// Creates a handle holding the built-in all-ones profile.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn cosmo_params_unit(out: *mut *mut CosmoParamsHandle) -> CosmoStatus {
    guarded(|| params_from_text(UNIT_PROFILE_JSON, out))
}

/// Releases a handle returned by one of the `cosmo_params_*` constructors.
/// A null pointer is a no-op.
///
/// # Safety
/// `handle` must have been produced by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn cosmo_params_free(handle: *mut CosmoParamsHandle) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Derives the dimensionless scales of a parameter set.
///
/// # Safety
/// `handle` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cosmo_derive_scales(
    handle: *const CosmoParamsHandle,
    out: *mut CosmoScales,
) -> CosmoStatus {
    if handle.is_null() {
        return CosmoStatus::NullPointer;
    }
    let p = unsafe { &(*handle).inner };
    guarded(|| {
        let s = derive_scales(p);
        unsafe {
            write_out(
                out,
                CosmoScales {
                    lambda0: s.lambda0,
                    sigma0: s.sigma0,
                    sigma0_log: s.sigma0_log.into(),
                    a: s.a,
                    e0: s.e0,
                    k_eff: s.k_eff,
                },
            )
        }
    })
}

/// Radius of a universe with entropy scale `sigma`:
/// `R = sqrt(sigma hbar / (m H0))` in metres.
///
/// # Safety
/// `handle` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cosmo_radius_for_entropy(
    handle: *const CosmoParamsHandle,
    sigma: f64,
    out: *mut f64,
) -> CosmoStatus {
    if handle.is_null() {
        return CosmoStatus::NullPointer;
    }
    if !(sigma > 0.0) {
        return CosmoStatus::InvalidArgument;
    }
    let p = unsafe { &(*handle).inner };
    guarded(|| unsafe { write_out(out, radius_for_entropy(sigma, p)) })
}

/// Plane-wave gravitational entropy `N m H0 R0^2 / hbar` in units of `kB`.
///
/// # Safety
/// `handle` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cosmo_grav_entropy_plane(
    handle: *const CosmoParamsHandle,
    n_factor: f64,
    out: *mut CosmoLogValue,
) -> CosmoStatus {
    if handle.is_null() {
        return CosmoStatus::NullPointer;
    }
    if !(n_factor > 0.0) {
        return CosmoStatus::InvalidArgument;
    }
    let p = unsafe { &(*handle).inner };
    guarded(|| unsafe { write_out(out, grav_entropy_plane(p, n_factor).into()) })
}

/// Spherical-wave gravitational entropy `N m H0 R0^2 / (3 hbar)` in `kB`.
///
/// # Safety
/// `handle` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cosmo_grav_entropy_spherical(
    handle: *const CosmoParamsHandle,
    n_factor: f64,
    out: *mut CosmoLogValue,
) -> CosmoStatus {
    if handle.is_null() {
        return CosmoStatus::NullPointer;
    }
    if !(n_factor > 0.0) {
        return CosmoStatus::InvalidArgument;
    }
    let p = unsafe { &(*handle).inner };
    guarded(|| unsafe { write_out(out, grav_entropy_spherical(p, n_factor).into()) })
}

/// Nonperturbative gravitational entropy `N sigma0 <x^2>(x0)` in `kB`; at
/// `x0 = 1` bit-identical to the plane-wave value.
///
/// # Safety
/// `handle` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cosmo_grav_entropy_nonperturbative(
    handle: *const CosmoParamsHandle,
    x0: f64,
    n_factor: f64,
    out: *mut CosmoLogValue,
) -> CosmoStatus {
    if handle.is_null() {
        return CosmoStatus::NullPointer;
    }
    if !(n_factor > 0.0) || !(x0 > 0.0 && x0 <= 1.0) {
        return CosmoStatus::InvalidArgument;
    }
    let p = unsafe { &(*handle).inner };
    guarded(|| unsafe { write_out(out, grav_entropy_nonperturbative(p, x0, n_factor).into()) })
}

/// Closed-form `<x^2>(x0) = (x0^2 + 3 x0 + 6)/10`.
///
/// # Safety
/// `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cosmo_x2_closed(x0: f64, out: *mut f64) -> CosmoStatus {
    if !(0.0..=1.0).contains(&x0) {
        return CosmoStatus::InvalidArgument;
    }
    guarded(|| unsafe { write_out(out, x2_closed(x0)) })
}

/// `<x^2>` of the matched vacuum state by quadrature; valid at any sigma,
/// including the astronomical regime.
///
/// # Safety
/// `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cosmo_x2_quadrature(
    sigma: f64,
    x0: f64,
    parity: CosmoParity,
    mode: CosmoMatchMode,
    out: *mut f64,
) -> CosmoStatus {
    if !(sigma > 0.0) || !(x0 > 0.0 && x0 <= 1.0) {
        return CosmoStatus::InvalidArgument;
    }
    let parity = match parity {
        CosmoParity::Sinh => Parity::Sinh,
        CosmoParity::Cosh => Parity::Cosh,
    };
    let mode = match mode {
        CosmoMatchMode::ExactNumeric => MatchMode::ExactNumeric,
        CosmoMatchMode::PaperLeadingOrder => MatchMode::PaperLeadingOrder,
    };
    guarded(|| {
        let state = match match_vacuum(sigma, x0, parity, mode) {
            Ok(s) => s,
            Err(_) => return CosmoStatus::NumericalError,
        };
        match x2_quadrature(&state, &QuadratureSpec::default()) {
            Ok(v) => unsafe { write_out(out, v) },
            Err(_) => CosmoStatus::NumericalError,
        }
    })
}

/// Confluent hypergeometric function `1F1(alpha; gamma; z)` for complex
/// arguments within the documented validity radius.
///
/// # Safety
/// `out_re` and `out_im` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cosmo_hyp1f1(
    alpha_re: f64,
    alpha_im: f64,
    gamma_re: f64,
    gamma_im: f64,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> CosmoStatus {
    if out_re.is_null() || out_im.is_null() {
        return CosmoStatus::NullPointer;
    }
    guarded(|| {
        let args = Hyp1F1Args {
            alpha: Complex64::new(alpha_re, alpha_im),
            gamma: Complex64::new(gamma_re, gamma_im),
            z: Complex64::new(z_re, z_im),
        };
        match hyp1f1(&args) {
            Ok(v) => unsafe {
                out_re.write(v.re);
                out_im.write(v.im);
                CosmoStatus::Ok
            },
            Err(_) => CosmoStatus::InvalidArgument,
        }
    })
}

/// Exact interacting radial solution (branch 1 or 2) at radius `r`.
///
/// # Safety
/// `out_re` and `out_im` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cosmo_exact_radial(
    branch: u8,
    lambda: f64,
    a: f64,
    r: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> CosmoStatus {
    if out_re.is_null() || out_im.is_null() {
        return CosmoStatus::NullPointer;
    }
    if !(branch == 1 || branch == 2) || !(a > 0.0) {
        return CosmoStatus::InvalidArgument;
    }
    guarded(|| {
        let state = ExactRadialState::new(branch, lambda, a);
        match exact_radial(&state, r) {
            Ok(v) => unsafe {
                out_re.write(v.re);
                out_im.write(v.im);
                CosmoStatus::Ok
            },
            Err(_) => CosmoStatus::InvalidArgument,
        }
    })
}

/// Static human-readable message for a status code. Do not free.
#[no_mangle]
pub extern "C" fn cosmo_status_message(status: CosmoStatus) -> *const c_char {
    let s: &'static str = match status {
        CosmoStatus::Ok => "ok\0",
        CosmoStatus::NullPointer => "null pointer argument\0",
        CosmoStatus::InvalidArgument => "invalid argument\0",
        CosmoStatus::ParseError => "profile parse error\0",
        CosmoStatus::NumericalError => "numerical failure\0",
    };
    s.as_ptr() as *const c_char
}

/// Library version as a static string. Do not free.
#[no_mangle]
pub extern "C" fn cosmo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_messages_are_nul_terminated_statics() {
        for status in [
            CosmoStatus::Ok,
            CosmoStatus::NullPointer,
            CosmoStatus::InvalidArgument,
            CosmoStatus::ParseError,
            CosmoStatus::NumericalError,
        ] {
            let msg = unsafe { CStr::from_ptr(cosmo_status_message(status)) };
            assert!(!msg.to_str().unwrap().is_empty());
        }
        let v = unsafe { CStr::from_ptr(cosmo_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
