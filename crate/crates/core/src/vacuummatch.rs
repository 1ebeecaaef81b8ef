//! Matched asymptotic vacuum state of the reduced radial equation.
//!
//! In the dimensionless variable `x = r/R0` the vacuum radial equation is
//!
//! ```text
//! (1/x^2) d/dx (x^2 f') + sigma^2 (x^2 - 1) f = 0,   x in [0, 1],
//! ```
//!
//! with every large number folded into `sigma = m H0 R0^2 / hbar`. Near
//! `x = 0` the solutions are `sinh(sigma x)/x` and `cosh(sigma x)/x`; near
//! `x = 1` they are `A/x + B`. The two pieces are joined smoothly at a
//! matching point `x0` and the joint function is the approximate vacuum
//! wavefunction. All coefficients are carried as [`LogFloat`]s since they
//! scale like `exp(sigma x0)`.
//!
//! Two matching modes exist. `PaperLeadingOrder` reproduces the printed
//! leading-order coefficients `A = -(x0 sigma/2) e^{sigma x0}`,
//! `B = (sigma/2) e^{sigma x0}` and the normalisation
//! `N = sqrt(12) sigma^{-1} e^{-sigma x0} (1-x0)^{-3/2}`, both of which
//! drop terms of relative order `1/(sigma x0)` and `e^{-2 sigma x0}`.
//! `ExactNumeric` (the default) solves the 2x2 continuity system for
//! `(A, B)` in the log domain and normalises by quadrature, which
//! quantifies exactly what the leading-order truncation gives away. Note
//! that with the leading-order coefficients the outer solution vanishes at
//! `x0` while the inner one does not; value continuity there is only
//! restored by the dropped subdominant terms, so `PaperLeadingOrder`
//! states do not assert continuity.
//!
//! The normalisation convention is the dimensionless
//! `int_0^1 (N f)^2 x^2 dx = 1` with no angular or volume factors; the
//! physical constant differs by `(4 pi R0^3)^{-1/2}`.

use thiserror::Error;

use crate::numerics::{
    integrate, integrate_log, logfloat_add, LogFloat, NumericsError, QuadratureSpec,
    DIRECT_QUADRATURE_SIGMA_MAX,
};
use crate::params::{derive_scales, CosmoParams};

/// Inner-solution parity: `sinh(sigma x)/x` or `cosh(sigma x)/x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Sinh,
    Cosh,
}

/// Coefficient source for the matched state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchMode {
    /// Leading-order printed coefficients (drops `O(1/(sigma x0))`).
    PaperLeadingOrder,
    /// Smooth matching solved in the log domain (default).
    ExactNumeric,
}

#[derive(Debug, Error)]
pub enum VacuumMatchError {
    #[error("x = {x} outside the domain (expected 0 < x <= 1)")]
    DomainX { x: f64 },
    #[error("matching point x0 = {x0} outside (0, 1]")]
    BadX0 { x0: f64 },
    #[error("sigma = {sigma} must be positive")]
    BadSigma { sigma: f64 },
    #[error("leading-order normalisation is singular at x0 = 1; use quadrature normalisation")]
    PaperNormSingularAtOne,
    #[error(transparent)]
    Quadrature(#[from] NumericsError),
}

/// `ln sinh(t)` for `t > 0`, stable for arbitrarily large `t`.
fn ln_sinh(t: f64) -> f64 {
    if t <= 30.0 {
        t.sinh().ln()
    } else {
        t - std::f64::consts::LN_2 + (-(-2.0 * t).exp()).ln_1p()
    }
}

/// `ln cosh(t)`, stable for arbitrarily large `t`.
fn ln_cosh(t: f64) -> f64 {
    if t <= 30.0 {
        t.cosh().ln()
    } else {
        t - std::f64::consts::LN_2 + (-2.0 * t).exp().ln_1p()
    }
}

/// Maps the physical problem onto `x in [0, 1]`: returns `sigma0` as a
/// [`LogFloat`]. Identical to the scale derived in [`crate::params`].
pub fn reduce(p: &CosmoParams) -> LogFloat {
    derive_scales(p).sigma0_log
}

/// Inner solution `cosh(sigma x)/x` or `sinh(sigma x)/x` in the log domain.
///
/// For `sigma x > 30` the hyperbolic is expanded as
/// `ln f = sigma x - ln 2 - ln x + ln(1 -/+ e^{-2 sigma x})`; below the
/// threshold the direct evaluation keeps the correction term exactly.
pub fn inner_solution(x: f64, sigma: f64, parity: Parity) -> Result<LogFloat, VacuumMatchError> {
    if x <= 0.0 {
        return Err(VacuumMatchError::DomainX { x });
    }
    let t = sigma * x;
    let ln_f = match parity {
        Parity::Sinh => ln_sinh(t),
        Parity::Cosh => ln_cosh(t),
    } - x.ln();
    Ok(LogFloat::from_ln(1, ln_f))
}

/// Derivative of the inner solution with respect to `x`, in the log domain.
pub fn inner_solution_dx(x: f64, sigma: f64, parity: Parity) -> Result<LogFloat, VacuumMatchError> {
    if x <= 0.0 {
        return Err(VacuumMatchError::DomainX { x });
    }
    let t = sigma * x;
    // d/dx [h(sigma x)/x] = sigma h'(t)/x - h(t)/x^2
    let (ln_h, ln_hp) = match parity {
        Parity::Sinh => (ln_sinh(t), ln_cosh(t)),
        Parity::Cosh => (ln_cosh(t), ln_sinh(t)),
    };
    let lead = LogFloat::from_ln(1, sigma.ln() + ln_hp - x.ln());
    let sub = LogFloat::from_ln(-1, ln_h - 2.0 * x.ln());
    Ok(logfloat_add(lead, sub))
}

/// Residual of the inner approximate equation
/// `(1/x^2)(x^2 f')' - sigma^2 f` for the inner solution, assembled from
/// the analytic first and second derivatives in the log domain. Vanishes
/// up to rounding since the hyperbolics solve the equation identically.
pub fn verify_inner_ode(x: f64, sigma: f64, parity: Parity) -> Result<LogFloat, VacuumMatchError> {
    if x <= 0.0 || x >= 1.0 {
        return Err(VacuumMatchError::DomainX { x });
    }
    let t = sigma * x;
    let (ln_h, ln_hp) = match parity {
        Parity::Sinh => (ln_sinh(t), ln_cosh(t)),
        Parity::Cosh => (ln_cosh(t), ln_sinh(t)),
    };
    // f'' = sigma^2 h/x - 2 sigma h'/x^2 + 2 h/x^3
    let f_dd = logfloat_add(
        logfloat_add(
            LogFloat::from_ln(1, 2.0 * sigma.ln() + ln_h - x.ln()),
            LogFloat::from_ln(
                -1,
                std::f64::consts::LN_2 + sigma.ln() + ln_hp - 2.0 * x.ln(),
            ),
        ),
        LogFloat::from_ln(1, std::f64::consts::LN_2 + ln_h - 3.0 * x.ln()),
    );
    let two_fp_over_x = inner_solution_dx(x, sigma, parity)? * LogFloat::from_f64(2.0 / x);
    let curvature = logfloat_add(f_dd, two_fp_over_x);
    let restoring = LogFloat::from_ln(1, 2.0 * sigma.ln() + ln_h - x.ln());
    Ok(curvature - restoring)
}

/// Residual of the *full* reduced equation
/// `(1/x^2)(x^2 f')' + sigma^2 (x^2 - 1) f` for the inner solution: equals
/// the neglected term `sigma^2 x^2 f` up to the rounding-level inner
/// residual.
pub fn full_reduced_ode_residual(
    x: f64,
    sigma: f64,
    parity: Parity,
) -> Result<LogFloat, VacuumMatchError> {
    let inner_res = verify_inner_ode(x, sigma, parity)?;
    let neglected = inner_solution(x, sigma, parity)? * LogFloat::from_f64(sigma * sigma * x * x);
    Ok(logfloat_add(inner_res, neglected))
}

/// Outer solution `A/x + B` via log-domain addition.
///
/// With leading-order coefficients this legitimately cancels near `x = x0`;
/// the returned value then carries the sticky cancellation flag.
pub fn outer_solution(x: f64, a_coef: LogFloat, b_coef: LogFloat) -> LogFloat {
    logfloat_add(a_coef * LogFloat::from_f64(x).recip(), b_coef)
}

/// The matched vacuum state: inner hyperbolic on `[0, x0]`, outer `A/x + B`
/// on `[x0, 1]`, with coefficients and normalisation as LogFloats.
#[derive(Clone, Copy, Debug)]
pub struct MatchedVacuumState {
    pub sigma: f64,
    pub x0: f64,
    pub parity: Parity,
    pub mode: MatchMode,
    pub a_coef: LogFloat,
    pub b_coef: LogFloat,
    /// Normalisation factor `N(x0)` under `int_0^1 (N f)^2 x^2 dx = 1`.
    pub norm: LogFloat,
}

/// Joins inner and outer solutions at `x0`.
///
/// `x0 = 1` returns a pure-inner state (`A = B = 0`, normalised by
/// quadrature regardless of mode, since the leading-order normalisation is
/// singular there).
pub fn match_vacuum(
    sigma: f64,
    x0: f64,
    parity: Parity,
    mode: MatchMode,
) -> Result<MatchedVacuumState, VacuumMatchError> {
    if sigma <= 0.0 {
        return Err(VacuumMatchError::BadSigma { sigma });
    }
    if !(x0 > 0.0 && x0 <= 1.0) {
        return Err(VacuumMatchError::BadX0 { x0 });
    }
    let (a_coef, b_coef) = if x0 == 1.0 {
        (LogFloat::ZERO, LogFloat::ZERO)
    } else {
        match mode {
            MatchMode::PaperLeadingOrder => {
                let t = sigma * x0;
                (
                    LogFloat::from_ln(-1, (x0 * sigma / 2.0).ln() + t),
                    LogFloat::from_ln(1, (sigma / 2.0).ln() + t),
                )
            }
            MatchMode::ExactNumeric => {
                // Continuity of f and f' at x0:
                //   A/x0 + B = f_in(x0),  -A/x0^2 = f_in'(x0)
                // => A = -x0^2 f_in'(x0),  B = f_in(x0) + x0 f_in'(x0).
                let f = inner_solution(x0, sigma, parity)?;
                let fp = inner_solution_dx(x0, sigma, parity)?;
                let a = -(LogFloat::from_f64(x0 * x0) * fp);
                let b = logfloat_add(f, LogFloat::from_f64(x0) * fp);
                (a, b)
            }
        }
    };
    let mut state = MatchedVacuumState {
        sigma,
        x0,
        parity,
        mode,
        a_coef,
        b_coef,
        norm: LogFloat::ONE,
    };
    // mode-consistent normalisation; the leading-order formula is singular
    // at x0 = 1, where the pure-inner state falls back to quadrature
    state.norm = if mode == MatchMode::PaperLeadingOrder && x0 < 1.0 {
        normalization(sigma, x0, parity, MatchMode::PaperLeadingOrder)?
    } else {
        normalization_quadrature(&state, &QuadratureSpec::default())?
    };
    Ok(state)
}

impl MatchedVacuumState {
    /// Evaluates the (unnormalised) matched function at `x`.
    pub fn eval(&self, x: f64) -> Result<LogFloat, VacuumMatchError> {
        if !(x > 0.0 && x <= 1.0) {
            return Err(VacuumMatchError::DomainX { x });
        }
        if x <= self.x0 {
            inner_solution(x, self.sigma, self.parity)
        } else {
            Ok(outer_solution(x, self.a_coef, self.b_coef))
        }
    }

    /// Evaluates `N f(x)`.
    pub fn eval_normalized(&self, x: f64) -> Result<LogFloat, VacuumMatchError> {
        Ok(self.eval(x)? * self.norm)
    }

    /// Derivative of the matched function at `x` (analytic per piece).
    pub fn eval_dx(&self, x: f64) -> Result<LogFloat, VacuumMatchError> {
        if !(x > 0.0 && x <= 1.0) {
            return Err(VacuumMatchError::DomainX { x });
        }
        if x <= self.x0 {
            inner_solution_dx(x, self.sigma, self.parity)
        } else {
            Ok(-(self.a_coef * LogFloat::from_f64(x * x).recip()))
        }
    }
}

/// Outer coefficients divided by their natural scale `sigma e^{sigma x0}`,
/// in closed form so no large-log subtraction is ever needed. Exact for
/// every sigma including the astronomical regime.
fn scaled_outer_coefficients(sigma: f64, x0: f64, parity: Parity, mode: MatchMode) -> (f64, f64) {
    match mode {
        MatchMode::PaperLeadingOrder => (-x0 / 2.0, 0.5),
        MatchMode::ExactNumeric => {
            let em = (-2.0 * sigma * x0).exp(); // underflows harmlessly at large sigma x0
            match parity {
                Parity::Sinh => (
                    (1.0 - em) / (2.0 * sigma) - x0 * (1.0 + em) / 2.0,
                    (1.0 + em) / 2.0,
                ),
                Parity::Cosh => (
                    (1.0 + em) / (2.0 * sigma) - x0 * (1.0 - em) / 2.0,
                    (1.0 - em) / 2.0,
                ),
            }
        }
    }
}

/// Moments `int_0^1 f^2 x^{2+j} dx` for `j = 0` and `j = 2`, both relative
/// to the common factor `e^{2 sigma x0}`.
///
/// The inner piece is integrated in the boundary-layer variable
/// `t = sigma (x0 - x)` with the peak factored out; the outer piece uses
/// the coefficients pre-divided by `sigma e^{sigma x0}`. Keeping the huge
/// common factor symbolic is what lets ratios of moments (normalisation
/// checks, `<x^2>`) stay meaningful at astronomical sigma, where an
/// `ln`-magnitude of order 10^123 would otherwise swallow O(1) factors in
/// its floating-point ULP.
fn relative_moments(
    state: &MatchedVacuumState,
    spec: &QuadratureSpec,
) -> Result<[LogFloat; 2], VacuumMatchError> {
    let MatchedVacuumState {
        sigma, x0, parity, ..
    } = *state;
    let sgn = match parity {
        Parity::Sinh => -1.0,
        Parity::Cosh => 1.0,
    };
    let t_max = (sigma * x0).min(45.0);
    let (a_hat, b_hat) = scaled_outer_coefficients(sigma, x0, parity, state.mode);

    let mut out = [LogFloat::ZERO; 2];
    for (slot, j) in out.iter_mut().zip([0i32, 2]) {
        // inner: e^{2 sigma x0} / sigma * int_0^{t_max} ((e^{-t} -/+ e^{t-2 sigma x0})/2)^2 x(t)^j dt
        let inner_scaled = integrate(
            move |t: f64| {
                let rescaled = 0.5 * ((-t).exp() + sgn * (t - 2.0 * sigma * x0).exp());
                let x = x0 - t / sigma;
                rescaled * rescaled * x.powi(j)
            },
            0.0,
            t_max,
            spec,
        )?;
        let inner = LogFloat::from_f64(inner_scaled) / LogFloat::from_f64(sigma);

        // outer: sigma^2 * int_{x0}^1 (a_hat/x + b_hat)^2 x^{2+j} dx
        let outer = if x0 >= 1.0 {
            LogFloat::ZERO
        } else {
            let v = integrate(
                move |x: f64| (a_hat / x + b_hat).powi(2) * x.powi(2 + j),
                x0,
                1.0,
                spec,
            )?;
            LogFloat::from_ln(1, 2.0 * sigma.ln()) * LogFloat::from_f64(v)
        };
        *slot = logfloat_add(inner, outer);
    }
    Ok(out)
}

/// `int_0^1 f^2 x^{2+j} dx` for the matched state, `j in {0, 2}`.
///
/// Direct `f64` quadrature (outer piece via [`integrate_log`]) for
/// `sigma <=` [`DIRECT_QUADRATURE_SIGMA_MAX`]; otherwise assembled from
/// [`relative_moments`]. Note that at astronomical sigma the returned
/// ln-magnitude is `2 sigma x0` up to its own ULP, which is the best any
/// log-of-double representation can do.
fn weighted_moment(
    state: &MatchedVacuumState,
    j: i32,
    spec: &QuadratureSpec,
) -> Result<LogFloat, VacuumMatchError> {
    assert!(j == 0 || j == 2, "moments used here are j = 0 and j = 2");
    let MatchedVacuumState {
        sigma,
        x0,
        parity,
        a_coef,
        b_coef,
        ..
    } = *state;

    if sigma <= DIRECT_QUADRATURE_SIGMA_MAX {
        let hyper = move |t: f64| match parity {
            Parity::Sinh => t.sinh(),
            Parity::Cosh => t.cosh(),
        };
        // f^2 x^2 = h(sigma x)^2, weight x^j on top
        let inner = integrate(
            move |x: f64| hyper(sigma * x).powi(2) * x.powi(j),
            0.0,
            x0,
            spec,
        )?;
        let outer = if x0 >= 1.0 {
            LogFloat::ZERO
        } else {
            integrate_log(
                move |x: f64| {
                    outer_solution(x, a_coef, b_coef).powi(2) * LogFloat::from_f64(x.powi(2 + j))
                },
                x0,
                1.0,
                spec,
            )?
        };
        return Ok(logfloat_add(LogFloat::from_f64(inner), outer));
    }

    let rel = relative_moments(state, spec)?;
    let idx = if j == 0 { 0 } else { 1 };
    Ok(LogFloat::exp_of(2.0 * sigma * x0) * rel[idx])
}

/// Normalisation factor of a matched state under the stated mode.
///
/// Leading-order mode evaluates
/// `N = sqrt(12) sigma^{-1} e^{-sigma x0} (1 - x0)^{-3/2}` and is singular
/// at `x0 = 1`; quadrature mode returns `(int_0^1 f^2 x^2 dx)^{-1/2}`.
pub fn normalization(
    sigma: f64,
    x0: f64,
    parity: Parity,
    mode: MatchMode,
) -> Result<LogFloat, VacuumMatchError> {
    if mode == MatchMode::PaperLeadingOrder {
        if x0 >= 1.0 {
            return Err(VacuumMatchError::PaperNormSingularAtOne);
        }
        return Ok(LogFloat::from_ln(
            1,
            0.5 * 12f64.ln() - sigma.ln() - sigma * x0 - 1.5 * (1.0 - x0).ln(),
        ));
    }
    let state = match_vacuum(sigma, x0, parity, MatchMode::ExactNumeric)?;
    normalization_quadrature(&state, &QuadratureSpec::default())
}

/// Quadrature normalisation `(int_0^1 f^2 x^2 dx)^{-1/2}` of any matched
/// state, regardless of the mode its coefficients came from. This is the
/// oracle the leading-order formula is judged against.
pub fn normalization_quadrature(
    state: &MatchedVacuumState,
    spec: &QuadratureSpec,
) -> Result<LogFloat, VacuumMatchError> {
    Ok(weighted_moment(state, 0, spec)?.powf(-0.5))
}

/// Closed-form `<x^2>(x0) = (x0^2 + 3 x0 + 6)/10` of the matched state in
/// the large-sigma limit. Regular on the whole interval, `<x^2>(1) = 1`.
pub fn x2_closed(x0: f64) -> f64 {
    assert!((0.0..=1.0).contains(&x0), "x0 must lie in [0, 1]");
    (x0 * x0 + 3.0 * x0 + 6.0) / 10.0
}

/// `<x^2>` by quadrature: `int f^2 x^4 dx / int f^2 x^2 dx`.
///
/// The independent oracle for [`x2_closed`]; differs from it by `O(1/sigma)`
/// at finite sigma. Above the direct-quadrature cap the ratio is formed
/// from moments relative to the shared `e^{2 sigma x0}` peak so it stays
/// exact at any sigma.
pub fn x2_quadrature(
    state: &MatchedVacuumState,
    spec: &QuadratureSpec,
) -> Result<f64, VacuumMatchError> {
    if state.sigma <= DIRECT_QUADRATURE_SIGMA_MAX {
        let num = weighted_moment(state, 2, spec)?;
        let den = weighted_moment(state, 0, spec)?;
        Ok((num / den).to_f64())
    } else {
        let [den, num] = relative_moments(state, spec)?;
        Ok((num / den).to_f64())
    }
}

/// Nonperturbative gravitational entropy `N sigma0 <x^2>(x0)` in units of
/// `kB`, evaluated with the closed form. At `x0 = 1` this coincides with
/// the perturbative plane-wave estimate as an identical [`LogFloat`].
pub fn grav_entropy_nonperturbative(p: &CosmoParams, x0: f64, n_factor: f64) -> LogFloat {
    assert!(n_factor > 0.0, "N factor must be positive");
    assert!(
        (0.0..=1.0).contains(&x0) && x0 > 0.0,
        "x0 must lie in (0, 1]"
    );
    derive_scales(p).sigma0_log * LogFloat::from_f64(n_factor) * LogFloat::from_f64(x2_closed(x0))
}
