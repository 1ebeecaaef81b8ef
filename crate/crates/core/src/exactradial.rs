//! Exact interacting eigenfunctions of the inverted harmonic (Hubble)
//! potential: complex confluent hypergeometric evaluation and the two
//! radial branches.
//!
//! With `a^2 = m H0 / hbar` and the dimensionless energy
//! `lambda = 2 E / (hbar H0)`, the two independent l = 0 radial solutions
//! are
//!
//! ```text
//! R1(r) = exp(i a^2 r^2 / 2) 1F1(3/4 - i lambda/4; 3/2; -i a^2 r^2)
//! R2(r) = exp(i a^2 r^2 / 2) 1F1(1/4 - i lambda/4; 1/2; -i a^2 r^2) / r
//! ```
//!
//! Both are real for real `lambda` (the prefactor conjugates the series
//! under Kummer's transformation), but they are evaluated as complex
//! throughout. Evaluation is supported for `|a^2 r^2| <=`
//! [`HYP1F1_Z_MAX`]; at the astronomical ground eigenvalue (|lambda| ~
//! 10^123) these oscillatory functions are numerically useless and the
//! matched asymptotic route in [`crate::vacuummatch`] is the sanctioned
//! replacement.

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::dd::CDd;
use crate::params::{derive_scales, CosmoParams};

/// Validity radius of the Maclaurin evaluation (after the Kummer
/// transform).
///
/// The double-double accumulation absorbs the `e^{|z|}` term cancellation
/// with margin over the whole radius needed by the radial branches
/// (`a r <= 5`, so `|z| <= 25`: at least twelve significant digits,
/// measured against 40-digit arbitrary-precision references). Toward the
/// edge the floor is `n eps_dd e^{|z|}` times the Pochhammer growth of
/// `|Im alpha|`: still ten digits at `|z| = 50` for small `|Im alpha|`,
/// degrading to about four in the extreme corner `|z| = 50`,
/// `|Im alpha| = 12.5`.
pub const HYP1F1_Z_MAX: f64 = 50.0;

const MAX_SERIES_TERMS: usize = 700;
const SERIES_REL_TOL: f64 = 1e-15;

/// Arguments of `1F1(alpha; gamma; z)`.
#[derive(Clone, Copy, Debug)]
pub struct Hyp1F1Args {
    pub alpha: Complex64,
    pub gamma: Complex64,
    pub z: Complex64,
}

#[derive(Debug, Error)]
pub enum ExactRadialError {
    #[error("|z| = {abs_z:.3e} outside the series validity radius {HYP1F1_Z_MAX}; for ground-state work at astronomical lambda use the matched vacuum solutions instead")]
    OutOfValidityRange { abs_z: f64 },
    #[error("1F1 pole: gamma is a non-positive integer")]
    PoleAtGamma,
    #[error("radial coordinate out of domain: r = {r}")]
    BadRadius { r: f64 },
}

fn is_nonpositive_integer(g: Complex64) -> bool {
    g.im == 0.0 && g.re <= 0.0 && g.re == g.re.floor()
}

/// Raw Maclaurin series `sum_n (alpha)_n z^n / ((gamma)_n n!)`, summed in
/// compensated double-double arithmetic with term-ratio stopping.
///
/// No Kummer stabilisation is applied; [`hyp1f1`] is the evaluation entry
/// point and this form exists so property tests can compare the two routes
/// of Kummer's transformation independently.
pub fn hyp1f1_maclaurin(args: &Hyp1F1Args) -> Result<Complex64, ExactRadialError> {
    if is_nonpositive_integer(args.gamma) {
        return Err(ExactRadialError::PoleAtGamma);
    }
    let abs_z = args.z.norm();
    if abs_z > HYP1F1_Z_MAX {
        return Err(ExactRadialError::OutOfValidityRange { abs_z });
    }
    let alpha = CDd::from_c64(args.alpha);
    let gamma = CDd::from_c64(args.gamma);
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    let mut small_streak = 0;
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        // factors stay in double-double: their rounding would otherwise be
        // amplified by the e^{|z|} cancellation of the partial sums
        term = term
            .mul(alpha.add_f64(nf))
            .mul_c64(args.z)
            .div(gamma.add_f64(nf))
            .div_f64(nf + 1.0);
        sum = sum.add(term);
        // terms grow until n ~ |z|; only trust smallness past the hump
        if nf > abs_z && term.mag_estimate() <= SERIES_REL_TOL * sum.mag_estimate().max(1e-300) {
            small_streak += 1;
            if small_streak >= 2 {
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    Ok(sum.to_c64())
}

/// Confluent hypergeometric function `1F1(alpha; gamma; z)`.
///
/// For `Re z < 0` the Kummer transform
/// `1F1(alpha; gamma; z) = e^z 1F1(gamma - alpha; gamma; -z)` is applied
/// first so the series is always summed at non-negative real part.
pub fn hyp1f1(args: &Hyp1F1Args) -> Result<Complex64, ExactRadialError> {
    if args.z.re < 0.0 {
        let flipped = Hyp1F1Args {
            alpha: args.gamma - args.alpha,
            gamma: args.gamma,
            z: -args.z,
        };
        Ok(args.z.exp() * hyp1f1_maclaurin(&flipped)?)
    } else {
        hyp1f1_maclaurin(args)
    }
}

/// One of the two radial branches at fixed dimensionless energy.
#[derive(Clone, Copy, Debug)]
pub struct ExactRadialState {
    /// 1 or 2.
    pub branch: u8,
    /// Dimensionless energy `2 E / (hbar H0)`.
    pub lambda: f64,
    /// Scale `a = sqrt(m H0 / hbar)`, 1/m.
    pub a: f64,
}

impl ExactRadialState {
    pub fn new(branch: u8, lambda: f64, a: f64) -> Self {
        assert!(branch == 1 || branch == 2, "branch must be 1 or 2");
        assert!(a > 0.0, "scale a must be positive");
        ExactRadialState { branch, lambda, a }
    }

    /// Evaluates the radial function at `r` (metres).
    ///
    /// Branch 1 is regular at the origin (value 1); branch 2 diverges as
    /// `1/r` and requires `r > 0`.
    pub fn eval(&self, r: f64) -> Result<Complex64, ExactRadialError> {
        exact_radial(self, r)
    }

    /// Complete wavefunction `(4 pi)^{-1/2} R(r)`; angle-independent since
    /// the cosmological principle imposes l = 0.
    pub fn complete_wavefunction(
        &self,
        r: f64,
        _theta: f64,
        _phi: f64,
    ) -> Result<Complex64, ExactRadialError> {
        Ok(self.eval(r)? / (4.0 * std::f64::consts::PI).sqrt())
    }
}

/// Evaluates branch 1 or 2 of the exact radial solutions.
pub fn exact_radial(state: &ExactRadialState, r: f64) -> Result<Complex64, ExactRadialError> {
    let u2 = state.a * state.a * r * r;
    let z = Complex64::new(0.0, -u2);
    let quarter_lambda = Complex64::new(0.0, -state.lambda / 4.0);
    let phase = Complex64::new(0.0, u2 / 2.0).exp();
    match state.branch {
        1 => {
            if r < 0.0 {
                return Err(ExactRadialError::BadRadius { r });
            }
            let f = hyp1f1(&Hyp1F1Args {
                alpha: Complex64::new(0.75, 0.0) + quarter_lambda,
                gamma: Complex64::new(1.5, 0.0),
                z,
            })?;
            Ok(phase * f)
        }
        2 => {
            if r <= 0.0 {
                return Err(ExactRadialError::BadRadius { r });
            }
            let f = hyp1f1(&Hyp1F1Args {
                alpha: Complex64::new(0.25, 0.0) + quarter_lambda,
                gamma: Complex64::new(0.5, 0.0),
                z,
            })?;
            Ok(phase * f / r)
        }
        b => unreachable!("constructor enforces branch 1|2, got {b}"),
    }
}

/// Residual of the radial wave equation
/// `(1/r^2) d/dr(r^2 dR/dr) - l(l+1) R / r^2 + (2m/hbar^2)(E + k_eff r^2/2) R`
/// evaluated by fourth-order stencils with step `1e-3` in `a r` units.
///
/// `R_func` must be smooth on `[r - 2h, r + 2h]` with `r > 2h`.
pub fn radial_ode_residual<F>(
    r_func: F,
    l: u32,
    energy: f64,
    p: &CosmoParams,
    r: f64,
) -> Result<Complex64, ExactRadialError>
where
    F: Fn(f64) -> Result<Complex64, ExactRadialError>,
{
    let scales = derive_scales(p);
    let h = 1e-3 / scales.a;
    if r - 2.0 * h <= 0.0 {
        return Err(ExactRadialError::BadRadius { r });
    }
    let fm2 = r_func(r - 2.0 * h)?;
    let fm1 = r_func(r - h)?;
    let f0 = r_func(r)?;
    let f1 = r_func(r + h)?;
    let f2 = r_func(r + 2.0 * h)?;
    let d1 = (-f2 + 8.0 * f1 - 8.0 * fm1 + fm2) / (12.0 * h);
    let d2 = (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    let laplacian = d2 + 2.0 / r * d1;
    let centrifugal = (l * (l + 1)) as f64 / (r * r) * f0;
    let coupling = 2.0 * p.m / (p.hbar * p.hbar) * (energy + 0.5 * scales.k_eff * r * r) * f0;
    Ok(laplacian - centrifugal + coupling)
}
