//! Free plane and spherical waves and the perturbative entropy operators.
//!
//! Box conventions matter here and are fixed once and for all: the cubic box
//! is anchored at the origin, `[0, R0]^3`, which is the convention under
//! which the plane-wave expectation `<X^2+Y^2+Z^2>` equals `R0^2` (a box
//! centred on the origin would give `R0^2/4`). The spherical box is the ball
//! of radius `R0`.
//!
//! The gravitational entropy operator is `N * (kB m H0 / hbar) * R^2` with
//! `N` a free dimensionless factor; its expectation values are returned in
//! units of `kB` as [`LogFloat`]s since they reach 10^123 for cosmological
//! inputs. The matter entropy operator is `2 kB ln A`, Boltzmann's principle
//! applied to the wavefunction amplitude.

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::{integrate, LogFloat, NumericsError, QuadratureSpec};
use crate::params::{derive_scales, CosmoParams};

/// The `paper-plane` preset factor, 1/2.6.
pub const N_FACTOR_PAPER_PLANE: f64 = 1.0 / 2.6;
/// The `paper-spherical` preset factor, 3/2.6.
pub const N_FACTOR_PAPER_SPHERICAL: f64 = 3.0 / 2.6;

/// Plane wave `R0^{-3/2} exp(i k.r)` normalised in the box `[0, R0]^3`.
#[derive(Clone, Copy, Debug)]
pub struct PlaneWaveState {
    /// Wavevector, 1/m.
    pub k: [f64; 3],
    /// Box side, m.
    pub r0: f64,
}

/// Spherical wave `(4 pi R0)^{-1/2} exp(i s kappa r) / r` normalised in the
/// ball of radius `R0`; `sign` selects one of the two independent solutions.
#[derive(Clone, Copy, Debug)]
pub struct SphericalWaveState {
    /// Radial wavenumber modulus, 1/m.
    pub kappa: f64,
    /// Ball radius, m.
    pub r0: f64,
    /// +1 or -1.
    pub sign: i8,
}

#[derive(Debug, Error)]
pub enum FreeWaveError {
    #[error("spherical wave undefined at r = 0")]
    OriginSingularity,
    #[error(transparent)]
    Quadrature(#[from] NumericsError),
}

impl PlaneWaveState {
    pub fn new(k: [f64; 3], r0: f64) -> Self {
        assert!(r0 > 0.0, "box side must be positive");
        PlaneWaveState { k, r0 }
    }

    /// Evaluates the wavefunction at a point of the box.
    pub fn eval(&self, r: [f64; 3]) -> Complex64 {
        let phase = self.k[0] * r[0] + self.k[1] * r[1] + self.k[2] * r[2];
        self.r0.powf(-1.5) * Complex64::new(0.0, phase).exp()
    }

    /// Matter entropy operator `2 ln A` in units of `kB`; constant in space.
    pub fn matter_entropy_at(&self) -> f64 {
        -3.0 * self.r0.ln()
    }

    /// Expectation of the matter entropy operator; exact for the constant
    /// amplitude.
    pub fn matter_entropy_expectation(&self) -> MatterEntropy {
        MatterEntropy {
            r0_part: -3.0 * self.r0.ln(),
            constant: 0.0,
        }
    }
}

impl SphericalWaveState {
    pub fn new(kappa: f64, r0: f64, sign: i8) -> Self {
        assert!(r0 > 0.0, "ball radius must be positive");
        assert!(sign == 1 || sign == -1, "sign selects one of two branches");
        SphericalWaveState { kappa, r0, sign }
    }

    pub fn eval(&self, r: f64) -> Result<Complex64, FreeWaveError> {
        if r <= 0.0 {
            return Err(FreeWaveError::OriginSingularity);
        }
        let norm = 1.0 / (4.0 * std::f64::consts::PI * self.r0).sqrt();
        Ok(norm / r * Complex64::new(0.0, self.sign as f64 * self.kappa * r).exp())
    }

    /// Matter entropy operator `2 ln A = -2 ln r - ln(4 pi R0)` in `kB`.
    pub fn matter_entropy_at(&self, r: f64) -> Result<f64, FreeWaveError> {
        if r <= 0.0 {
            return Err(FreeWaveError::OriginSingularity);
        }
        Ok(-2.0 * r.ln() - (4.0 * std::f64::consts::PI * self.r0).ln())
    }

    /// Expectation of the matter entropy operator, computed by quadrature of
    /// `-2 ln r` against the radial density `|psi|^2 4 pi r^2 = 1/R0`.
    ///
    /// The result splits into the `R0`-dependent part `-3 ln R0` and the
    /// `R0`-independent constant `2 - ln(4 pi)`.
    pub fn matter_entropy_expectation(
        &self,
        spec: &QuadratureSpec,
    ) -> Result<MatterEntropy, FreeWaveError> {
        let r0 = self.r0;
        let mean_ln = integrate(|r: f64| -2.0 * r.ln() / r0, 0.0, r0, spec)?;
        let total = mean_ln - (4.0 * std::f64::consts::PI * r0).ln();
        let r0_part = -3.0 * r0.ln();
        Ok(MatterEntropy {
            r0_part,
            constant: total - r0_part,
        })
    }
}

/// Matter entropy expectation split into the `R0`-dependent part and the
/// additive constant that does not depend on `R0`.
#[derive(Clone, Copy, Debug)]
pub struct MatterEntropy {
    /// `-3 ln R0`, in units of `kB`.
    pub r0_part: f64,
    /// Residual constant, in units of `kB`.
    pub constant: f64,
}

impl MatterEntropy {
    pub fn total(&self) -> f64 {
        self.r0_part + self.constant
    }
}

/// Expectation of the gravitational entropy operator in the cubic-box plane
/// wave: `N m H0 R0^2 / hbar` in units of `kB`.
pub fn grav_entropy_plane(p: &CosmoParams, n_factor: f64) -> LogFloat {
    assert!(n_factor > 0.0, "N factor must be positive");
    derive_scales(p).sigma0_log * LogFloat::from_f64(n_factor)
}

/// Expectation of the gravitational entropy operator in the spherical-box
/// wave: `N m H0 R0^2 / (3 hbar)` in units of `kB`. Exactly one third of the
/// plane-wave value for equal `N`.
pub fn grav_entropy_spherical(p: &CosmoParams, n_factor: f64) -> LogFloat {
    grav_entropy_plane(p, n_factor) / LogFloat::from_f64(3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn plane_wave_values() {
        let s = PlaneWaveState::new([0.0; 3], 2.0);
        let v = s.eval([0.3, 1.0, 1.7]);
        assert!((v.re - 2f64.powf(-1.5)).abs() < 1e-15 && v.im == 0.0);

        // e^{i pi} = -1 at the far face
        let s = PlaneWaveState::new([PI / 2.0, 0.0, 0.0], 2.0);
        let v = s.eval([2.0, 0.0, 0.0]);
        assert!((v.re + 2f64.powf(-1.5)).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn plane_wave_density_is_constant() {
        let s = PlaneWaveState::new([1.0, -2.0, 0.5], 3.0);
        for r in [[0.1, 0.2, 0.3], [2.9, 1.0, 0.0], [1.5, 1.5, 1.5]] {
            assert!((s.eval(r).norm_sqr() - 3f64.powi(-3)).abs() < 1e-17);
        }
    }

    #[test]
    fn spherical_wave_values() {
        let s = SphericalWaveState::new(0.0, 1.0, 1);
        let v = s.eval(0.5).unwrap();
        assert!((v.re - (4.0 * PI).sqrt().recip() / 0.5).abs() < 1e-15);

        let s = SphericalWaveState::new(PI, 1.0, 1);
        let v = s.eval(1.0).unwrap();
        assert!((v.re + (4.0 * PI).sqrt().recip()).abs() < 1e-15);
        assert!(v.im.abs() < 1e-12);

        assert!(matches!(s.eval(0.0), Err(FreeWaveError::OriginSingularity)));
    }

    #[test]
    fn spherical_shell_density_is_constant() {
        // |psi|^2 4 pi r^2 = 1/R0 independent of r
        let s = SphericalWaveState::new(2.5, 7.0, -1);
        for r in [0.01, 1.0, 6.9] {
            let shell = s.eval(r).unwrap().norm_sqr() * 4.0 * PI * r * r;
            assert!((shell - 1.0 / 7.0).abs() < 1e-15);
        }
    }

    #[test]
    fn grav_entropy_unit_params() {
        let p = CosmoParams::unit();
        assert!(grav_entropy_plane(&p, 1.0).ln_mag().abs() < 1e-15);
        assert!(grav_entropy_spherical(&p, 3.0).ln_mag().abs() < 1e-12);
    }

    #[test]
    fn grav_entropy_planck_presets() {
        let p = CosmoParams::planck2015();
        let plane = grav_entropy_plane(&p, N_FACTOR_PAPER_PLANE);
        let spherical = grav_entropy_spherical(&p, N_FACTOR_PAPER_SPHERICAL);
        assert!((plane.log10() - 123.0).abs() < 0.05, "{}", plane.log10());
        assert!(
            (spherical.log10() - 123.0).abs() < 0.05,
            "{}",
            spherical.log10()
        );
    }

    #[test]
    fn plane_to_spherical_ratio_is_three() {
        let p = CosmoParams::planck2015();
        let ratio = grav_entropy_plane(&p, 1.0) / grav_entropy_spherical(&p, 1.0);
        assert!((ratio.to_f64() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn plane_r2_quadrature_oracle() {
        // per-axis: R0^{-3} * R0^2 * int_0^R0 x^2 dx = R0^2/3 for each of 3 axes
        let spec = QuadratureSpec::default();
        let r0 = 1.0;
        let per_axis = integrate(|x| x * x, 0.0, r0, &spec).unwrap() * r0.powi(-3) * r0 * r0;
        let total = 3.0 * per_axis;
        assert!((total - r0 * r0).abs() < 1e-10);
    }

    #[test]
    fn spherical_r2_quadrature_oracle() {
        // 4 pi int_0^R0 |psi|^2 r^2 * r^2 dr = R0^2 / 3
        let spec = QuadratureSpec::default();
        let s = SphericalWaveState::new(5.0, 1.0, 1);
        let v = integrate(
            |r| s.eval(r).unwrap().norm_sqr() * 4.0 * PI * r.powi(4),
            0.0,
            1.0,
            &spec,
        )
        .unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn matter_entropy_operator_values() {
        assert_eq!(
            PlaneWaveState::new([1.0, 0.0, 0.0], 1.0).matter_entropy_at(),
            0.0
        );
        let r0 = 5.0;
        assert!(
            (PlaneWaveState::new([0.0; 3], r0).matter_entropy_at() + 3.0 * r0.ln()).abs() < 1e-15
        );
        let s = SphericalWaveState::new(1.0, 1.0, 1);
        assert!((s.matter_entropy_at(1.0).unwrap() + (4.0 * PI).ln()).abs() < 1e-15);
    }

    #[test]
    fn matter_entropy_expectations() {
        // plane, R0 = e -> -3
        let plane = PlaneWaveState::new([0.0; 3], std::f64::consts::E);
        assert!((plane.matter_entropy_expectation().total() + 3.0).abs() < 1e-14);

        let spec = QuadratureSpec::default();
        // spherical, R0 = 1: r0 part 0, constant 2 - ln(4 pi)
        let s = SphericalWaveState::new(1.0, 1.0, 1);
        let me = s.matter_entropy_expectation(&spec).unwrap();
        assert!(me.r0_part.abs() < 1e-15);
        assert!((me.constant - (2.0 - (4.0 * PI).ln())).abs() < 1e-10);
        assert!((me.constant + 0.5310242469692907).abs() < 1e-10);

        // spherical, R0 = 10: r0 part -3 ln 10, same constant
        let s = SphericalWaveState::new(1.0, 10.0, 1);
        let me10 = s.matter_entropy_expectation(&spec).unwrap();
        assert!((me10.r0_part + 3.0 * 10f64.ln()).abs() < 1e-12);
        assert!((me10.constant - me.constant).abs() < 1e-9);
    }
}
