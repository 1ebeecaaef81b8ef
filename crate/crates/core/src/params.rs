//! Cosmological inputs and the dimensionless scales derived from them.
//!
//! The mechanical data are the Hubble constant `H0`, the radius `R0` of the
//! observable Universe and the total matter mass `m` (baryonic plus dark).
//! Everything of interest downstream is a combination of these three and
//! `hbar`: the entropy scale `sigma0 = m H0 R0^2 / hbar`, the ground energy
//! `E0 = -m H0^2 R0^2 / 2`, the effective spring constant `k_eff = m H0^2`
//! and the inverse length `a = sqrt(m H0 / hbar)`.

use serde::Deserialize;
use thiserror::Error;

use crate::numerics::LogFloat;

/// CODATA reduced Planck constant, J s.
pub const HBAR_SI: f64 = 1.054571817e-34;
/// CODATA Boltzmann constant, J/K.
pub const KB_SI: f64 = 1.380649e-23;
/// Metres per megaparsec, used for the km/s/Mpc form of `H0`.
pub const METERS_PER_MPC: f64 = 3.0857e22;

/// Default profile shipped with the crate; `m` is back-solved so that
/// `sigma0 = 2.6e123` (see the provenance note inside the file).
pub const PLANCK2015_PROFILE_JSON: &str = include_str!("../../../profiles/planck2015.json");
/// All-ones profile for desk-scale checks.
pub const UNIT_PROFILE_JSON: &str = include_str!("../../../profiles/unit.json");

/// Physical inputs in SI units. All fields are strictly positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosmoParams {
    /// Hubble constant, 1/s.
    pub h0: f64,
    /// Radius of the observable Universe, m.
    pub r0: f64,
    /// Total matter mass, kg.
    pub m: f64,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Boltzmann constant, J/K.
    pub kb: f64,
}

/// Scales derived from [`CosmoParams`].
///
/// `sigma0` is carried three ways: as a plain double (permitted to be
/// `+inf`), as a [`LogFloat`], and as `log10`. The identity
/// `sigma0 == -lambda0` holds bit-for-bit.
#[derive(Clone, Copy, Debug)]
pub struct DimensionlessScales {
    /// Ground-state eigenvalue `lambda0 = -m H0 R0^2 / hbar` (negative).
    pub lambda0: f64,
    /// Entropy scale `sigma0 = -lambda0` (positive; may be `+inf`).
    pub sigma0: f64,
    /// `sigma0` in log representation; always finite.
    pub sigma0_log: LogFloat,
    /// `log10(sigma0)`.
    pub sigma0_log10: f64,
    /// Inverse length `a = (m k_eff / hbar^2)^{1/4} = sqrt(m H0 / hbar)`, 1/m.
    pub a: f64,
    /// Ground energy `E0 = -m H0^2 R0^2 / 2`, J.
    pub e0: f64,
    /// Effective spring constant `m H0^2`, kg/s^2.
    pub k_eff: f64,
}

#[derive(Debug, Error)]
pub enum ParamsError {
    #[error("unparseable config document: {0}")]
    Parse(String),
    #[error(
        "missing key: expected one of `H0_km_s_Mpc`/`H0_si`, plus `R0_m` and `m_kg`; absent: {0}"
    )]
    MissingKey(&'static str),
    #[error("conflicting keys: both `H0_km_s_Mpc` and `H0_si` present")]
    ConflictingH0,
    #[error("non-positive {key}: {value}")]
    NonPositive { key: &'static str, value: f64 },
    #[error("sanity gate: H0 = {h0:.6e} 1/s outside the cosmology window [1e-19, 1e-17]; use the unchecked loader to override")]
    SanityGate { h0: f64 },
}

#[derive(Deserialize)]
struct ProfileDoc {
    #[serde(rename = "H0_km_s_Mpc")]
    h0_km_s_mpc: Option<f64>,
    #[serde(rename = "H0_si")]
    h0_si: Option<f64>,
    #[serde(rename = "R0_m")]
    r0_m: Option<f64>,
    #[serde(rename = "m_kg")]
    m_kg: Option<f64>,
    hbar: Option<f64>,
    #[serde(rename = "kB")]
    kb: Option<f64>,
    sanity: Option<String>,
}

fn positive(key: &'static str, value: f64) -> Result<f64, ParamsError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(ParamsError::NonPositive { key, value })
    }
}

fn parse(config_text: &str) -> Result<(CosmoParams, Option<String>), ParamsError> {
    let doc: ProfileDoc =
        serde_json::from_str(config_text).map_err(|e| ParamsError::Parse(e.to_string()))?;
    let h0 = match (doc.h0_km_s_mpc, doc.h0_si) {
        (Some(_), Some(_)) => return Err(ParamsError::ConflictingH0),
        (Some(v), None) => positive("H0_km_s_Mpc", v)? * 1.0e3 / METERS_PER_MPC,
        (None, Some(v)) => positive("H0_si", v)?,
        (None, None) => return Err(ParamsError::MissingKey("H0_km_s_Mpc | H0_si")),
    };
    let r0 = positive("R0_m", doc.r0_m.ok_or(ParamsError::MissingKey("R0_m"))?)?;
    let m = positive("m_kg", doc.m_kg.ok_or(ParamsError::MissingKey("m_kg"))?)?;
    let hbar = positive("hbar", doc.hbar.unwrap_or(HBAR_SI))?;
    let kb = positive("kB", doc.kb.unwrap_or(KB_SI))?;
    Ok((
        CosmoParams {
            h0,
            r0,
            m,
            hbar,
            kb,
        },
        doc.sanity,
    ))
}

/// Parses a UTF-8 JSON config document into validated [`CosmoParams`].
///
/// `H0` may be given either in km/s/Mpc (`H0_km_s_Mpc`) or directly in 1/s
/// (`H0_si`); the canonical internal unit is 1/s. `hbar` and `kB` default
/// to their CODATA values. A document declaring `"sanity": "cosmology"`
/// additionally requires `H0` to lie in the window [1e-19, 1e-17] 1/s.
pub fn load_params(config_text: &str) -> Result<CosmoParams, ParamsError> {
    let (p, sanity) = parse(config_text)?;
    if sanity.as_deref() == Some("cosmology") && !(1e-19..=1e-17).contains(&p.h0) {
        return Err(ParamsError::SanityGate { h0: p.h0 });
    }
    Ok(p)
}

/// Like [`load_params`] but with the cosmology sanity gate disabled.
pub fn load_params_unchecked(config_text: &str) -> Result<CosmoParams, ParamsError> {
    parse(config_text).map(|(p, _)| p)
}

impl CosmoParams {
    /// All-ones parameters for desk-scale work.
    pub fn unit() -> Self {
        CosmoParams {
            h0: 1.0,
            r0: 1.0,
            m: 1.0,
            hbar: 1.0,
            kb: 1.0,
        }
    }

    /// The shipped `planck2015` profile.
    pub fn planck2015() -> Self {
        load_params(PLANCK2015_PROFILE_JSON).expect("embedded profile is valid")
    }

    /// Dimensionless energy for a physical energy: `lambda = 2 E / (hbar H0)`.
    pub fn lambda_from_energy(&self, energy: f64) -> f64 {
        2.0 * energy / (self.hbar * self.h0)
    }

    /// Physical energy for a dimensionless eigenvalue: `E = lambda hbar H0 / 2`.
    pub fn energy_from_lambda(&self, lambda: f64) -> f64 {
        lambda * self.hbar * self.h0 / 2.0
    }
}

/// Derives every dimensionless scale from the mechanical data.
///
/// Overflow cannot occur: `sigma0` is additionally carried as a [`LogFloat`]
/// whose ln-magnitude is assembled from logs of the inputs (the plain-double
/// field is allowed to saturate to `+inf`).
pub fn derive_scales(p: &CosmoParams) -> DimensionlessScales {
    let sigma0 = p.m * p.h0 / p.hbar * (p.r0 * p.r0);
    let ln_sigma0 = p.m.ln() + p.h0.ln() + 2.0 * p.r0.ln() - p.hbar.ln();
    let sigma0_log = LogFloat::from_ln(1, ln_sigma0);
    DimensionlessScales {
        lambda0: -sigma0,
        sigma0,
        sigma0_log,
        sigma0_log10: sigma0_log.log10(),
        a: (p.m * p.h0 / p.hbar).sqrt(),
        e0: -0.5 * p.m * p.h0 * p.h0 * p.r0 * p.r0,
        k_eff: p.m * p.h0 * p.h0,
    }
}

/// Radius of a universe whose entropy scale is `sigma`:
/// `R = sqrt(sigma hbar / (m H0))`. Inverse of the `sigma0` relation.
pub fn radius_for_entropy(sigma: f64, p: &CosmoParams) -> f64 {
    assert!(sigma > 0.0, "entropy scale must be positive");
    (sigma * p.hbar / (p.m * p.h0)).sqrt()
}
