//! Adaptive Gauss-Kronrod quadrature, in plain `f64` and in the log domain.
//!
//! Both drivers bisect the worst segment until the summed error estimate
//! meets `max(abs_tol, rel_tol * |result|)`. Kronrod nodes are interior
//! points, so endpoints are never evaluated and integrable endpoint
//! singularities (`ln r`, `1/sqrt(r)`) need no special casing.
//!
//! The log-domain driver evaluates integrands that return [`LogFloat`],
//! factoring the largest ln-magnitude out of each segment so the quadrature
//! weights only ever touch numbers of order one. It is the mandatory route
//! once integrand values leave `f64` range (`exp(sigma x)` at sigma > 300).

use thiserror::Error;

use super::logfloat::{logfloat_add, LogFloat};

/// Tolerances and subdivision budget for the adaptive drivers.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<(), NumericsError> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(NumericsError::BadSpec("tolerances must be positive".into()));
        }
        if self.max_subdivisions < 1 {
            return Err(NumericsError::BadSpec(
                "max_subdivisions must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("quadrature failed to converge after {subdivisions} subdivisions (best estimate {best_estimate:.17e})")]
    NonConvergence {
        subdivisions: usize,
        best_estimate: f64,
    },
    #[error("log-domain quadrature failed to converge after {subdivisions} subdivisions (best estimate {best_estimate})")]
    NonConvergenceLog {
        subdivisions: usize,
        best_estimate: LogFloat,
    },
    #[error("invalid quadrature spec: {0}")]
    BadSpec(String),
    #[error("invalid interval: a must be < b")]
    BadInterval,
}

// 21-point Gauss-Kronrod pair (10-point Gauss embedded), QUADPACK constants.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// QUADPACK-style error rescaling from |K - G| and the centred residual.
fn rescale_error(err: f64, res_asc: f64) -> f64 {
    let err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        if scale < 1.0 {
            return res_asc * scale;
        }
        return res_asc;
    }
    err
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv = [0.0f64; 21];
    for (j, &x) in XGK.iter().enumerate().take(10) {
        fv[j] = f(center - half * x);
        fv[20 - j] = f(center + half * x);
    }
    fv[10] = f(center);

    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for j in 0..10 {
        kronrod += WGK[j] * (fv[j] + fv[20 - j]);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (fv[j] + fv[20 - j]);
        }
    }
    kronrod += WGK[10] * fv[10];

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (fv[10] - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[20 - j] - mean).abs());
    }
    let err = rescale_error((kronrod - gauss) * half, res_asc * half.abs());
    (kronrod * half, err)
}

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

/// Adaptive integral of `f` over `[a, b]`.
///
/// Returns [`NumericsError::NonConvergence`] carrying the best estimate if
/// the subdivision budget runs out before the tolerance is met.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64, NumericsError> {
    spec.validate()?;
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(a < b) {
        // NaN endpoints also land here
        return Err(NumericsError::BadInterval);
    }
    let (value, err) = gk21(&f, a, b);
    let mut segs = vec![Segment { a, b, value, err }];

    loop {
        let total: f64 = segs.iter().map(|s| s.value).sum();
        let toterr: f64 = segs.iter().map(|s| s.err).sum();
        if toterr <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok(total);
        }
        if segs.len() >= spec.max_subdivisions {
            return Err(NumericsError::NonConvergence {
                subdivisions: segs.len(),
                best_estimate: total,
            });
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap();
        let Segment { a, b, .. } = segs[worst];
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // interval at f64 resolution; cannot refine further
            return Err(NumericsError::NonConvergence {
                subdivisions: segs.len(),
                best_estimate: segs.iter().map(|s| s.value).sum(),
            });
        }
        let (lv, le) = gk21(&f, a, mid);
        let (rv, re) = gk21(&f, mid, b);
        segs[worst] = Segment {
            a,
            b: mid,
            value: lv,
            err: le,
        };
        segs.push(Segment {
            a: mid,
            b,
            value: rv,
            err: re,
        });
    }
}

struct LogSegment {
    a: f64,
    b: f64,
    value: LogFloat,
    err: LogFloat,
}

fn gk21_log<F: Fn(f64) -> LogFloat>(f: &F, a: f64, b: f64) -> (LogFloat, LogFloat) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut vals = [LogFloat::ZERO; 21];
    for (j, &x) in XGK.iter().enumerate().take(10) {
        vals[j] = f(center - half * x);
        vals[20 - j] = f(center + half * x);
    }
    vals[10] = f(center);

    let peak = vals
        .iter()
        .map(|v| v.ln_mag())
        .fold(f64::NEG_INFINITY, f64::max);
    if peak == f64::NEG_INFINITY {
        return (LogFloat::ZERO, LogFloat::ZERO);
    }

    // All node values rescaled by e^{-peak} are in [-1, 1].
    let scaled = |v: LogFloat| v.sign() as f64 * (v.ln_mag() - peak).exp();
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for j in 0..10 {
        let pair = scaled(vals[j]) + scaled(vals[20 - j]);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    kronrod += WGK[10] * scaled(vals[10]);

    let restore = |x: f64| {
        if x == 0.0 {
            LogFloat::ZERO
        } else {
            LogFloat::from_ln(
                if x > 0.0 { 1 } else { -1 },
                x.abs().ln() + peak + half.abs().ln(),
            )
        }
    };
    (restore(kronrod), restore((kronrod - gauss).abs()))
}

/// Adaptive integral of a [`LogFloat`]-valued integrand over `[a, b]`.
///
/// Agrees with [`integrate`] (after exponentiation) whenever both sides are
/// representable; keeps working when integrand values overflow `f64`.
pub fn integrate_log<F: Fn(f64) -> LogFloat>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<LogFloat, NumericsError> {
    spec.validate()?;
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(a < b) {
        // NaN endpoints also land here
        return Err(NumericsError::BadInterval);
    }
    let (value, err) = gk21_log(&f, a, b);
    let mut segs = vec![LogSegment { a, b, value, err }];

    loop {
        let total = segs
            .iter()
            .fold(LogFloat::ZERO, |acc, s| logfloat_add(acc, s.value));
        let toterr = segs
            .iter()
            .fold(LogFloat::ZERO, |acc, s| logfloat_add(acc, s.err.abs()));
        // tolerance in log space: ln(max(abs_tol, rel_tol * |total|))
        let ln_tol = spec.abs_tol.ln().max(spec.rel_tol.ln() + total.ln_mag());
        if toterr.is_zero() || toterr.ln_mag() <= ln_tol {
            return Ok(total);
        }
        if segs.len() >= spec.max_subdivisions {
            return Err(NumericsError::NonConvergenceLog {
                subdivisions: segs.len(),
                best_estimate: total,
            });
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.ln_mag().total_cmp(&y.1.err.ln_mag()))
            .map(|(i, _)| i)
            .unwrap();
        let (a, b) = (segs[worst].a, segs[worst].b);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Err(NumericsError::NonConvergenceLog {
                subdivisions: segs.len(),
                best_estimate: total,
            });
        }
        let (lv, le) = gk21_log(&f, a, mid);
        let (rv, re) = gk21_log(&f, mid, b);
        segs[worst] = LogSegment {
            a,
            b: mid,
            value: lv,
            err: le,
        };
        segs.push(LogSegment {
            a: mid,
            b,
            value: rv,
            err: re,
        });
    }
}
