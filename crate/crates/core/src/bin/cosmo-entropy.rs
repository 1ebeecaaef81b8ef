//! Command-line front end: entropy estimates, matching-point sweeps, the
//! quantum-potential diagnostic, exact wavefunction dumps and the
//! self-check suites.
//!
//! Exit codes: 0 success, 1 failed check or runtime error, 2 usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use cosmo_entropy::exactradial::{ExactRadialState, HYP1F1_Z_MAX};
use cosmo_entropy::freewaves::{
    grav_entropy_plane, grav_entropy_spherical, SphericalWaveState, N_FACTOR_PAPER_PLANE,
    N_FACTOR_PAPER_SPHERICAL,
};
use cosmo_entropy::numerics::{LogFloat, QuadratureSpec, DIRECT_QUADRATURE_SIGMA_MAX};
use cosmo_entropy::params::{
    derive_scales, load_params, load_params_unchecked, CosmoParams, PLANCK2015_PROFILE_JSON,
    UNIT_PROFILE_JSON,
};
use cosmo_entropy::qdiagnostic::{
    qv_ratio, violation_assessment, Assessment, QVReport, DEFAULT_VIOLATION_THRESHOLD,
};
use cosmo_entropy::report::RunReport;
use cosmo_entropy::vacuummatch::{
    grav_entropy_nonperturbative, inner_solution, match_vacuum, outer_solution, x2_closed,
    x2_quadrature, MatchMode, Parity,
};
use cosmo_entropy::verify::{run_suite, Suite};

const PROFILE_PATH_ENV: &str = "COSMO_ENTROPY_PROFILE_PATH";

#[derive(Parser)]
#[command(
    name = "cosmo-entropy",
    version,
    about = "Boltzmann-entropy estimates for a Newtonian universe"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Plane,
    Spherical,
    Nonperturbative,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParityArg {
    Sinh,
    Cosh,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Sinh => Parity::Sinh,
            ParityArg::Cosh => Parity::Cosh,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Gravitational and matter entropy estimates for a profile.
    Estimate {
        /// Profile name (searched in the profile directories, falling back
        /// to the built-in `planck2015`/`unit`) or a direct path to a JSON
        /// file.
        #[arg(long, default_value = "planck2015")]
        profile: String,
        #[arg(long, value_enum)]
        method: Method,
        /// Dimensionless N factor: a number, `paper-plane` (1/2.6) or
        /// `paper-spherical` (3/2.6).
        #[arg(long = "N", default_value = "1")]
        n_factor: String,
        /// Matching point, required for --method nonperturbative.
        #[arg(long)]
        x0: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        profile_path: Option<PathBuf>,
        /// Skip the cosmology sanity gate on H0.
        #[arg(long)]
        no_sanity_check: bool,
    },
    /// CSV sweep of the matching point: closed-form and quadrature <x^2>
    /// plus the entropy estimate.
    #[command(name = "sweep-x0")]
    SweepX0 {
        /// Numeric sigma, or `auto` to use the profile's sigma0.
        #[arg(long, default_value = "auto")]
        sigma: String,
        #[arg(long, default_value_t = 0.05)]
        from: f64,
        #[arg(long, default_value_t = 1.0)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long = "N", default_value = "1")]
        n_factor: String,
        #[arg(long, value_enum, default_value = "sinh")]
        parity: ParityArg,
        #[arg(long, default_value = "planck2015")]
        profile: String,
        #[arg(long)]
        profile_path: Option<PathBuf>,
        #[arg(long)]
        no_sanity_check: bool,
        /// Worker threads for the sweep; output order is deterministic
        /// regardless.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Quantum-potential diagnostic: emits a JSON report for a state.
    #[command(name = "diagnose-q")]
    DiagnoseQ {
        /// State spec: `spherical:kappa=<v>[,r0=<v>]`,
        /// `matched:sigma=<v>,x0=<v>[,parity=sinh|cosh][,mode=exact|paper]`
        /// or `exact:branch=<1|2>,lambda=<v>,a=<v>`. Desk-scale units
        /// (m = hbar = 1).
        #[arg(long)]
        state: String,
        /// Energy eigenvalue fed to the ratio. Ignored by --sweep-lambda.
        #[arg(
            long = "E",
            allow_negative_numbers = true,
            required_unless_present = "sweep_lambda"
        )]
        energy: Option<f64>,
        /// Frequency of the quadratic background potential
        /// V = -(1/2) m omega^2 r^2.
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long)]
        rmin: Option<f64>,
        #[arg(long)]
        rmax: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_VIOLATION_THRESHOLD)]
        threshold: f64,
        /// Sweep the dimensionless energy of an `exact:` state as
        /// `from:to:steps`, pairing each lambda with its consistent
        /// eigenvalue E = lambda a^2 / 2 and the potential of the same
        /// scale; emits CSV `lambda,E,V_expect,Q_expect,ratio`.
        #[arg(long, allow_hyphen_values = true)]
        sweep_lambda: Option<String>,
    },
    /// Samples a wavefunction on a radial grid as CSV `r,Re,Im,abs2`.
    Wavefunction {
        /// Use the exact interacting radial solutions.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        branch: u8,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        rmin: f64,
        #[arg(long)]
        rmax: f64,
        #[arg(long)]
        samples: usize,
    },
    /// Runs the self-check suites; exits nonzero on any failure.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Numeric sigma for the matched-state checks, or `auto` for the
        /// profile's sigma0 (wavefunction-level checks then fall back to
        /// desk scale).
        #[arg(long, default_value = "100")]
        sigma: String,
        #[arg(long, default_value = "planck2015")]
        profile: String,
        #[arg(long)]
        profile_path: Option<PathBuf>,
    },
}

/// Anything that aborts a run: message plus the exit code to use.
struct CliError {
    message: String,
    usage: bool,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            usage: true,
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            usage: false,
        }
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::runtime(e.to_string())
    }
}

fn resolve_profile(
    name: &str,
    dir_flag: Option<&Path>,
    no_sanity: bool,
) -> Result<(CosmoParams, String), CliError> {
    let load = |text: &str, source: String| -> Result<(CosmoParams, String), CliError> {
        let p = if no_sanity {
            load_params_unchecked(text)
        } else {
            load_params(text)
        }
        .map_err(|e| CliError::runtime(format!("profile {source}: {e}")))?;
        Ok((p, source))
    };

    let as_path = Path::new(name);
    if name.ends_with(".json") || name.contains(std::path::MAIN_SEPARATOR) {
        let text = std::fs::read_to_string(as_path)
            .map_err(|e| CliError::runtime(format!("cannot read profile {name}: {e}")))?;
        return load(&text, name.to_string());
    }

    let mut dirs: Vec<PathBuf> = Vec::new();
    if let Some(d) = dir_flag {
        dirs.push(d.to_path_buf());
    }
    if let Ok(env_dir) = std::env::var(PROFILE_PATH_ENV) {
        dirs.push(PathBuf::from(env_dir));
    }
    if let Ok(exe) = std::env::current_exe() {
        if let Some(dir) = exe.parent() {
            dirs.push(dir.join("profiles"));
        }
    }
    dirs.push(PathBuf::from("profiles"));

    for dir in &dirs {
        let candidate = dir.join(format!("{name}.json"));
        if candidate.is_file() {
            let text = std::fs::read_to_string(&candidate).map_err(|e| {
                CliError::runtime(format!("cannot read {}: {e}", candidate.display()))
            })?;
            return load(&text, candidate.display().to_string());
        }
    }

    match name {
        "planck2015" => load(PLANCK2015_PROFILE_JSON, "builtin:planck2015".into()),
        "unit" => load(UNIT_PROFILE_JSON, "builtin:unit".into()),
        _ => Err(CliError::usage(format!(
            "profile `{name}` not found in {dirs:?} and not a builtin (planck2015, unit)"
        ))),
    }
}

fn parse_n_factor(s: &str) -> Result<f64, CliError> {
    match s {
        "paper-plane" => Ok(N_FACTOR_PAPER_PLANE),
        "paper-spherical" => Ok(N_FACTOR_PAPER_SPHERICAL),
        other => other
            .parse::<f64>()
            .ok()
            .filter(|v| *v > 0.0)
            .ok_or_else(|| {
                CliError::usage(format!(
                    "--N must be a positive number, `paper-plane` or `paper-spherical`; got `{other}`"
                ))
            }),
    }
}

fn parse_sigma(s: &str, p: &CosmoParams) -> Result<f64, CliError> {
    if s == "auto" {
        let sigma = derive_scales(p).sigma0;
        if !sigma.is_finite() {
            return Err(CliError::runtime(
                "profile sigma0 overflows f64; pass --sigma explicitly".to_string(),
            ));
        }
        Ok(sigma)
    } else {
        s.parse::<f64>().ok().filter(|v| *v > 0.0).ok_or_else(|| {
            CliError::usage(format!("--sigma must be positive or `auto`, got `{s}`"))
        })
    }
}

fn cmd_estimate(
    profile: &str,
    method: Method,
    n_str: &str,
    x0: Option<f64>,
    format: Format,
    profile_path: Option<&Path>,
    no_sanity: bool,
) -> Result<(), CliError> {
    let (p, source) = resolve_profile(profile, profile_path, no_sanity)?;
    let n_factor = parse_n_factor(n_str)?;
    let scales = derive_scales(&p);

    let mut report = RunReport::new(&p);
    report.flag("profile", source);
    report.flag("method", format!("{method:?}").to_lowercase());
    report.flag("N", n_str);

    report.push_log(
        "sigma0",
        scales.sigma0_log,
        "dimensionless",
        "m*H0*R0^2/hbar",
    );

    let (entropy, formula): (LogFloat, &str) = match method {
        Method::Plane => (grav_entropy_plane(&p, n_factor), "N*m*H0*R0^2/hbar"),
        Method::Spherical => (grav_entropy_spherical(&p, n_factor), "N*m*H0*R0^2/(3*hbar)"),
        Method::Nonperturbative => {
            let x0 =
                x0.ok_or_else(|| CliError::usage("--x0 is required for --method nonperturbative"))?;
            if !(x0 > 0.0 && x0 <= 1.0) {
                return Err(CliError::usage(format!(
                    "--x0 must lie in (0, 1], got {x0}"
                )));
            }
            report.flag("x0", x0);
            (
                grav_entropy_nonperturbative(&p, x0, n_factor),
                "N*sigma0*(x0^2+3*x0+6)/10",
            )
        }
    };
    report.push_log("S_g_over_kB", entropy, "dimensionless (S/kB)", formula);
    report.push_scalar(
        "S_m_over_kB_R0_part",
        -3.0 * p.r0.ln(),
        "dimensionless (S/kB)",
        "-3*ln(R0)",
    );
    if matches!(method, Method::Spherical) {
        report.push_scalar(
            "S_m_over_kB_constant",
            2.0 - (4.0 * std::f64::consts::PI).ln(),
            "dimensionless (S/kB)",
            "2-ln(4*pi)",
        );
    }

    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!("{}", report.render_json()),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep_x0(
    sigma_str: &str,
    from: f64,
    to: f64,
    steps: usize,
    n_str: &str,
    parity: Parity,
    profile: &str,
    profile_path: Option<&Path>,
    no_sanity: bool,
    jobs: usize,
) -> Result<(), CliError> {
    if steps < 1 {
        return Err(CliError::usage("--steps must be at least 1"));
    }
    if !(from > 0.0 && to <= 1.0 && from <= to) {
        return Err(CliError::usage(format!(
            "sweep range must satisfy 0 < from <= to <= 1, got [{from}, {to}]"
        )));
    }
    let (p, _) = resolve_profile(profile, profile_path, no_sanity)?;
    let sigma = parse_sigma(sigma_str, &p)?;
    let n_factor = parse_n_factor(n_str)?;
    let spec = QuadratureSpec::default();

    let points: Vec<f64> = if steps == 1 {
        vec![from]
    } else {
        (0..steps)
            .map(|i| from + (to - from) * i as f64 / (steps - 1) as f64)
            .collect()
    };

    let row = |&x0: &f64| -> Result<String, CliError> {
        let closed = x2_closed(x0);
        let state = match_vacuum(sigma, x0, parity, MatchMode::ExactNumeric)
            .map_err(|e| CliError::runtime(e.to_string()))?;
        let quad = x2_quadrature(&state, &spec).map_err(|e| CliError::runtime(e.to_string()))?;
        let entropy_log10 =
            (LogFloat::from_f64(n_factor) * LogFloat::from_f64(sigma) * LogFloat::from_f64(closed))
                .log10();
        Ok(format!(
            "{x0:.16e},{closed:.16e},{quad:.16e},{entropy_log10:.16e}"
        ))
    };

    let rows: Result<Vec<String>, CliError> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::runtime(e.to_string()))?;
        pool.install(|| points.par_iter().map(row).collect())
    } else {
        points.iter().map(row).collect()
    };

    println!("x0,x2_closed,x2_quadrature,entropy_log10");
    for r in rows? {
        println!("{r}");
    }
    Ok(())
}

fn parse_state_spec(spec: &str) -> Result<std::collections::BTreeMap<String, String>, CliError> {
    let mut map = std::collections::BTreeMap::new();
    for part in spec.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("bad state field `{part}` (want key=value)")))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn state_field<T: std::str::FromStr>(
    map: &std::collections::BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    map.get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| CliError::usage(format!("state field `{key}`: cannot parse `{v}`")))
        })
        .transpose()
}

fn require<T>(v: Option<T>, key: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(format!("state spec missing required field `{key}`")))
}

#[derive(serde::Serialize)]
struct DiagnoseOutput {
    state: String,
    report: QVReport,
    assessment: Assessment,
}

fn cmd_diagnose_q(
    state_spec: &str,
    energy: f64,
    omega: f64,
    rmin: Option<f64>,
    rmax: Option<f64>,
    threshold: f64,
) -> Result<(), CliError> {
    let (kind, rest) = state_spec
        .split_once(':')
        .ok_or_else(|| CliError::usage("state spec must look like `kind:key=value,...`"))?;
    let fields = parse_state_spec(rest)?;
    let quad_spec = QuadratureSpec::default();
    let v_pot = move |r: f64| -0.5 * omega * omega * r * r;

    let report = match kind {
        "spherical" => {
            let kappa: f64 = require(state_field(&fields, "kappa")?, "kappa")?;
            let r0: f64 = state_field(&fields, "r0")?.unwrap_or(1.0);
            let s = SphericalWaveState::new(kappa, r0, 1);
            let lo = rmin.unwrap_or(1e-6 * r0);
            let hi = rmax.unwrap_or(r0);
            qv_ratio(
                move |r| s.eval(r).unwrap_or(Complex64::new(0.0, 0.0)),
                energy,
                v_pot,
                1.0,
                1.0,
                lo,
                hi,
                &quad_spec,
            )?
        }
        "matched" => {
            let sigma: f64 = require(state_field(&fields, "sigma")?, "sigma")?;
            let x0: f64 = require(state_field(&fields, "x0")?, "x0")?;
            if sigma > DIRECT_QUADRATURE_SIGMA_MAX {
                return Err(CliError::usage(format!(
                    "matched-state diagnostics are desk-scale only (sigma <= {DIRECT_QUADRATURE_SIGMA_MAX}); use the closed-form entropy route for astronomical sigma"
                )));
            }
            let parity = match fields.get("parity").map(String::as_str) {
                None | Some("sinh") => Parity::Sinh,
                Some("cosh") => Parity::Cosh,
                Some(other) => return Err(CliError::usage(format!("unknown parity `{other}`"))),
            };
            let mode = match fields.get("mode").map(String::as_str) {
                None | Some("exact") => MatchMode::ExactNumeric,
                Some("paper") => MatchMode::PaperLeadingOrder,
                Some(other) => return Err(CliError::usage(format!("unknown mode `{other}`"))),
            };
            let st = match_vacuum(sigma, x0, parity, mode)?;
            let norm = st.norm;
            // piecewise closure stays finite slightly past x = 1 where the
            // derivative stencil pokes
            let psi = move |x: f64| {
                let f = if x <= st.x0 {
                    inner_solution(x, st.sigma, st.parity).map(|v| v * norm)
                } else {
                    Ok(outer_solution(x, st.a_coef, st.b_coef) * norm)
                };
                Complex64::new(f.map(|v| v.to_f64()).unwrap_or(0.0), 0.0)
            };
            let lo = rmin.unwrap_or(1e-3);
            let hi = rmax.unwrap_or(1.0);
            qv_ratio(psi, energy, v_pot, 1.0, 1.0, lo, hi, &quad_spec)?
        }
        "exact" => {
            let branch: u8 = require(state_field(&fields, "branch")?, "branch")?;
            let lambda: f64 = require(state_field(&fields, "lambda")?, "lambda")?;
            let a: f64 = require(state_field(&fields, "a")?, "a")?;
            let st = ExactRadialState::new(branch, lambda, a);
            let safe_rmax = 0.95 * HYP1F1_Z_MAX.sqrt() / a;
            let lo = rmin.unwrap_or(1e-3 / a);
            let hi = rmax.unwrap_or(safe_rmax.min(5.0 / a));
            if hi > safe_rmax {
                return Err(CliError::usage(format!(
                    "--rmax {hi} exceeds the series validity radius ({safe_rmax:.4e} for a = {a})"
                )));
            }
            qv_ratio(
                move |r| st.eval(r).unwrap_or(Complex64::new(0.0, 0.0)),
                energy,
                v_pot,
                1.0,
                1.0,
                lo,
                hi,
                &quad_spec,
            )?
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown state kind `{other}` (want spherical, matched or exact)"
            )))
        }
    };

    let assessment = violation_assessment(&report, threshold);
    let out = DiagnoseOutput {
        state: state_spec.to_string(),
        report,
        assessment,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("diagnostic output serializes")
    );
    Ok(())
}

/// Sweeps the dimensionless energy of an exact radial state, reporting how
/// the uniformity ratio <Q>/<V> responds; the ground end of the spectrum
/// is where the ratio is expected to bottom out.
fn cmd_diagnose_q_lambda_sweep(
    state_spec: &str,
    sweep: &str,
    rmin: Option<f64>,
    rmax: Option<f64>,
) -> Result<(), CliError> {
    let (kind, rest) = state_spec
        .split_once(':')
        .ok_or_else(|| CliError::usage("state spec must look like `kind:key=value,...`"))?;
    if kind != "exact" {
        return Err(CliError::usage(
            "--sweep-lambda requires an `exact:` state spec",
        ));
    }
    let fields = parse_state_spec(rest)?;
    let branch: u8 = require(state_field(&fields, "branch")?, "branch")?;
    let a: f64 = require(state_field(&fields, "a")?, "a")?;
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(branch == 1 || branch == 2) || !(a > 0.0) {
        return Err(CliError::usage("need branch 1|2 and a > 0"));
    }
    let parts: Vec<&str> = sweep.split(':').collect();
    let [from, to, steps]: [&str; 3] = parts
        .try_into()
        .map_err(|_| CliError::usage("--sweep-lambda wants `from:to:steps`"))?;
    let from: f64 = from
        .parse()
        .map_err(|_| CliError::usage("bad sweep `from`"))?;
    let to: f64 = to.parse().map_err(|_| CliError::usage("bad sweep `to`"))?;
    let steps: usize = steps
        .parse()
        .map_err(|_| CliError::usage("bad sweep `steps`"))?;
    if steps < 1 || to < from {
        return Err(CliError::usage("need steps >= 1 and to >= from"));
    }

    // consistent desk-scale problem: m = hbar = 1, H0 = a^2, so
    // V = -(1/2) a^4 r^2 and E = lambda a^2 / 2
    let v_pot = move |r: f64| -0.5 * a.powi(4) * r * r;
    let quad_spec = QuadratureSpec::default();
    let safe_rmax = 0.95 * HYP1F1_Z_MAX.sqrt() / a;
    let lo = rmin.unwrap_or(1e-3 / a);
    let hi = rmax.unwrap_or(safe_rmax.min(5.0 / a));
    if hi > safe_rmax {
        return Err(CliError::usage(format!(
            "--rmax {hi} exceeds the series validity radius ({safe_rmax:.4e} for a = {a})"
        )));
    }

    println!("lambda,E,V_expect,Q_expect,ratio");
    for i in 0..steps {
        let lambda = if steps == 1 {
            from
        } else {
            from + (to - from) * i as f64 / (steps - 1) as f64
        };
        let st = ExactRadialState::new(branch, lambda, a);
        let energy = lambda * a * a / 2.0;
        let report = qv_ratio(
            move |r| st.eval(r).unwrap_or(Complex64::new(0.0, 0.0)),
            energy,
            v_pot,
            1.0,
            1.0,
            lo,
            hi,
            &quad_spec,
        )?;
        println!(
            "{lambda:.16e},{energy:.16e},{:.16e},{:.16e},{:.16e}",
            report.v_expect, report.q_expect, report.ratio
        );
    }
    Ok(())
}

fn cmd_wavefunction(
    exact: bool,
    branch: u8,
    lambda: f64,
    a: f64,
    rmin: f64,
    rmax: f64,
    samples: usize,
) -> Result<(), CliError> {
    if !exact {
        return Err(CliError::usage(
            "only --exact wavefunctions are available; pass --exact",
        ));
    }
    if !(branch == 1 || branch == 2) {
        return Err(CliError::usage("--branch must be 1 or 2"));
    }
    if samples < 1 || !(rmin >= 0.0 && rmax > rmin) || a <= 0.0 {
        return Err(CliError::usage(
            "need --samples >= 1, 0 <= rmin < rmax and a > 0",
        ));
    }
    let state = ExactRadialState::new(branch, lambda, a);
    println!("r,Re,Im,abs2");
    for i in 0..samples {
        let r = if samples == 1 {
            rmin
        } else {
            rmin + (rmax - rmin) * i as f64 / (samples - 1) as f64
        };
        let v = state
            .eval(r)
            .map_err(|e| CliError::runtime(e.to_string()))?;
        println!(
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            r,
            v.re,
            v.im,
            v.norm_sqr()
        );
    }
    Ok(())
}

fn cmd_verify(
    suite: &str,
    sigma_str: &str,
    profile: &str,
    profile_path: Option<&Path>,
) -> Result<bool, CliError> {
    let suite: Suite = suite.parse().map_err(CliError::usage)?;
    let (p, _) = resolve_profile(profile, profile_path, true)?;
    let sigma = parse_sigma(sigma_str, &p)?;
    let results = run_suite(suite, sigma);
    let mut all_ok = true;
    for r in &results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!("{tag} {} - {}", r.name, r.detail);
        all_ok &= r.passed;
    }
    println!(
        "{} checks, {} failed",
        results.len(),
        results.iter().filter(|r| !r.passed).count()
    );
    Ok(all_ok)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.cmd {
        Cmd::Estimate {
            profile,
            method,
            n_factor,
            x0,
            format,
            profile_path,
            no_sanity_check,
        } => {
            cmd_estimate(
                &profile,
                method,
                &n_factor,
                x0,
                format,
                profile_path.as_deref(),
                no_sanity_check,
            )?;
            Ok(true)
        }
        Cmd::SweepX0 {
            sigma,
            from,
            to,
            steps,
            n_factor,
            parity,
            profile,
            profile_path,
            no_sanity_check,
            jobs,
        } => {
            cmd_sweep_x0(
                &sigma,
                from,
                to,
                steps,
                &n_factor,
                parity.into(),
                &profile,
                profile_path.as_deref(),
                no_sanity_check,
                jobs,
            )?;
            Ok(true)
        }
        Cmd::DiagnoseQ {
            state,
            energy,
            omega,
            rmin,
            rmax,
            threshold,
            sweep_lambda,
        } => {
            match (sweep_lambda, energy) {
                (Some(sweep), _) => cmd_diagnose_q_lambda_sweep(&state, &sweep, rmin, rmax)?,
                (None, Some(energy)) => {
                    cmd_diagnose_q(&state, energy, omega, rmin, rmax, threshold)?
                }
                (None, None) => unreachable!("clap enforces --E without --sweep-lambda"),
            }
            Ok(true)
        }
        Cmd::Wavefunction {
            exact,
            branch,
            lambda,
            a,
            rmin,
            rmax,
            samples,
        } => {
            cmd_wavefunction(exact, branch, lambda, a, rmin, rmax, samples)?;
            Ok(true)
        }
        Cmd::Verify {
            suite,
            sigma,
            profile,
            profile_path,
        } => cmd_verify(&suite, &sigma, &profile, profile_path.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(if e.usage { 2 } else { 1 })
        }
    }
}
