//! Structured run reports: every emitted number carries a units string and
//! the formula that produced it, and renders deterministically (17
//! significant digits, fixed field order) in both text and JSON.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::numerics::LogFloat;
use crate::params::CosmoParams;

/// A value that may exceed `f64` range: log10 plus the (sign, ln) pair.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ReportedValue {
    Scalar { value: f64 },
    Log { sign: i8, ln_mag: f64, log10: f64 },
}

impl ReportedValue {
    pub fn from_logfloat(v: LogFloat) -> Self {
        ReportedValue::Log {
            sign: v.sign(),
            ln_mag: v.ln_mag(),
            log10: v.log10(),
        }
    }
}

/// One named result with provenance.
#[derive(Clone, Debug, Serialize)]
pub struct ResultEntry {
    pub name: String,
    #[serde(flatten)]
    pub value: ReportedValue,
    pub units: String,
    /// The producing formula, or "plumbing" for bookkeeping entries.
    pub formula: String,
}

/// Echo of the resolved inputs plus all flags that shaped the run.
#[derive(Clone, Debug, Serialize)]
pub struct InputsEcho {
    pub h0_si: f64,
    pub r0_m: f64,
    pub m_kg: f64,
    pub hbar: f64,
    pub kb: f64,
    pub flags: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub inputs: InputsEcho,
    pub results: Vec<ResultEntry>,
}

impl RunReport {
    pub fn new(p: &CosmoParams) -> Self {
        RunReport {
            inputs: InputsEcho {
                h0_si: p.h0,
                r0_m: p.r0,
                m_kg: p.m,
                hbar: p.hbar,
                kb: p.kb,
                flags: BTreeMap::new(),
            },
            results: Vec::new(),
        }
    }

    pub fn flag(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.flags.insert(key.into(), value.to_string());
        self
    }

    pub fn push_scalar(&mut self, name: &str, value: f64, units: &str, formula: &str) {
        self.results.push(ResultEntry {
            name: name.into(),
            value: ReportedValue::Scalar { value },
            units: units.into(),
            formula: formula.into(),
        });
    }

    pub fn push_log(&mut self, name: &str, value: LogFloat, units: &str, formula: &str) {
        self.results.push(ResultEntry {
            name: name.into(),
            value: ReportedValue::from_logfloat(value),
            units: units.into(),
            formula: formula.into(),
        });
    }

    /// Plain-text rendering, one result per line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let i = &self.inputs;
        out.push_str(&format!(
            "inputs: H0 = {:.16e} 1/s, R0 = {:.16e} m, m = {:.16e} kg, hbar = {:.16e} J s, kB = {:.16e} J/K\n",
            i.h0_si, i.r0_m, i.m_kg, i.hbar, i.kb
        ));
        for (k, v) in &i.flags {
            out.push_str(&format!("flag: {k} = {v}\n"));
        }
        for r in &self.results {
            match r.value {
                ReportedValue::Scalar { value } => out.push_str(&format!(
                    "{} = {:.16e} [{}]  ({})\n",
                    r.name, value, r.units, r.formula
                )),
                ReportedValue::Log {
                    sign,
                    ln_mag,
                    log10,
                } => out.push_str(&format!(
                    "{} = sign {:+} ln {:.16e} (log10 = {:.16e}) [{}]  ({})\n",
                    r.name, sign, ln_mag, log10, r.units, r.formula
                )),
            }
        }
        out
    }

    /// Deterministic JSON rendering.
    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
