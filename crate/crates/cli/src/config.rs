//! Scenario configuration.
//!
//! A single JSON document; every key is optional and unknown keys are
//! rejected. Parameter defaults come from the selected preset.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sscat_core::dynamics::TimeGrid;
use sscat_core::hamiltonians::time_to_squeeze;
use sscat_core::hilbert::{HilbertDims, Qubit};
use sscat_core::observables::WignerSpec;
use sscat_core::params::PhysParams;

/// Squeeze magnitude at which the default Wigner snapshot is taken.
pub const DEFAULT_WIGNER_R: f64 = 0.4;
pub const DEFAULT_SWEEP_BETAS: [f64; 5] = [0.05, 0.1, 0.25, 0.4, 0.5];
pub const DEFAULT_R_TARGET: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Preset {
    /// ħω = 10, E_J = 1, β = 0.25, E_z = 0, γ = 0.
    #[default]
    Default,
    /// ħω = 50, otherwise as `default`.
    DeepSqueeze,
}

impl Preset {
    pub fn params(self) -> PhysParams {
        match self {
            Preset::Default => PhysParams::default(),
            Preset::DeepSqueeze => PhysParams::deep_squeeze(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Default => "default",
            Preset::DeepSqueeze => "deep-squeeze",
        }
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Io(String),
    /// JSON syntax or schema error with its 1-based position.
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    Invalid {
        field: String,
        message: String,
    },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(m) => write!(f, "{m}"),
            ConfigError::Parse { line, column, message } => write!(f, "line {line}, column {column}: {message}"),
            ConfigError::Invalid { field, message } => write!(f, "{field}: {message}"),
        }
    }
}

impl std::error::Error for ConfigError {}

fn invalid(field: &str, message: impl fmt::Display) -> ConfigError {
    ConfigError::Invalid {
        field: field.to_string(),
        message: message.to_string(),
    }
}

/// A number, or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexValue {
    pub fn value(self) -> Complex64 {
        match self {
            ComplexValue::Real(re) => Complex64::new(re, 0.0),
            ComplexValue::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    hbar_omega: Option<f64>,
    e_j: Option<f64>,
    e_z: Option<f64>,
    beta: Option<ComplexValue>,
    gamma_flux: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDims {
    n_fock: usize,
    guard: usize,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    t_start: Option<f64>,
    t_end: Option<f64>,
    n_points: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Timeseries,
    Wigner,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
pub enum Outcome {
    #[serde(rename = "g")]
    Ground,
    #[serde(rename = "e")]
    Excited,
}

impl Outcome {
    pub fn qubit(self) -> Qubit {
        match self {
            Outcome::Ground => Qubit::Ground,
            Outcome::Excited => Qubit::Excited,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::Ground => "g",
            Outcome::Excited => "e",
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWigner {
    t: Option<f64>,
    outcome: Option<Outcome>,
    x_min: Option<f64>,
    x_max: Option<f64>,
    p_min: Option<f64>,
    p_max: Option<f64>,
    resolution: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Beta,
    HbarOmega,
    EJ,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Beta => "beta",
            SweepParameter::HbarOmega => "hbar_omega",
            SweepParameter::EJ => "e_j",
        }
    }

    pub fn apply(self, params: &PhysParams, value: f64) -> PhysParams {
        match self {
            SweepParameter::Beta => params.with_beta(Complex64::new(value, 0.0)),
            SweepParameter::HbarOmega => PhysParams {
                hbar_omega: value,
                ..*params
            },
            SweepParameter::EJ => PhysParams { e_j: value, ..*params },
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    parameter: Option<SweepParameter>,
    values: Option<Vec<f64>>,
    r_target: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    params: Option<RawParams>,
    gamma_amp: Option<ComplexValue>,
    dims: Option<RawDims>,
    check_dims: Option<RawDims>,
    grid: Option<RawGrid>,
    outputs: Option<Vec<Output>>,
    wigner: Option<RawWigner>,
    sweep: Option<RawSweep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WignerConfig {
    pub t: f64,
    pub outcome: Outcome,
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub resolution: usize,
}

impl WignerConfig {
    pub fn spec(&self) -> WignerSpec {
        WignerSpec {
            x_min: self.x_min,
            x_max: self.x_max,
            p_min: self.p_min,
            p_max: self.p_max,
            resolution: self.resolution,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub r_target: f64,
}

/// Fully resolved scenario. Serialized canonically for the config hash.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub preset: &'static str,
    pub hbar_omega: f64,
    pub e_j: f64,
    pub e_z: f64,
    pub beta: [f64; 2],
    pub gamma_flux: f64,
    pub gamma_amp: [f64; 2],
    pub n_fock: usize,
    pub guard: usize,
    pub check_n_fock: usize,
    pub check_guard: usize,
    pub t_start: f64,
    pub t_end: f64,
    pub n_points: usize,
    pub outputs: Vec<Output>,
    pub wigner: WignerConfig,
    pub sweep: SweepConfig,
}

impl ScenarioConfig {
    pub fn params(&self) -> PhysParams {
        PhysParams {
            hbar_omega: self.hbar_omega,
            e_j: self.e_j,
            e_z: self.e_z,
            beta: Complex64::new(self.beta[0], self.beta[1]),
            gamma_flux: self.gamma_flux,
        }
    }

    pub fn gamma_amp(&self) -> Complex64 {
        Complex64::new(self.gamma_amp[0], self.gamma_amp[1])
    }

    pub fn dims(&self) -> HilbertDims {
        HilbertDims::new(self.n_fock, self.guard).expect("validated")
    }

    pub fn check_dims(&self) -> HilbertDims {
        HilbertDims::new(self.check_n_fock, self.check_guard).expect("validated")
    }

    pub fn grid(&self) -> TimeGrid {
        TimeGrid::new(self.t_start, self.t_end, self.n_points).expect("validated")
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&canonical).iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Preset defaults with no file.
    pub fn from_preset(preset: Preset) -> Result<Self, ConfigError> {
        resolve(RawConfig::default(), preset)
    }

    pub fn from_json(text: &str, preset: Preset) -> Result<Self, ConfigError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        resolve(raw, preset)
    }

    pub fn load(path: &Path, preset: Preset) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text, preset)
    }
}

fn finite(field: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(field, "must be finite"))
    }
}

fn resolve(raw: RawConfig, preset: Preset) -> Result<ScenarioConfig, ConfigError> {
    let base = preset.params();
    let rp = raw.params.unwrap_or_default();
    let beta = rp.beta.map(ComplexValue::value).unwrap_or(base.beta);
    let params = PhysParams {
        hbar_omega: finite("params.hbar_omega", rp.hbar_omega.unwrap_or(base.hbar_omega))?,
        e_j: finite("params.e_j", rp.e_j.unwrap_or(base.e_j))?,
        e_z: finite("params.e_z", rp.e_z.unwrap_or(base.e_z))?,
        beta: Complex64::new(finite("params.beta", beta.re)?, finite("params.beta", beta.im)?),
        gamma_flux: finite("params.gamma_flux", rp.gamma_flux.unwrap_or(base.gamma_flux))?,
    };
    params.validate().map_err(|e| invalid("params", e))?;

    let gamma_amp = raw.gamma_amp.map(ComplexValue::value).unwrap_or(Complex64::new(1.0, 0.0));
    finite("gamma_amp", gamma_amp.re)?;
    finite("gamma_amp", gamma_amp.im)?;

    let dims = match raw.dims {
        Some(d) => HilbertDims::new(d.n_fock, d.guard).map_err(|e| invalid("dims", e))?,
        None => HilbertDims::DYNAMICS,
    };
    let check_dims = match raw.check_dims {
        Some(d) => HilbertDims::new(d.n_fock, d.guard).map_err(|e| invalid("check_dims", e))?,
        None => HilbertDims::new(40, 10).expect("valid"),
    };
    for (field, d) in [("dims", dims), ("check_dims", check_dims)] {
        if d.guard() < sscat_core::hilbert::MIN_GUARD_FOR_DISPLACEMENT {
            return Err(invalid(
                field,
                format!("guard must be at least {}", sscat_core::hilbert::MIN_GUARD_FOR_DISPLACEMENT),
            ));
        }
    }

    let rg = raw.grid.unwrap_or_default();
    let grid =
        TimeGrid::new(rg.t_start.unwrap_or(0.0), rg.t_end.unwrap_or(3.0), rg.n_points.unwrap_or(61)).map_err(|e| invalid("grid", e))?;

    let outputs = raw.outputs.unwrap_or_else(|| vec![Output::Timeseries]);

    let rw = raw.wigner.unwrap_or_default();
    let default_spec = WignerSpec::default();
    let t = match rw.t {
        Some(t) => finite("wigner.t", t)?,
        None => time_to_squeeze(&params, DEFAULT_WIGNER_R).unwrap_or(0.0),
    };
    let wigner = WignerConfig {
        t,
        outcome: rw.outcome.unwrap_or(Outcome::Ground),
        x_min: rw.x_min.unwrap_or(default_spec.x_min),
        x_max: rw.x_max.unwrap_or(default_spec.x_max),
        p_min: rw.p_min.unwrap_or(default_spec.p_min),
        p_max: rw.p_max.unwrap_or(default_spec.p_max),
        resolution: rw.resolution.unwrap_or(default_spec.resolution),
    };
    wigner.spec().validate().map_err(|e| invalid("wigner", e))?;
    if t < 0.0 {
        return Err(invalid("wigner.t", "must be non-negative"));
    }

    let rs = raw.sweep.unwrap_or_default();
    let sweep = SweepConfig {
        parameter: rs.parameter.unwrap_or(SweepParameter::Beta),
        values: rs.values.unwrap_or_else(|| DEFAULT_SWEEP_BETAS.to_vec()),
        r_target: rs.r_target.unwrap_or(DEFAULT_R_TARGET),
    };
    if sweep.values.is_empty() {
        return Err(invalid("sweep.values", "must not be empty"));
    }
    for &v in &sweep.values {
        finite("sweep.values", v)?;
    }
    if !(sweep.r_target.is_finite() && sweep.r_target > 0.0) {
        return Err(invalid("sweep.r_target", "must be positive"));
    }

    Ok(ScenarioConfig {
        preset: preset.name(),
        hbar_omega: params.hbar_omega,
        e_j: params.e_j,
        e_z: params.e_z,
        beta: [params.beta.re, params.beta.im],
        gamma_flux: params.gamma_flux,
        gamma_amp: [gamma_amp.re, gamma_amp.im],
        n_fock: dims.n_fock(),
        guard: dims.guard(),
        check_n_fock: check_dims.n_fock(),
        check_guard: check_dims.guard(),
        t_start: grid.t_start(),
        t_end: grid.t_end(),
        n_points: grid.n_points(),
        outputs,
        wigner,
        sweep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_preset_defaults() {
        let cfg = ScenarioConfig::from_json("{}", Preset::Default).unwrap();
        assert_eq!(cfg, ScenarioConfig::from_preset(Preset::Default).unwrap());
        assert_eq!(cfg.params(), PhysParams::default());
        assert_eq!((cfg.n_fock, cfg.guard), (80, 12));
        assert_eq!(cfg.sweep.values, DEFAULT_SWEEP_BETAS);
        let deep = ScenarioConfig::from_json("{}", Preset::DeepSqueeze).unwrap();
        assert_eq!(deep.hbar_omega, 50.0);
        assert_ne!(cfg.hash(), deep.hash());
    }

    #[test]
    fn complex_values_accept_both_forms() {
        let cfg = ScenarioConfig::from_json(r#"{"params": {"beta": [0.3, 0.1]}, "gamma_amp": 0.5}"#, Preset::Default).unwrap();
        assert_eq!(cfg.beta, [0.3, 0.1]);
        assert_eq!(cfg.gamma_amp, [0.5, 0.0]);
    }

    #[test]
    fn unknown_keys_are_rejected_with_position() {
        let err = ScenarioConfig::from_json("{\n  \"params\": {\"hbar_omgea\": 3}\n}", Preset::Default).unwrap_err();
        match err {
            ConfigError::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("hbar_omgea"));
            }
            other => panic!("{other:?}"),
        }
        assert!(ScenarioConfig::from_json(r#"{"extra": 1}"#, Preset::Default).is_err());
    }

    #[test]
    fn semantic_errors() {
        for text in [
            r#"{"dims": {"n_fock": 4, "guard": 2}}"#,
            r#"{"grid": {"t_start": 2, "t_end": 1}}"#,
            r#"{"wigner": {"x_min": 1, "x_max": -1}}"#,
            r#"{"params": {"hbar_omega": -1}}"#,
            r#"{"sweep": {"values": []}}"#,
        ] {
            assert!(
                matches!(ScenarioConfig::from_json(text, Preset::Default), Err(ConfigError::Invalid { .. })),
                "{text}"
            );
        }
    }

    #[test]
    fn hash_is_stable() {
        let a = ScenarioConfig::from_json(r#"{"gamma_amp": 1.0}"#, Preset::Default).unwrap();
        let b = ScenarioConfig::from_json("{ }", Preset::Default).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
