//! `sscat sweep`: preparation time and chain residuals across a parameter.

use num_complex::Complex64;
use rayon::prelude::*;
use sscat_core::analytics::{ComponentOracle, ComponentPairing, Frame, SqueezeLabel};
use sscat_core::chain::{jc_residual, rotation_residual};
use sscat_core::hamiltonians::{time_to_squeeze, xi_squared};
use sscat_core::hilbert::HilbertDims;
use sscat_core::observables::quadrature_stats;
use sscat_core::params::PhysParams;

use crate::config::{ScenarioConfig, SweepParameter};
use crate::output::{header, num, Csv};

/// Points of the per-row crossing grid on `[0, 2·t_star]`.
pub const CROSSING_POINTS: usize = 101;
/// Allowed distance between analytic and observed crossing, in grid steps.
pub const CROSSING_STEPS: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub params: PhysParams,
    pub xi_squared: f64,
    pub t_star: f64,
    pub chain_residual_jc: f64,
    pub chain_residual_rot: f64,
    /// First grid time where the ω-stripped vacuum variance drops to
    /// `e^{−2r}/4`; NaN when unavailable.
    pub t_cross: f64,
    pub step: f64,
}

impl SweepRow {
    /// `|t_cross − t_star|` in grid steps.
    pub fn crossing_offset(&self) -> f64 {
        (self.t_cross - self.t_star).abs() / self.step
    }
}

fn crossing(params: &PhysParams, dims: HilbertDims, r_target: f64, t_star: f64) -> sscat_core::Result<(f64, f64)> {
    let oracle = ComponentOracle::with_options(
        Complex64::new(0.0, 0.0),
        params,
        dims,
        Frame::OmegaStripped,
        ComponentPairing::Consistent,
    )?;
    let threshold = (-2.0 * r_target).exp() / 4.0;
    let step = 2.0 * t_star / (CROSSING_POINTS - 1) as f64;
    for k in 0..CROSSING_POINTS {
        let t = k as f64 * step;
        let state = oracle.squeezed(SqueezeLabel::Plus, t)?;
        if quadrature_stats(&state).min_var <= threshold {
            return Ok((t, step));
        }
    }
    Ok((f64::NAN, step))
}

pub fn sweep_row(base: &PhysParams, parameter: SweepParameter, value: f64, cfg: &ScenarioConfig) -> SweepRow {
    let params = parameter.apply(base, value);
    let r_target = cfg.sweep.r_target;
    let xi2 = xi_squared(&params).unwrap_or(f64::NAN);
    let t_star = time_to_squeeze(&params, r_target).unwrap_or(f64::NAN);
    let check = cfg.check_dims();
    let jc = jc_residual(&params, check).map(|r| r.relative()).unwrap_or(f64::NAN);
    let rot = rotation_residual(&params, check).map(|r| r.relative()).unwrap_or(f64::NAN);
    let (t_cross, step) = if t_star.is_finite() {
        crossing(&params, cfg.dims(), r_target, t_star).unwrap_or((f64::NAN, f64::NAN))
    } else {
        (f64::NAN, f64::NAN)
    };
    SweepRow {
        value,
        params,
        xi_squared: xi2,
        t_star,
        chain_residual_jc: jc,
        chain_residual_rot: rot,
        t_cross,
        step,
    }
}

pub struct SweepOutput {
    pub csv: String,
    pub rows: Vec<SweepRow>,
    /// Every finite `t_star` was matched by the observed crossing.
    pub crossing_ok: bool,
}

pub fn run(cfg: &ScenarioConfig) -> SweepOutput {
    let base = cfg.params();
    let parameter = cfg.sweep.parameter;
    let rows: Vec<SweepRow> = cfg.sweep.values.par_iter().map(|&v| sweep_row(&base, parameter, v, cfg)).collect();

    let mut columns = Vec::new();
    if parameter != SweepParameter::Beta {
        columns.push(parameter.name());
    }
    columns.extend(["beta", "xi_squared", "t_star", "chain_residual_jc", "chain_residual_rot"]);
    let extra = vec![
        format!("t_star = r/(2 xi^2) at r = {}", num(cfg.sweep.r_target)),
        "NaN residual: step not applicable at that point (e.g. small-rotation parameter above bound)".to_string(),
    ];
    let mut csv = Csv::new(header(&cfg.hash(), &extra), &columns);
    let mut crossing_ok = true;
    let mut worst = 0.0f64;
    for row in &rows {
        let mut cells = Vec::new();
        if parameter != SweepParameter::Beta {
            cells.push(row.value);
        }
        cells.extend([
            row.params.beta.re,
            row.xi_squared,
            row.t_star,
            row.chain_residual_jc,
            row.chain_residual_rot,
        ]);
        csv.row(&cells);
        if row.t_star.is_finite() {
            let off = row.crossing_offset();
            if off.is_nan() || off > CROSSING_STEPS {
                crossing_ok = false;
            }
            if off.is_finite() {
                worst = worst.max(off);
            }
        }
    }
    csv.comment(&format!(
        "crossing check: max |t_cross - t_star| = {} steps (limit {}) {}",
        num(worst),
        num(CROSSING_STEPS),
        if crossing_ok { "ok" } else { "FAILED" }
    ));
    SweepOutput {
        csv: csv.finish(),
        rows,
        crossing_ok,
    }
}
