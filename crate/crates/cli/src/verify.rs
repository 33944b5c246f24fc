//! Identity and oracle suite behind `sscat verify`.

use std::f64::consts::FRAC_2_PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;
use sscat_core::analytics::{fidelity, measure_qubit, ComponentOracle, ComponentPairing, Frame, SqueezeLabel};
use sscat_core::chain::{
    conjugation_residual, conjugation_residual_unscaled_constant, jc_regime_scan, jc_residual, rotation_residual, ur_residual,
};
use sscat_core::dynamics::{evolve_with, Propagator, TimeGrid};
use sscat_core::hamiltonians::{
    build_h_eff, build_h_full, build_h_jc, build_h_squeeze, build_h_ss, build_h_t, squeeze_coefficient, time_to_squeeze, xi_squared,
};
use sscat_core::hilbert::{
    coherent_state, joint_interior_unitarity_defect, Displacer, FieldState, HilbertDims, JointState, Qubit, TruncatedState,
};
use sscat_core::numerics::{frobenius, hermiticity_defect};
use sscat_core::observables::{quadrature_stats, wigner, wigner_point, WignerSpec};
use sscat_core::params::PhysParams;
use sscat_core::transforms::{build_small_rotations, build_t, build_ur};

use crate::config::ScenarioConfig;
use crate::output::{num, VERSION};

/// Squeeze magnitudes at which the squeezing law is checked.
pub const SQUEEZE_LAW_R: [f64; 3] = [0.1, 0.5, 1.0];
/// Ratios `E_J/(ħω|β|)` of the Jaynes-Cummings regime scan.
pub const JC_SCAN_RATIOS: [f64; 4] = [0.4, 0.2, 0.1, 0.05];
/// Leakage below which oracle and propagator must agree.
pub const ORACLE_LEAKAGE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    AtMost,
    AtLeast,
    Below,
    /// Reported, never fails.
    Info,
}

impl Comparison {
    fn symbol(self) -> &'static str {
        match self {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
            Comparison::Below => "<",
            Comparison::Info => "~",
        }
    }

    fn holds(self, value: f64, tolerance: f64) -> bool {
        match self {
            Comparison::AtMost => value <= tolerance,
            Comparison::AtLeast => value >= tolerance,
            Comparison::Below => value < tolerance,
            Comparison::Info => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub version: &'static str,
    pub config_hash: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut s = String::new();
        for c in &self.checks {
            let status = match (c.comparison, c.passed) {
                (Comparison::Info, _) => "INFO",
                (_, true) => "PASS",
                (_, false) => "FAIL",
            };
            let _ = write!(
                s,
                "{status}  {:width$}  {} {} {}",
                c.name,
                num(c.value),
                c.comparison.symbol(),
                num(c.tolerance)
            );
            if let Some(m) = &c.message {
                let _ = write!(s, "  ({m})");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{} of {} checks passed",
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        );
        s
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

type CheckResult = sscat_core::Result<f64>;

struct Suite {
    prefix: String,
    checks: Vec<Check>,
}

impl Suite {
    fn push(&mut self, name: &str, comparison: Comparison, tolerance: f64, result: CheckResult) {
        let (value, passed, message) = match result {
            Ok(v) => (v, comparison.holds(v, tolerance), None),
            Err(e) => (f64::NAN, false, Some(e.to_string())),
        };
        self.checks.push(Check {
            name: format!("{}{name}", self.prefix),
            value,
            tolerance,
            comparison,
            passed,
            message,
        });
    }
}

fn hermiticity(params: &PhysParams, dims: HilbertDims) -> CheckResult {
    let mut worst = 0.0f64;
    let mut consider = |h: sscat_core::numerics::CMatrix| worst = worst.max(hermiticity_defect(&h) / frobenius(&h));
    consider(build_h_full(params, dims)?);
    consider(build_h_t(params, dims)?);
    consider(build_h_jc(params, dims));
    consider(build_h_eff(params, dims)?);
    consider(build_h_squeeze(params, dims)?);
    consider(build_h_ss(params, dims)?);
    Ok(worst)
}

fn rotation_scaling(params: &PhysParams, dims: HilbertDims) -> CheckResult {
    let full = rotation_residual(params, dims)?.residual;
    let half = rotation_residual(&params.with_beta(params.beta * 0.5), dims)?.residual;
    Ok(full / half)
}

fn jc_monotone(params: &PhysParams, dims: HilbertDims) -> CheckResult {
    let rel = jc_regime_scan(params, &JC_SCAN_RATIOS, dims)?;
    Ok(rel.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max))
}

/// Trajectory-based checks: oracle agreement, joint norm, measurement.
struct TrajectoryChecks {
    oracle_infidelity: f64,
    joint_norm: f64,
    probability_sum: f64,
    collapse_infidelity: f64,
    propagator_unitarity: f64,
}

fn trajectory_checks(
    params: &PhysParams,
    dims: HilbertDims,
    grid: &TimeGrid,
    gamma_amp: Complex64,
) -> sscat_core::Result<TrajectoryChecks> {
    let h = build_h_ss(params, dims)?;
    let prop = Propagator::new(&h)?;
    let psi0 = JointState::product(Qubit::Ground, &coherent_state(gamma_amp, dims)?);
    let traj = evolve_with(&prop, &psi0, grid)?;
    traj.check()?;
    let oracle = ComponentOracle::new(gamma_amp, params, dims)?;
    let mut out = TrajectoryChecks {
        oracle_infidelity: 0.0,
        joint_norm: 0.0,
        probability_sum: 0.0,
        collapse_infidelity: 0.0,
        propagator_unitarity: joint_interior_unitarity_defect(&prop.matrix(grid.t_end()), dims),
    };
    for (&t, state) in traj.times.iter().zip(&traj.states) {
        let pg = state.qubit_component(Qubit::Ground).norm_squared();
        let pe = state.qubit_component(Qubit::Excited).norm_squared();
        out.probability_sum = out.probability_sum.max((pg + pe - 1.0).abs());
        if state.leakage() >= ORACLE_LEAKAGE {
            continue;
        }
        let comps = oracle.components(t)?;
        out.joint_norm = out.joint_norm.max((comps.joint_norm_sqr() - 1.0).abs());
        out.oracle_infidelity = out.oracle_infidelity.max(1.0 - fidelity(&comps.joint_state()?, state)?);
        if let Ok((_, collapsed)) = measure_qubit(state, Qubit::Ground) {
            let target = comps.phi_plus.normalize()?;
            out.collapse_infidelity = out.collapse_infidelity.max(1.0 - fidelity(&collapsed, &target)?);
        }
    }
    Ok(out)
}

fn squeezing_law(params: &PhysParams, dims: HilbertDims) -> CheckResult {
    let oracle = ComponentOracle::with_options(
        Complex64::new(0.0, 0.0),
        params,
        dims,
        Frame::OmegaStripped,
        ComponentPairing::Consistent,
    )?;
    let mut worst = 0.0f64;
    for r in SQUEEZE_LAW_R {
        let state = oracle.squeezed(SqueezeLabel::Plus, time_to_squeeze(params, r)?)?;
        let expected = (-2.0 * r).exp() / 4.0;
        worst = worst.max((quadrature_stats(&state).min_var - expected).abs());
    }
    Ok(worst)
}

fn cat_wigner(params: &PhysParams, dims: HilbertDims, gamma_amp: Complex64, r: f64) -> sscat_core::Result<(f64, f64)> {
    let t = time_to_squeeze(params, r)?;
    let h = build_h_ss(params, dims)?;
    let psi0 = JointState::product(Qubit::Ground, &coherent_state(gamma_amp, dims)?);
    let state = Propagator::new(&h)?.apply(t, psi0.amplitudes());
    let (_, collapsed) = measure_qubit(&JointState::new(dims, state)?, Qubit::Ground)?;
    let grid = wigner(&collapsed, &WignerSpec::default())?;
    Ok((grid.min(), grid.integral()))
}

fn t_star_scaling(params: &PhysParams) -> CheckResult {
    let beta = params.real_beta()?;
    let base = time_to_squeeze(params, 0.5)?;
    let doubled = time_to_squeeze(&params.with_beta(Complex64::new(2.0 * beta, 0.0)), 0.5)?;
    Ok((doubled / base - 0.25).abs())
}

/// Every check for one parameter set; names are prefixed with `label/`.
pub fn run_suite(label: &str, params: &PhysParams, cfg: &ScenarioConfig) -> Vec<Check> {
    let check = cfg.check_dims();
    let dims = cfg.dims();
    let grid = cfg.grid();
    let gamma_amp = cfg.gamma_amp();
    let mut s = Suite {
        prefix: format!("{label}/"),
        checks: Vec::new(),
    };

    s.push("hermiticity", Comparison::AtMost, 1e-10, hermiticity(params, check));
    s.push(
        "conjugation_identity",
        Comparison::AtMost,
        1e-6,
        conjugation_residual(params, check),
    );
    s.push(
        "conjugation_unscaled_constant",
        Comparison::Info,
        1e-6,
        conjugation_residual_unscaled_constant(params, check),
    );

    s.push(
        "unitarity_t",
        Comparison::AtMost,
        1e-8,
        build_t(params, check).map(|t| joint_interior_unitarity_defect(&t, check)),
    );
    match build_small_rotations(params, check) {
        Ok(rot) => {
            s.push(
                "unitarity_u1",
                Comparison::AtMost,
                1e-8,
                Ok(joint_interior_unitarity_defect(&rot.u1, check)),
            );
            s.push(
                "unitarity_u2",
                Comparison::AtMost,
                1e-8,
                Ok(joint_interior_unitarity_defect(&rot.u2, check)),
            );
        }
        Err(e) => {
            s.push("unitarity_u1", Comparison::AtMost, 1e-8, Err(e.clone()));
            s.push("unitarity_u2", Comparison::AtMost, 1e-8, Err(e));
        }
    }
    s.push(
        "unitarity_ur",
        Comparison::AtMost,
        1e-8,
        Ok(joint_interior_unitarity_defect(&build_ur(check), check)),
    );

    s.push(
        "jc_dropped_norm",
        Comparison::AtMost,
        1.5 * params.e_j,
        jc_residual(params, check).map(|r| r.dropped),
    );
    s.push("jc_regime_scan_max_step_ratio", Comparison::Below, 1.0, jc_monotone(params, check));

    s.push(
        "rotation_residual_over_bound",
        Comparison::AtMost,
        1.0,
        rotation_residual(params, check).map(|r| r.residual / r.bound),
    );
    s.push("rotation_halving_ratio", Comparison::AtLeast, 3.5, rotation_scaling(params, check));
    s.push("ur_rotation", Comparison::AtMost, 1e-10, ur_residual(params, check));
    s.push(
        "squeeze_coefficient_simplification",
        Comparison::AtMost,
        1e-14,
        squeeze_coefficient(params).and_then(|c| Ok((c + xi_squared(params)?).abs() / xi_squared(params)?.max(f64::MIN_POSITIVE))),
    );

    match trajectory_checks(params, dims, &grid, gamma_amp) {
        Ok(tc) => {
            s.push("unitarity_propagator", Comparison::AtMost, 1e-8, Ok(tc.propagator_unitarity));
            s.push(
                "oracle_vs_propagator_infidelity",
                Comparison::AtMost,
                1e-8,
                Ok(tc.oracle_infidelity),
            );
            s.push("analytic_joint_norm", Comparison::AtMost, 1e-8, Ok(tc.joint_norm));
            s.push("measurement_probability_sum", Comparison::AtMost, 1e-10, Ok(tc.probability_sum));
            s.push("collapse_infidelity", Comparison::AtMost, 1e-10, Ok(tc.collapse_infidelity));
        }
        Err(e) => {
            for (name, tol) in [
                ("unitarity_propagator", 1e-8),
                ("oracle_vs_propagator_infidelity", 1e-8),
                ("analytic_joint_norm", 1e-8),
                ("measurement_probability_sum", 1e-10),
                ("collapse_infidelity", 1e-10),
            ] {
                s.push(name, Comparison::AtMost, tol, Err(e.clone()));
            }
        }
    }

    s.push("squeezing_law", Comparison::AtMost, 1e-6, squeezing_law(params, dims));

    let vacuum = Displacer::new(dims).map(|d| (wigner_point(&d, &FieldState::vacuum(dims), Complex64::new(0.0, 0.0)) - FRAC_2_PI).abs());
    s.push("wigner_vacuum_origin", Comparison::AtMost, 1e-6, vacuum);
    match cat_wigner(params, dims, gamma_amp, 0.4) {
        Ok((min, integral)) => {
            s.push("wigner_cat_minimum", Comparison::Below, 0.0, Ok(min));
            s.push("wigner_cat_integral_error", Comparison::AtMost, 0.03, Ok((integral - 1.0).abs()));
        }
        Err(e) => {
            s.push("wigner_cat_minimum", Comparison::Below, 0.0, Err(e.clone()));
            s.push("wigner_cat_integral_error", Comparison::AtMost, 0.03, Err(e));
        }
    }
    s.push("t_star_quadratic_scaling", Comparison::AtMost, 1e-6, t_star_scaling(params));
    s.checks
}

/// Runs the suite once per labelled parameter set.
pub fn verify(cfg: &ScenarioConfig, sets: &[(&str, PhysParams)]) -> VerifyReport {
    let mut checks = Vec::new();
    for (label, params) in sets {
        checks.extend(run_suite(label, params, cfg));
    }
    VerifyReport {
        version: VERSION,
        config_hash: cfg.hash(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
