//! `sscat evolve`: H_SS evolution of `|γ⟩|g⟩` against the analytic state.

use sscat_core::analytics::{fidelity, measure_qubit, ComponentOracle};
use sscat_core::dynamics::{evolve, LEAKAGE_ABORT_TOL};
use sscat_core::hamiltonians::build_h_ss;
use sscat_core::hilbert::{coherent_state, JointState, Qubit};
use sscat_core::observables::quadrature_stats;

use crate::config::ScenarioConfig;
use crate::output::{header, num, Csv};

pub const COLUMNS: [&str; 8] = [
    "t",
    "fidelity_vs_analytic",
    "p_g",
    "p_e",
    "var_x_g",
    "var_p_g",
    "min_var_g",
    "leakage",
];

pub struct EvolveOutput {
    pub csv: String,
    pub aborted: bool,
}

pub fn run(cfg: &ScenarioConfig) -> sscat_core::Result<EvolveOutput> {
    let params = cfg.params();
    let dims = cfg.dims();
    let gamma_amp = cfg.gamma_amp();
    let h = build_h_ss(&params, dims)?;
    let psi0 = JointState::product(Qubit::Ground, &coherent_state(gamma_amp, dims)?);
    let traj = evolve(&h, &psi0, &cfg.grid())?;
    let oracle = ComponentOracle::new(gamma_amp, &params, dims)?;

    let extra = vec![
        format!("initial |gamma>|g>, gamma = {} + {}i", num(gamma_amp.re), num(gamma_amp.im)),
        "fidelity_vs_analytic is NaN where the analytic components leak".to_string(),
    ];
    let mut csv = Csv::new(header(&cfg.hash(), &extra), &COLUMNS);
    for ((&t, state), &leak) in traj.times.iter().zip(&traj.states).zip(&traj.leakages) {
        if traj.aborted && leak > LEAKAGE_ABORT_TOL {
            csv.comment(&format!(
                "leakage_abort t={} leakage={} tolerance={}",
                num(t),
                num(leak),
                num(LEAKAGE_ABORT_TOL)
            ));
            break;
        }
        let f = oracle.psi_tr(t).and_then(|a| fidelity(&a, state)).unwrap_or(f64::NAN);
        let pg = state.qubit_component(Qubit::Ground).norm_squared();
        let pe = state.qubit_component(Qubit::Excited).norm_squared();
        let (vx, vp, vmin) = match measure_qubit(state, Qubit::Ground) {
            Ok((_, field)) => {
                let s = quadrature_stats(&field);
                (s.var_x, s.var_p, s.min_var)
            }
            Err(_) => (f64::NAN, f64::NAN, f64::NAN),
        };
        csv.row(&[t, f, pg, pe, vx, vp, vmin, leak]);
    }
    Ok(EvolveOutput {
        csv: csv.finish(),
        aborted: traj.aborted,
    })
}
