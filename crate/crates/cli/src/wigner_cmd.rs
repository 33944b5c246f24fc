//! `sscat wigner`: Wigner grid of the field after a qubit measurement.

use sscat_core::analytics::measure_qubit;
use sscat_core::dynamics::Propagator;
use sscat_core::hamiltonians::build_h_ss;
use sscat_core::hilbert::{coherent_state, JointState, Qubit, TruncatedState};
use sscat_core::observables::wigner;

use crate::config::ScenarioConfig;
use crate::output::{header, num, Csv};

pub fn run(cfg: &ScenarioConfig) -> sscat_core::Result<String> {
    let params = cfg.params();
    let dims = cfg.dims();
    let w = &cfg.wigner;
    let h = build_h_ss(&params, dims)?;
    let psi0 = JointState::product(Qubit::Ground, &coherent_state(cfg.gamma_amp(), dims)?);
    let evolved = JointState::new(dims, Propagator::new(&h)?.apply(w.t, psi0.amplitudes()))?;
    let (p, field) = measure_qubit(&evolved, w.outcome.qubit())?;
    let grid = wigner(&field, &w.spec())?;

    let extra = vec![format!(
        "state outcome={} t={} probability={} leakage={}",
        w.outcome.label(),
        num(w.t),
        num(p),
        num(evolved.leakage())
    )];
    let mut csv = Csv::new(header(&cfg.hash(), &extra), &["x", "p", "w"]);
    for (i, &x) in grid.xs.iter().enumerate() {
        for (j, &pv) in grid.ps.iter().enumerate() {
            csv.row(&[x, pv, grid.values[(i, j)]]);
        }
    }
    Ok(csv.finish())
}
