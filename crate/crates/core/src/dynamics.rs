//! Exact time evolution through one spectral decomposition per Hamiltonian.

use crate::error::{Error, Result};
use crate::hilbert::{HilbertDims, JointState, TruncatedState};
use crate::numerics::{hermitian_eig, vector_norm, CMatrix, CVector, ScalarFn, SpectralDecomposition};

/// Guard-band population above which a trajectory is cut.
pub const LEAKAGE_ABORT_TOL: f64 = 1e-6;

/// Uniform grid on `[t_start, t_end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    n_points: usize,
}

impl TimeGrid {
    /// `n_points ≥ 2`, or exactly one point when `t_start == t_end`.
    pub fn new(t_start: f64, t_end: f64, n_points: usize) -> Result<Self> {
        if !t_start.is_finite() || !t_end.is_finite() {
            return Err(Error::InvalidGrid("grid bounds must be finite".into()));
        }
        if t_end < t_start {
            return Err(Error::InvalidGrid(format!("t_end {t_end} < t_start {t_start}")));
        }
        let single = n_points == 1 && t_start == t_end;
        if n_points < 2 && !single {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n_points}")));
        }
        Ok(Self { t_start, t_end, n_points })
    }

    pub fn single(t: f64) -> Result<Self> {
        Self::new(t, t, 1)
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn step(&self) -> f64 {
        if self.n_points < 2 {
            0.0
        } else {
            (self.t_end - self.t_start) / (self.n_points - 1) as f64
        }
    }

    /// Point `k`, computed directly so the last point is exactly `t_end`.
    pub fn time(&self, k: usize) -> f64 {
        if k + 1 == self.n_points {
            self.t_end
        } else {
            self.t_start + k as f64 * self.step()
        }
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.time(k)).collect()
    }
}

/// `exp(−iHt)` for a fixed Hermitian `H`, reusable across times.
#[derive(Debug, Clone)]
pub struct Propagator {
    eig: SpectralDecomposition,
}

impl Propagator {
    pub fn new(h: &CMatrix) -> Result<Self> {
        Ok(Self { eig: hermitian_eig(h)? })
    }

    pub fn dim(&self) -> usize {
        self.eig.dim()
    }

    pub fn matrix(&self, t: f64) -> CMatrix {
        self.eig.apply(ScalarFn::ExpIScale(-t))
    }

    pub fn apply(&self, t: f64, psi: &CVector) -> CVector {
        let f = ScalarFn::ExpIScale(-t);
        self.eig.apply_to_vector(|x| f.eval(x), psi)
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.eig
    }
}

pub fn propagator(h: &CMatrix, t: f64) -> Result<CMatrix> {
    Ok(Propagator::new(h)?.matrix(t))
}

/// Evolved states on a grid. After a leakage abort, `times` ends at the
/// first offending point and nothing later is stored.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<JointState>,
    pub leakages: Vec<f64>,
    pub aborted: bool,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `Err(LeakageAbort)` describing the last point if the run was cut.
    pub fn check(&self) -> Result<()> {
        if !self.aborted {
            return Ok(());
        }
        let k = self.len() - 1;
        Err(Error::LeakageAbort {
            t: self.times[k],
            leakage: self.leakages[k],
            tolerance: LEAKAGE_ABORT_TOL,
        })
    }

    pub fn max_norm_error(&self) -> f64 {
        self.states.iter().map(|s| (s.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

pub fn evolve(h: &CMatrix, psi0: &JointState, grid: &TimeGrid) -> Result<Trajectory> {
    let prop = Propagator::new(h)?;
    evolve_with(&prop, psi0, grid)
}

/// Evolution with a precomputed propagator.
pub fn evolve_with(prop: &Propagator, psi0: &JointState, grid: &TimeGrid) -> Result<Trajectory> {
    let dims: HilbertDims = psi0.dims();
    if prop.dim() != dims.joint_dim() {
        return Err(Error::DimensionMismatch {
            expected: dims.joint_dim(),
            found: prop.dim(),
        });
    }
    let mut traj = Trajectory {
        times: Vec::with_capacity(grid.n_points()),
        states: Vec::with_capacity(grid.n_points()),
        leakages: Vec::with_capacity(grid.n_points()),
        aborted: false,
    };
    for t in grid.times() {
        let v = prop.apply(t, psi0.amplitudes());
        debug_assert!((vector_norm(&v) - 1.0).abs() < 1e-9);
        let state = JointState::from_raw(dims, v);
        let leak = state.leakage();
        traj.times.push(t);
        traj.states.push(state);
        traj.leakages.push(leak);
        if leak > LEAKAGE_ABORT_TOL {
            traj.aborted = true;
            break;
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::build_h_ss;
    use crate::hilbert::{coherent_state, number, qf, qubit_identity, FieldState, Qubit};
    use crate::numerics::{c, frobenius, identity, inner, real, unitarity_defect, C64};
    use crate::params::PhysParams;

    #[test]
    fn grid_construction() {
        let g = TimeGrid::new(0.0, 3.0, 61).unwrap();
        assert_eq!(g.times().len(), 61);
        assert_eq!(g.time(60), 3.0);
        assert!((g.step() - 0.05).abs() < 1e-15);
        assert_eq!(TimeGrid::single(0.0).unwrap().times(), vec![0.0]);
        assert!(TimeGrid::new(0.0, 1.0, 1).is_err());
        assert!(TimeGrid::new(1.0, 0.0, 5).is_err());
        assert!(TimeGrid::new(0.0, f64::NAN, 5).is_err());
    }

    #[test]
    fn propagator_at_zero_is_identity() {
        let d = HilbertDims::new(10, 4).unwrap();
        let h = build_h_ss(&PhysParams::default(), d).unwrap();
        assert!(frobenius(&(propagator(&h, 0.0).unwrap() - identity(20))) < 1e-13);
    }

    #[test]
    fn free_field_rotates_coherent_state() {
        let d = HilbertDims::new(60, 12).unwrap();
        let omega = 10.0;
        let h = qf(&qubit_identity(), &(number(d) * real(omega)));
        let psi0 = JointState::product(Qubit::Ground, &coherent_state(real(1.0), d).unwrap());
        let t = 0.37;
        let traj = evolve(&h, &psi0, &TimeGrid::single(t).unwrap()).unwrap();
        let rotated = coherent_state(C64::from_polar(1.0, -omega * t), d).unwrap();
        let expected = JointState::product(Qubit::Ground, &rotated);
        let f = inner(expected.amplitudes(), traj.states[0].amplitudes()).norm_sqr();
        assert!(f >= 1.0 - 1e-9, "{f}");
    }

    #[test]
    fn propagators_compose_and_are_unitary() {
        let d = HilbertDims::new(20, 6).unwrap();
        let h = build_h_ss(&PhysParams::default(), d).unwrap();
        let p = Propagator::new(&h).unwrap();
        let lhs = p.matrix(0.3) * p.matrix(0.5);
        assert!(frobenius(&(lhs - p.matrix(0.8))) < 1e-9);
        assert!(unitarity_defect(&p.matrix(2.0)) < 1e-9 * 40.0);
    }

    #[test]
    fn norm_conserved_under_squeeze_hamiltonian() {
        let d = HilbertDims::DYNAMICS;
        let h = build_h_ss(&PhysParams::default(), d).unwrap();
        let psi0 = JointState::product(Qubit::Ground, &coherent_state(real(1.0), d).unwrap());
        let traj = evolve(&h, &psi0, &TimeGrid::new(0.0, 3.0, 61).unwrap()).unwrap();
        traj.check().unwrap();
        assert_eq!(traj.len(), 61);
        assert!(traj.max_norm_error() < 1e-9);
    }

    #[test]
    fn eigenstate_is_stationary() {
        let d = HilbertDims::new(16, 4).unwrap();
        let h = build_h_ss(&PhysParams::default(), d).unwrap();
        let eig = hermitian_eig(&h).unwrap();
        let v = eig.eigenvectors.column(3).into_owned();
        let psi0 = JointState::new(d, v).unwrap();
        let traj = evolve(&h, &psi0, &TimeGrid::new(0.0, 2.0, 5).unwrap()).unwrap();
        for s in &traj.states {
            assert!((inner(psi0.amplitudes(), s.amplitudes()).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn leakage_cuts_trajectory() {
        // a strong squeeze pushes population into the guard band quickly
        let d = HilbertDims::new(12, 4).unwrap();
        let h = qf(&qubit_identity(), &(crate::hilbert::two_photon(d) * c(3.0, 0.0)));
        let psi0 = JointState::product(Qubit::Ground, &FieldState::vacuum(d));
        let traj = evolve(&h, &psi0, &TimeGrid::new(0.0, 5.0, 51).unwrap()).unwrap();
        assert!(traj.aborted);
        assert!(traj.len() < 51);
        assert!(*traj.leakages.last().unwrap() > LEAKAGE_ABORT_TOL);
        assert!(traj.leakages[..traj.len() - 1].iter().all(|&l| l <= LEAKAGE_ABORT_TOL));
        assert!(matches!(traj.check(), Err(Error::LeakageAbort { .. })));
    }
}
