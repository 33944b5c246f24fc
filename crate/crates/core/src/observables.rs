//! Field diagnostics: quadrature moments, photon statistics, Wigner grids.
//!
//! Quadratures are `X = (a + a†)/2`, `P = (a − a†)/(2i)`; the vacuum has
//! `Var X = Var P = 1/4`.

use std::f64::consts::FRAC_2_PI;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hilbert::{annihilation, creation, Displacer, FieldState, HilbertDims, TruncatedState};
use crate::numerics::{c, expectation, real, CMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureStats {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    /// Symmetrized covariance `⟨XP + PX⟩/2 − ⟨X⟩⟨P⟩`.
    pub cov_xp: f64,
    /// `min_φ Var(X cos φ + P sin φ)`.
    pub min_var: f64,
}

fn quadrature_ops(dims: HilbertDims) -> (CMatrix, CMatrix) {
    let a = annihilation(dims);
    let ad = creation(dims);
    ((&a + &ad) * real(0.5), (a - ad) * c(0.0, -0.5))
}

/// Moments of `state`, divided by `⟨ψ|ψ⟩`.
pub fn quadrature_stats(state: &FieldState) -> QuadratureStats {
    let psi = state.amplitudes();
    let norm2 = psi.norm_squared();
    let (x, p) = quadrature_ops(state.dims());
    let ev = |op: &CMatrix| expectation(op, psi).re / norm2;
    let mean_x = ev(&x);
    let mean_p = ev(&p);
    let var_x = ev(&(&x * &x)) - mean_x * mean_x;
    let var_p = ev(&(&p * &p)) - mean_p * mean_p;
    let cov_xp = ev(&((&x * &p + &p * &x) * real(0.5))) - mean_x * mean_p;
    // smaller eigenvalue of [[var_x, cov], [cov, var_p]]
    let half_sum = (var_x + var_p) / 2.0;
    let half_diff = (var_x - var_p) / 2.0;
    let min_var = half_sum - half_diff.hypot(cov_xp);
    QuadratureStats {
        mean_x,
        mean_p,
        var_x,
        var_p,
        cov_xp,
        min_var,
    }
}

/// `pₙ = |cₙ|²`.
pub fn photon_distribution(state: &FieldState) -> Vec<f64> {
    state.amplitudes().iter().map(|z| z.norm_sqr()).collect()
}

/// Square phase-space grid with `α = x + ip`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    /// Points per axis.
    pub resolution: usize,
}

impl Default for WignerSpec {
    fn default() -> Self {
        Self {
            x_min: -4.0,
            x_max: 4.0,
            p_min: -4.0,
            p_max: 4.0,
            resolution: 41,
        }
    }
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|k| if k + 1 == n { hi } else { lo + k as f64 * step }).collect()
}

impl WignerSpec {
    pub fn validate(&self) -> Result<()> {
        let bounds = [self.x_min, self.x_max, self.p_min, self.p_max];
        if !bounds.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidGrid("Wigner range must be finite".into()));
        }
        if self.x_min >= self.x_max || self.p_min >= self.p_max {
            return Err(Error::InvalidGrid(format!(
                "Wigner range is empty or reversed: x [{}, {}], p [{}, {}]",
                self.x_min, self.x_max, self.p_min, self.p_max
            )));
        }
        if self.resolution < 2 {
            return Err(Error::InvalidGrid(format!("resolution {} < 2", self.resolution)));
        }
        Ok(())
    }

    pub fn xs(&self) -> Vec<f64> {
        axis(self.x_min, self.x_max, self.resolution)
    }

    pub fn ps(&self) -> Vec<f64> {
        axis(self.p_min, self.p_max, self.resolution)
    }

    /// Largest `|α|` on the grid.
    pub fn max_radius(&self) -> f64 {
        let x = self.x_min.abs().max(self.x_max.abs());
        let p = self.p_min.abs().max(self.p_max.abs());
        x.hypot(p)
    }

    /// `|α|² + 3|α| < N − G` at the farthest corner.
    pub fn check_trust_region(&self, dims: HilbertDims) -> Result<()> {
        let r = self.max_radius();
        let reach = r * r + 3.0 * r;
        if reach >= dims.interior() as f64 {
            return Err(Error::TrustRegionViolation {
                reach,
                limit: dims.interior(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub spec: WignerSpec,
    pub xs: Vec<f64>,
    pub ps: Vec<f64>,
    /// `values[(i, j)] = W(xs[i] + i·ps[j])`.
    pub values: DMatrix<f64>,
}

impl WignerGrid {
    pub fn min(&self) -> f64 {
        self.values.min()
    }

    pub fn max(&self) -> f64 {
        self.values.max()
    }

    /// Riemann sum `Σ W Δx Δp`.
    pub fn integral(&self) -> f64 {
        let dx = (self.spec.x_max - self.spec.x_min) / (self.spec.resolution - 1) as f64;
        let dp = (self.spec.p_max - self.spec.p_min) / (self.spec.resolution - 1) as f64;
        self.values.sum() * dx * dp
    }
}

/// `(2/π) Σₙ (−1)ⁿ |(D(−α)ψ)ₙ|²`, normalized by `⟨ψ|ψ⟩`.
pub fn wigner_point(displacer: &Displacer, state: &FieldState, alpha: C64) -> f64 {
    let shifted = displacer.apply(-alpha, state.amplitudes());
    let parity: f64 = shifted
        .iter()
        .enumerate()
        .map(|(n, z)| if n % 2 == 0 { z.norm_sqr() } else { -z.norm_sqr() })
        .sum();
    FRAC_2_PI * parity / state.amplitudes().norm_squared()
}

pub fn wigner(state: &FieldState, spec: &WignerSpec) -> Result<WignerGrid> {
    spec.validate()?;
    let dims = state.dims();
    spec.check_trust_region(dims)?;
    let displacer = Displacer::new(dims)?;
    let xs = spec.xs();
    let ps = spec.ps();
    let rows: Vec<Vec<f64>> = xs
        .par_iter()
        .map(|&x| ps.iter().map(|&p| wigner_point(&displacer, state, C64::new(x, p))).collect())
        .collect();
    let values = DMatrix::from_fn(xs.len(), ps.len(), |i, j| rows[i][j]);
    Ok(WignerGrid {
        spec: *spec,
        xs,
        ps,
        values,
    })
}
