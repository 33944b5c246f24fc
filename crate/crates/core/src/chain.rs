//! Residuals of each step of the Hamiltonian chain, measured separately.
//!
//! Every residual is a plain number so callers can tabulate or threshold it.

use crate::error::Result;
use crate::hamiltonians::{
    build_h_eff, build_h_full, build_h_jc, build_h_squeeze, build_h_ss, build_h_t, dispersive_coefficient, dispersive_operator, drive_term,
    h_t_constant, h_t_constant_unscaled,
};
use crate::hilbert::{joint_interior, joint_restrict, HilbertDims};
use crate::numerics::{frobenius, identity, real, spectral_norm, CMatrix};
use crate::params::PhysParams;
use crate::transforms::{build_small_rotations_with, build_t, build_ur, RotationPairing};

/// Fock levels `n ≤ 10` used to measure the Jaynes-Cummings dropped terms.
pub const JC_LEVELS: usize = 11;
/// Constant `C` in the rotation bound `C(|ε₁| + |ε₂|)²‖H_JC‖_F`.
pub const ROTATION_BOUND_FACTOR: f64 = 4.0;

fn conjugation_residual_with(params: &PhysParams, dims: HilbertDims, constant: f64) -> Result<f64> {
    let h = build_h_full(params, dims)?;
    let t = build_t(params, dims)?;
    let n2 = dims.joint_dim();
    let shift = identity(n2) * real(constant - h_t_constant(params));
    let expected = build_h_t(params, dims)? + shift;
    let diff = &t * &h * t.adjoint() - expected;
    Ok(frobenius(&joint_interior(&diff, dims)) / frobenius(&joint_interior(&h, dims)))
}

/// `‖T H T† − H_T‖_F / ‖H‖_F` on the interior block.
pub fn conjugation_residual(params: &PhysParams, dims: HilbertDims) -> Result<f64> {
    conjugation_residual_with(params, dims, h_t_constant(params))
}

/// Same residual with the offset `|β/2|²`, missing the factor ħω.
pub fn conjugation_residual_unscaled_constant(params: &PhysParams, dims: HilbertDims) -> Result<f64> {
    conjugation_residual_with(params, dims, h_t_constant_unscaled(params))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcResidual {
    /// Spectral norm of `H_T − H_JC − const` on levels `n ≤ 10`.
    pub dropped: f64,
    /// Spectral norm of the σ_x drive on the same block.
    pub drive: f64,
}

impl JcResidual {
    pub fn relative(&self) -> f64 {
        self.dropped / self.drive
    }
}

pub fn jc_residual(params: &PhysParams, dims: HilbertDims) -> Result<JcResidual> {
    let n2 = dims.joint_dim();
    let dropped = build_h_t(params, dims)? - build_h_jc(params, dims) - identity(n2) * real(h_t_constant(params));
    let drive = drive_term(params, dims);
    Ok(JcResidual {
        dropped: spectral_norm(&joint_restrict(&dropped, dims, JC_LEVELS)),
        drive: spectral_norm(&joint_restrict(&drive, dims, JC_LEVELS)),
    })
}

/// Relative JC residuals along `E_J/(ħω|β|) ∈ ratios`, varying ħω at the
/// given β and `E_J`.
pub fn jc_regime_scan(base: &PhysParams, ratios: &[f64], dims: HilbertDims) -> Result<Vec<f64>> {
    ratios
        .iter()
        .map(|&ratio| {
            let params = PhysParams {
                hbar_omega: base.e_j / (ratio * base.beta.norm()),
                ..*base
            };
            jc_residual(&params, dims).map(|r| r.relative())
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationResidual {
    /// `‖U₂U₁ H_JC U₁†U₂† − H_eff‖_F`.
    pub residual: f64,
    /// `4(|ε₁| + |ε₂|)²‖H_JC‖_F`.
    pub bound: f64,
    pub h_jc_norm: f64,
}

impl RotationResidual {
    pub fn relative(&self) -> f64 {
        self.residual / self.h_jc_norm
    }

    pub fn within_bound(&self) -> bool {
        self.residual <= self.bound
    }
}

pub fn rotation_residual(params: &PhysParams, dims: HilbertDims) -> Result<RotationResidual> {
    rotation_residual_with(params, dims, RotationPairing::default())
}

pub fn rotation_residual_with(params: &PhysParams, dims: HilbertDims, pairing: RotationPairing) -> Result<RotationResidual> {
    let rot = build_small_rotations_with(params, dims, pairing)?;
    let h_jc = build_h_jc(params, dims);
    let u = rot.combined();
    let diff = &u * &h_jc * u.adjoint() - build_h_eff(params, dims)?;
    let h_jc_norm = frobenius(&h_jc);
    let eps = rot.eps1.norm() + rot.eps2.norm();
    Ok(RotationResidual {
        residual: frobenius(&diff),
        bound: ROTATION_BOUND_FACTOR * eps * eps * h_jc_norm,
        h_jc_norm,
    })
}

/// `‖U_R H_squeeze U_R† − H_SS‖_F / ‖H_SS‖_F`.
pub fn ur_residual(params: &PhysParams, dims: HilbertDims) -> Result<f64> {
    let ur = build_ur(dims);
    let hss = build_h_ss(params, dims)?;
    let diff: CMatrix = &ur * build_h_squeeze(params, dims)? * ur.adjoint() - &hss;
    Ok(frobenius(&diff) / frobenius(&hss))
}

/// Frobenius norm of the dispersive term removed from `H_eff`.
pub fn dispersive_norm(params: &PhysParams, dims: HilbertDims) -> Result<f64> {
    Ok(dispersive_coefficient(params)?.abs() * frobenius(&dispersive_operator(dims)))
}

/// Every contribution separating `H_SS` from the conjugated full
/// Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainReport {
    pub conjugation: f64,
    pub jc: JcResidual,
    pub rotation: RotationResidual,
    pub ur: f64,
    pub dispersive: f64,
}

pub fn chain_report(params: &PhysParams, dims: HilbertDims) -> Result<ChainReport> {
    Ok(ChainReport {
        conjugation: conjugation_residual(params, dims)?,
        jc: jc_residual(params, dims)?,
        rotation: rotation_residual(params, dims)?,
        ur: ur_residual(params, dims)?,
        dispersive: dispersive_norm(params, dims)?,
    })
}
