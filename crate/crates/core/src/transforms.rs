//! Unitary transformations applied along the Hamiltonian chain: the
//! linearizing transformation `T`, the two small rotations `U₁`, `U₂`, and the
//! qubit rotation `U_R` that maps `σ_z` to `σ_x`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::hilbert::{
    annihilation, creation, displacement, field_identity, qf, qubit_identity, sigma_minus, sigma_plus, sigma_z, HilbertDims,
};
use crate::numerics::{c, hermitian_eig, real, CMatrix, ScalarFn, C64};
use crate::params::PhysParams;

/// Upper bound on |ε₁|, |ε₂| for the small-rotation expansion.
pub const EPS_BOUND: f64 = 0.2;
/// Relative distance to the resonance E_J = ħω below which ε diverges.
pub const RESONANCE_RTOL: f64 = 1e-6;

/// `D(α, γ) = D(α) e^{iγ/2}` with `α = iβ*/2`.
pub fn shifted_displacement(params: &PhysParams, dims: HilbertDims) -> Result<CMatrix> {
    let alpha = c(0.0, 1.0) * params.beta.conj() * 0.5;
    Ok(displacement(alpha, dims)? * C64::from_polar(1.0, params.gamma_flux / 2.0))
}

/// `T = (1/√2){−½[D† − D] − ½[D† + D]σ_z + Dσ₊ + D†σ₋}`.
///
/// In the `(|e⟩, |g⟩)` block form this is `(1/√2)[[−D†, D], [D†, D]]`.
pub fn build_t(params: &PhysParams, dims: HilbertDims) -> Result<CMatrix> {
    let d = shifted_displacement(params, dims)?;
    let dd = d.adjoint();
    let t = qf(&qubit_identity(), &((&dd - &d) * real(-0.5))) - qf(&sigma_z(), &((&dd + &d) * real(0.5)))
        + qf(&sigma_plus(), &d)
        + qf(&sigma_minus(), &dd);
    Ok(t * real(FRAC_1_SQRT_2))
}

/// Which generator each small parameter multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RotationPairing {
    /// `U₁ = exp[ε₁(aσ₊ + σ₋a†)]`, `U₂ = exp[ε₂(a†σ₊ + σ₋a)]`: each ε is
    /// attached to the generator whose commutator with `ħωa†a + (E_J/2)σ_z`
    /// cancels the matching part of the σ_x drive, so the first-order term
    /// vanishes.
    #[default]
    Cancelling,
    /// `U₁ = exp[ε₁(a†σ₊ + σ₋a)]`, `U₂ = exp[ε₂(aσ₊ + σ₋a†)]`: the
    /// generators exchanged; leaves an O(β) first-order residual.
    Swapped,
}

/// `a†σ₊ + σ₋a`.
pub fn counter_rotating_generator(dims: HilbertDims) -> CMatrix {
    qf(&sigma_plus(), &creation(dims)) + qf(&sigma_minus(), &annihilation(dims))
}

/// `aσ₊ + σ₋a†`.
pub fn co_rotating_generator(dims: HilbertDims) -> CMatrix {
    qf(&sigma_plus(), &annihilation(dims)) + qf(&sigma_minus(), &creation(dims))
}

#[derive(Debug, Clone)]
pub struct SmallRotations {
    pub eps1: C64,
    pub eps2: C64,
    pub pairing: RotationPairing,
    /// Hermitian `A₁` with `u1 = exp(ε₁A₁)`.
    pub gen1: CMatrix,
    pub gen2: CMatrix,
    pub u1: CMatrix,
    pub u2: CMatrix,
}

impl SmallRotations {
    /// `U₂U₁`.
    pub fn combined(&self) -> CMatrix {
        &self.u2 * &self.u1
    }
}

/// `ε₁ = iħωβ/(2(E_J − ħω))`, `ε₂ = −iħωβ/(2(E_J + ħω))`.
pub fn small_parameters(params: &PhysParams) -> Result<(C64, C64)> {
    let beta = params.real_beta()?;
    let hw = params.hbar_omega;
    let ej = params.e_j;
    if (ej - hw).abs() < RESONANCE_RTOL * hw {
        return Err(Error::ResonanceSingularity(format!(
            "E_J = {ej} is resonant with hbar_omega = {hw}"
        )));
    }
    let eps1 = c(0.0, hw * beta / (2.0 * (ej - hw)));
    let eps2 = c(0.0, -hw * beta / (2.0 * (ej + hw)));
    Ok((eps1, eps2))
}

/// `exp(εA)` for Hermitian `A` and purely imaginary `ε`.
pub fn exp_generator(eps: C64, generator: &CMatrix) -> Result<CMatrix> {
    // εA = i·(−iεA), −iεA Hermitian
    let k = generator * (c(0.0, -1.0) * eps);
    Ok(hermitian_eig(&k)?.apply(ScalarFn::ExpIScale(1.0)))
}

pub fn build_small_rotations(params: &PhysParams, dims: HilbertDims) -> Result<SmallRotations> {
    build_small_rotations_with(params, dims, RotationPairing::default())
}

pub fn build_small_rotations_with(params: &PhysParams, dims: HilbertDims, pairing: RotationPairing) -> Result<SmallRotations> {
    let (eps1, eps2) = small_parameters(params)?;
    if eps1.norm() >= EPS_BOUND || eps2.norm() >= EPS_BOUND {
        return Err(Error::EpsilonTooLarge {
            eps1: eps1.norm(),
            eps2: eps2.norm(),
            bound: EPS_BOUND,
        });
    }
    let (gen1, gen2) = match pairing {
        RotationPairing::Cancelling => (co_rotating_generator(dims), counter_rotating_generator(dims)),
        RotationPairing::Swapped => (counter_rotating_generator(dims), co_rotating_generator(dims)),
    };
    let u1 = exp_generator(eps1, &gen1)?;
    let u2 = exp_generator(eps2, &gen2)?;
    Ok(SmallRotations {
        eps1,
        eps2,
        pairing,
        gen1,
        gen2,
        u1,
        u2,
    })
}

/// `exp(−iπσ_y/4) = (√2/2)[1 − (σ₊ − σ₋)]` on the qubit alone.
pub fn ur_qubit() -> CMatrix {
    (qubit_identity() - (sigma_plus() - sigma_minus())) * real(FRAC_1_SQRT_2)
}

pub fn build_ur(dims: HilbertDims) -> CMatrix {
    qf(&ur_qubit(), &field_identity(dims))
}
