//! Every Hamiltonian along the chain
//! `H → H_T → H_JC → H_eff → H_squeeze → H_SS`, as explicit matrices on
//! `qubit ⊗ field`.

use crate::error::{Error, Result};
use crate::hilbert::{
    annihilation, creation, field_identity, field_quadrature, number, qf, qubit_identity, sigma_minus, sigma_plus, sigma_x, sigma_z,
    two_photon, HilbertDims,
};
use crate::numerics::{c, func_of_hermitian, real, CMatrix, ScalarFn};
use crate::params::PhysParams;

pub use crate::params::{derive_params, DeviceParams, RegimeWarning};

/// Relative distance to `E_J² = (ħω)²` below which the effective coupling
/// diverges.
pub const RESONANCE_RTOL: f64 = 1e-6;

fn free_terms(params: &PhysParams, dims: HilbertDims, qubit_term: &CMatrix) -> CMatrix {
    qf(&qubit_identity(), &(number(dims) * real(params.hbar_omega))) + qf(qubit_term, &field_identity(dims)) * real(params.e_j / 2.0)
}

/// `H = ħω a†a + E_z σ_z − E_J σ_x cos(γI + βa + β*a†)`.
pub fn build_h_full(params: &PhysParams, dims: HilbertDims) -> Result<CMatrix> {
    let phase = field_quadrature(params.beta, dims) + field_identity(dims) * real(params.gamma_flux);
    let cosine = func_of_hermitian(&phase, ScalarFn::Cos)?;
    Ok(
        qf(&qubit_identity(), &(number(dims) * real(params.hbar_omega))) + qf(&sigma_z(), &field_identity(dims)) * real(params.e_z)
            - qf(&sigma_x(), &cosine) * real(params.e_j),
    )
}

/// Scalar offset of `T H T†`, `ħω|β|²/4`.
pub fn h_t_constant(params: &PhysParams) -> f64 {
    params.hbar_omega * params.beta.norm_sqr() / 4.0
}

/// Offset `|β/2|²` without the factor ħω; misses the identity by
/// `(ħω − 1)|β|²/4`, kept as a diagnostic.
pub fn h_t_constant_unscaled(params: &PhysParams) -> f64 {
    params.beta.norm_sqr() / 4.0
}

/// `σ_x` drive `i(ħω/2)[(βa − β*a†) + 2iE_z/ħω]σ_x`, shared by `H_T` and
/// `H_JC`.
pub fn drive_term(params: &PhysParams, dims: HilbertDims) -> CMatrix {
    let field = (annihilation(dims) * params.beta - creation(dims) * params.beta.conj()) * c(0.0, params.hbar_omega / 2.0)
        - field_identity(dims) * real(params.e_z);
    qf(&sigma_x(), &field)
}

/// Transformed Hamiltonian `T H T†`:
/// `ħωa†a + (E_J/2)σ_z + drive + (E_J/2)cos(2X + 2γ)σ_z
///  − i(E_J/2)sin(2X + 2γ)(σ₊ − σ₋) + ħω|β|²/4`, `X = βa + β*a†`.
pub fn build_h_t(params: &PhysParams, dims: HilbertDims) -> Result<CMatrix> {
    let doubled = field_quadrature(params.beta, dims) * real(2.0) + field_identity(dims) * real(2.0 * params.gamma_flux);
    let cosine = func_of_hermitian(&doubled, ScalarFn::Cos)?;
    let sine = func_of_hermitian(&doubled, ScalarFn::Sin)?;
    let n2 = dims.joint_dim();
    Ok(
        free_terms(params, dims, &sigma_z()) + drive_term(params, dims) + qf(&sigma_z(), &cosine) * real(params.e_j / 2.0)
            - qf(&(sigma_plus() - sigma_minus()), &sine) * c(0.0, params.e_j / 2.0)
            + CMatrix::identity(n2, n2) * real(h_t_constant(params)),
    )
}

/// Jaynes-Cummings-type reduction
/// `ħωa†a + (E_J/2)σ_z + i(ħω/2)[(βa − β*a†) + 2iE_z/(ħω)]σ_x`.
pub fn build_h_jc(params: &PhysParams, dims: HilbertDims) -> CMatrix {
    free_terms(params, dims, &sigma_z()) + drive_term(params, dims)
}

fn check_effective_preconditions(params: &PhysParams) -> Result<f64> {
    let beta = params.real_beta()?;
    if params.e_z != 0.0 {
        return Err(Error::NonZeroEz(params.e_z));
    }
    let hw2 = params.hbar_omega * params.hbar_omega;
    if (params.e_j * params.e_j - hw2).abs() < RESONANCE_RTOL * hw2 {
        return Err(Error::ResonanceSingularity(format!(
            "E_J^2 = (hbar_omega)^2 at E_J = {}, hbar_omega = {}",
            params.e_j, params.hbar_omega
        )));
    }
    Ok(beta)
}

/// Coefficient of `(a² + a†²)σ_z` in `H_eff`,
/// `−(E_J − ħω)β²ħ²ω²/(4(E_J² − ħ²ω²))`, which simplifies to `−ξ²`.
pub fn squeeze_coefficient(params: &PhysParams) -> Result<f64> {
    let beta = check_effective_preconditions(params)?;
    let (ej, hw) = (params.e_j, params.hbar_omega);
    Ok(-(ej - hw) * beta * beta * hw * hw / (4.0 * (ej * ej - hw * hw)))
}

/// Coefficient of `(a†a + ½)σ_z` in `H_eff`, `E_Jβ²ħ²ω²/(E_J² − ħ²ω²)`.
pub fn dispersive_coefficient(params: &PhysParams) -> Result<f64> {
    let beta = check_effective_preconditions(params)?;
    let (ej, hw) = (params.e_j, params.hbar_omega);
    Ok(ej * beta * beta * hw * hw / (ej * ej - hw * hw))
}

/// `(a†a + ½)σ_z`.
pub fn dispersive_operator(dims: HilbertDims) -> CMatrix {
    qf(&sigma_z(), &(number(dims) + field_identity(dims) * real(0.5)))
}

/// Effective Hamiltonian after the small rotations (E_z = 0, real β):
/// squeeze term plus dispersive term.
pub fn build_h_eff(params: &PhysParams, dims: HilbertDims) -> Result<CMatrix> {
    let squeeze = squeeze_coefficient(params)?;
    let dispersive = dispersive_coefficient(params)?;
    Ok(free_terms(params, dims, &sigma_z())
        + qf(&sigma_z(), &two_photon(dims)) * real(squeeze)
        + dispersive_operator(dims) * real(dispersive))
}

/// `H_eff` without its dispersive term. The regime `ħω − E_J ≥ 4E_J` is
/// reported by [`PhysParams::squeeze_regime_warning`], not enforced.
pub fn build_h_squeeze(params: &PhysParams, dims: HilbertDims) -> Result<CMatrix> {
    let squeeze = squeeze_coefficient(params)?;
    Ok(free_terms(params, dims, &sigma_z()) + qf(&sigma_z(), &two_photon(dims)) * real(squeeze))
}

/// `H_SS = ħωa†a + (E_J/2)σ_x − ξ²(a² + a†²)σ_x`.
pub fn build_h_ss(params: &PhysParams, dims: HilbertDims) -> Result<CMatrix> {
    let squeeze = squeeze_coefficient(params)?;
    Ok(free_terms(params, dims, &sigma_x()) + qf(&sigma_x(), &two_photon(dims)) * real(squeeze))
}

/// `ξ² = β²ħ²ω²/(4(E_J + ħω))`.
pub fn xi_squared(params: &PhysParams) -> Result<f64> {
    let beta = params.real_beta()?;
    let hw = params.hbar_omega;
    Ok(beta * beta * hw * hw / (4.0 * (params.e_j + hw)))
}

/// `ξ²/ħ`, the rate multiplying `t` in the squeezed components.
pub fn squeeze_rate(params: &PhysParams) -> Result<f64> {
    xi_squared(params)
}

/// Squeeze magnitude `r(t) = 2ξ²t/ħ`.
pub fn squeeze_magnitude(params: &PhysParams, t: f64) -> Result<f64> {
    Ok(2.0 * squeeze_rate(params)? * t)
}

/// Time at which the squeeze magnitude reaches `r`.
pub fn time_to_squeeze(params: &PhysParams, r: f64) -> Result<f64> {
    let rate = squeeze_rate(params)?;
    if rate == 0.0 {
        return Err(Error::InvalidParameter("zero squeeze rate never reaches r > 0".into()));
    }
    Ok(r / (2.0 * rate))
}
