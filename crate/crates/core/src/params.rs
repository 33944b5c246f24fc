//! Device parameters and the model parameters derived from them.
//!
//! Units: ħ = 1 and energies in units of E_J, so times are in ħ/E_J.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{real, C64};

/// Imaginary parts of β below this count as real.
pub const REAL_BETA_TOL: f64 = 1e-12;
/// Factor used to read the "≫" regime conditions at desk scale.
pub const REGIME_FACTOR: f64 = 4.0;
/// Minimum E_ch/E_J for the charge regime.
pub const CHARGE_REGIME_FACTOR: f64 = 5.0;

/// Aggregated SQUID/box parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceParams {
    /// Single-electron charging energy E_ch.
    pub e_ch: f64,
    pub e_j: f64,
    /// Dimensionless gate charge n_g.
    pub n_g: f64,
    /// Classical flux Φ_c/Φ₀.
    pub flux_ratio_classical: f64,
    /// Cavity-mode coupling πη/Φ₀, already scaled.
    pub mode_ratio: C64,
}

impl DeviceParams {
    pub fn in_charge_regime(&self) -> bool {
        self.e_ch >= CHARGE_REGIME_FACTOR * self.e_j
    }
}

/// ħω = 4E_ch, E_z = −2E_ch(1 − 2n_g), γ = πΦ_c/Φ₀, β = πη/Φ₀.
pub fn derive_params(dev: &DeviceParams) -> PhysParams {
    PhysParams {
        hbar_omega: 4.0 * dev.e_ch,
        e_j: dev.e_j,
        e_z: -2.0 * dev.e_ch * (1.0 - 2.0 * dev.n_g),
        beta: dev.mode_ratio,
        gamma_flux: PI * dev.flux_ratio_classical,
    }
}

/// Model parameters of the cavity/qubit Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    pub hbar_omega: f64,
    pub e_j: f64,
    pub e_z: f64,
    pub beta: C64,
    pub gamma_flux: f64,
}

impl Default for PhysParams {
    /// ħω = 10, E_J = 1, β = 0.25, E_z = 0, γ = 0.
    fn default() -> Self {
        Self {
            hbar_omega: 10.0,
            e_j: 1.0,
            e_z: 0.0,
            beta: real(0.25),
            gamma_flux: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegimeWarning {
    /// ħω|β| < 4E_J: the Jaynes-Cummings reduction is marginal.
    JaynesCummings { hbar_omega_beta: f64, e_j: f64 },
    /// ħω − E_J < 4E_J: the dispersive term is not negligible.
    Squeeze { detuning: f64, e_j: f64 },
}

impl fmt::Display for RegimeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RegimeWarning::JaynesCummings { hbar_omega_beta, e_j } => write!(
                f,
                "JC regime marginal: hbar_omega*|beta| = {hbar_omega_beta} < {REGIME_FACTOR}*E_J = {}",
                REGIME_FACTOR * e_j
            ),
            RegimeWarning::Squeeze { detuning, e_j } => write!(
                f,
                "squeeze regime marginal: hbar_omega - E_J = {detuning} < {REGIME_FACTOR}*E_J = {}",
                REGIME_FACTOR * e_j
            ),
        }
    }
}

impl PhysParams {
    /// ħω = 50 preset, deep in the squeeze regime.
    pub fn deep_squeeze() -> Self {
        Self {
            hbar_omega: 50.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.hbar_omega, self.e_j, self.e_z, self.beta.re, self.beta.im, self.gamma_flux]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        if self.hbar_omega <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "hbar_omega must be positive (got {})",
                self.hbar_omega
            )));
        }
        Ok(())
    }

    pub fn with_beta(self, beta: C64) -> Self {
        Self { beta, ..self }
    }

    /// β as a real number, for the steps that require it.
    pub fn real_beta(&self) -> Result<f64> {
        if self.beta.im.abs() > REAL_BETA_TOL {
            return Err(Error::ComplexBeta(self.beta.im));
        }
        Ok(self.beta.re)
    }

    pub fn jc_regime_warning(&self) -> Option<RegimeWarning> {
        let hbar_omega_beta = self.hbar_omega * self.beta.norm();
        (hbar_omega_beta < REGIME_FACTOR * self.e_j).then_some(RegimeWarning::JaynesCummings {
            hbar_omega_beta,
            e_j: self.e_j,
        })
    }

    pub fn squeeze_regime_warning(&self) -> Option<RegimeWarning> {
        let detuning = self.hbar_omega - self.e_j;
        (detuning < REGIME_FACTOR * self.e_j).then_some(RegimeWarning::Squeeze { detuning, e_j: self.e_j })
    }

    pub fn regime_warnings(&self) -> Vec<RegimeWarning> {
        self.jc_regime_warning().into_iter().chain(self.squeeze_regime_warning()).collect()
    }
}
