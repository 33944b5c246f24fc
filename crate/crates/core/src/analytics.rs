//! Closed-form evolution under `H_SS`, fidelities, and projective qubit
//! measurement.
//!
//! In the σ_x basis `H_SS` splits into field blocks
//! `ħωa†a ± E_J/2 ∓ ξ²(a² + a†²)`, so starting from `|γ⟩|g⟩` the state is a
//! superposition of two squeezed coherent states with opposite squeezing.

use crate::error::{Error, Result};
use crate::hamiltonians::squeeze_rate;
use crate::hilbert::{coherent_state, number, two_photon, FieldState, HilbertDims, JointState, Qubit, TruncatedState};
use crate::numerics::{hermitian_eig, inner, real, CMatrix, CVector, SpectralDecomposition, C64};
use crate::params::PhysParams;

/// Leakage allowed in each analytic component.
pub const COMPONENT_LEAKAGE_TOL: f64 = 1e-8;
/// Outcome probability below which collapse is undefined.
pub const MIN_COLLAPSE_PROBABILITY: f64 = 1e-14;

/// Sign label of `|γ, ±iξ²t⟩ = exp(−iωa†at ± iξ²(a² + a†²)t)|γ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SqueezeLabel {
    Minus,
    Plus,
}

impl SqueezeLabel {
    fn sign(self) -> f64 {
        match self {
            SqueezeLabel::Minus => -1.0,
            SqueezeLabel::Plus => 1.0,
        }
    }
}

/// Whether the free term `ωa†a` is kept in the component generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Frame {
    #[default]
    Lab,
    /// `ω = 0`: pure two-photon squeezing, used to check the squeezing law
    /// without a rotating quadrature frame.
    OmegaStripped,
}

/// Which squeezed component carries the phase `e^{−iE_J t/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ComponentPairing {
    /// `e^{−iE_J t/2}` with `|γ, +iξ²t⟩`, the σ_x = +1 block of `H_SS`.
    #[default]
    Consistent,
    /// `e^{−iE_J t/2}` with `|γ, −iξ²t⟩`, the sectors exchanged.
    Swapped,
}

/// `Φ±(t)`, unnormalized, together with the two squeezed states that build
/// them. `‖Φ₊‖² + ‖Φ₋‖² = 2`.
#[derive(Debug, Clone)]
pub struct SqueezeComponents {
    pub phi_plus: FieldState,
    pub phi_minus: FieldState,
    pub squeezed_plus: FieldState,
    pub squeezed_minus: FieldState,
    pub t: f64,
    pub params: PhysParams,
}

impl SqueezeComponents {
    /// `(‖Φ₊‖² + ‖Φ₋‖²)/2`.
    pub fn joint_norm_sqr(&self) -> f64 {
        (self.phi_plus.norm().powi(2) + self.phi_minus.norm().powi(2)) / 2.0
    }

    /// `(1/√2)[Φ₋|e⟩ + Φ₊|g⟩]`.
    pub fn joint_state(&self) -> Result<JointState> {
        let dims = self.phi_plus.dims();
        let n = dims.n_fock();
        let mut v = CVector::zeros(dims.joint_dim());
        let s = real(std::f64::consts::FRAC_1_SQRT_2);
        v.rows_mut(Qubit::Excited.index() * n, n)
            .copy_from(&(self.phi_minus.amplitudes() * s));
        v.rows_mut(Qubit::Ground.index() * n, n)
            .copy_from(&(self.phi_plus.amplitudes() * s));
        JointState::new(dims, v)
    }
}

/// Cached generators for repeated evaluation of the analytic state.
#[derive(Debug, Clone)]
pub struct ComponentOracle {
    params: PhysParams,
    dims: HilbertDims,
    frame: Frame,
    pairing: ComponentPairing,
    initial: FieldState,
    plus: SpectralDecomposition,
    minus: SpectralDecomposition,
}

/// `ωa†a − sign·ξ²(a² + a†²)`, so `exp(−iGt)` yields the labelled state.
fn component_generator(params: &PhysParams, dims: HilbertDims, frame: Frame, label: SqueezeLabel) -> Result<CMatrix> {
    let omega = match frame {
        Frame::Lab => params.hbar_omega,
        Frame::OmegaStripped => 0.0,
    };
    let rate = squeeze_rate(params)?;
    Ok(number(dims) * real(omega) - two_photon(dims) * real(label.sign() * rate))
}

impl ComponentOracle {
    pub fn new(gamma_amp: C64, params: &PhysParams, dims: HilbertDims) -> Result<Self> {
        Self::with_options(gamma_amp, params, dims, Frame::default(), ComponentPairing::default())
    }

    pub fn with_options(gamma_amp: C64, params: &PhysParams, dims: HilbertDims, frame: Frame, pairing: ComponentPairing) -> Result<Self> {
        dims.require_guard()?;
        let initial = coherent_state(gamma_amp, dims)?;
        let plus = hermitian_eig(&component_generator(params, dims, frame, SqueezeLabel::Plus)?)?;
        let minus = hermitian_eig(&component_generator(params, dims, frame, SqueezeLabel::Minus)?)?;
        Ok(Self {
            params: *params,
            dims,
            frame,
            pairing,
            initial,
            plus,
            minus,
        })
    }

    pub fn dims(&self) -> HilbertDims {
        self.dims
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// `|γ, ±iξ²t⟩`, normalized; fails on guard-band leakage.
    pub fn squeezed(&self, label: SqueezeLabel, t: f64) -> Result<FieldState> {
        let eig = match label {
            SqueezeLabel::Plus => &self.plus,
            SqueezeLabel::Minus => &self.minus,
        };
        let v = eig.apply_to_vector(|x| C64::from_polar(1.0, -x * t), self.initial.amplitudes());
        let state = FieldState::new(self.dims, v)?;
        let leak = state.leakage();
        if leak >= COMPONENT_LEAKAGE_TOL {
            return Err(Error::TruncationLeakage {
                leakage: leak,
                tolerance: COMPONENT_LEAKAGE_TOL,
            });
        }
        Ok(state)
    }

    pub fn components(&self, t: f64) -> Result<SqueezeComponents> {
        let squeezed_plus = self.squeezed(SqueezeLabel::Plus, t)?;
        let squeezed_minus = self.squeezed(SqueezeLabel::Minus, t)?;
        let (early, late) = match self.pairing {
            ComponentPairing::Consistent => (&squeezed_plus, &squeezed_minus),
            ComponentPairing::Swapped => (&squeezed_minus, &squeezed_plus),
        };
        let half = self.params.e_j * t / 2.0;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let a = early.amplitudes() * C64::from_polar(s, -half);
        let b = late.amplitudes() * C64::from_polar(s, half);
        Ok(SqueezeComponents {
            phi_plus: FieldState::unnormalized(self.dims, &a + &b)?,
            phi_minus: FieldState::unnormalized(self.dims, a - b)?,
            squeezed_plus,
            squeezed_minus,
            t,
            params: self.params,
        })
    }

    pub fn psi_tr(&self, t: f64) -> Result<JointState> {
        self.components(t)?.joint_state()
    }
}

pub fn analytic_components(gamma_amp: C64, t: f64, params: &PhysParams, dims: HilbertDims) -> Result<SqueezeComponents> {
    ComponentOracle::new(gamma_amp, params, dims)?.components(t)
}

/// `(1/√2)[Φ₋(t)|e⟩ + Φ₊(t)|g⟩]`.
pub fn analytic_psi_tr(gamma_amp: C64, t: f64, params: &PhysParams, dims: HilbertDims) -> Result<JointState> {
    ComponentOracle::new(gamma_amp, params, dims)?.psi_tr(t)
}

/// `|⟨a|b⟩|²`.
pub fn fidelity<S: TruncatedState>(a: &S, b: &S) -> Result<f64> {
    let (x, y) = (a.amplitudes(), b.amplitudes());
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(inner(x, y).norm_sqr())
}

/// Projects the qubit onto `outcome`. Returns the outcome probability and
/// the renormalized field state.
pub fn measure_qubit(psi: &JointState, outcome: Qubit) -> Result<(f64, FieldState)> {
    let component = psi.qubit_component(outcome);
    let p = component.norm_squared();
    if p < MIN_COLLAPSE_PROBABILITY {
        return Err(Error::ZeroProbabilityCollapse(p));
    }
    let collapsed = FieldState::new(psi.dims(), component / real(p.sqrt()))?;
    Ok((p, collapsed))
}
