use thiserror::Error;

/// Errors raised by operator construction, propagation and state analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: ||M - M^dag||_F = {defect:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { defect: f64, tolerance: f64 },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("Hermitian eigensolver did not converge")]
    EigenFailed,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid Hilbert dimensions: {0}")]
    InvalidDims(String),

    #[error("truncation leakage {leakage:.3e} exceeds {tolerance:.3e}")]
    TruncationLeakage { leakage: f64, tolerance: f64 },

    #[error("displacement amplitude |alpha| = {magnitude:.3} exceeds bound {bound:.3}")]
    DisplacementTooLarge { magnitude: f64, bound: f64 },

    #[error("resonance singularity: {0}")]
    ResonanceSingularity(String),

    #[error("small-rotation premise violated: |eps1| = {eps1:.4}, |eps2| = {eps2:.4} (bound {bound})")]
    EpsilonTooLarge { eps1: f64, eps2: f64, bound: f64 },

    #[error("beta must be real here (imaginary part {0:.3e})")]
    ComplexBeta(f64),

    #[error("E_z must vanish here (got {0})")]
    NonZeroEz(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("leakage {leakage:.3e} exceeded {tolerance:.1e} at t = {t}")]
    LeakageAbort { t: f64, leakage: f64, tolerance: f64 },

    #[error("collapse onto a zero-probability outcome (p = {0:.3e})")]
    ZeroProbabilityCollapse(f64),

    #[error("Wigner grid leaves the truncation trust region: |alpha|^2 + 3|alpha| = {reach:.3} >= {limit}")]
    TrustRegionViolation { reach: f64, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
