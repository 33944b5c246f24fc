//! Truncated Fock space, the charge-qubit space and their tensor product.
//!
//! Conventions used everywhere in the crate:
//! - Fock levels `0..n_fock`; the top `guard` levels are untrusted and only
//!   monitored through [`TruncatedState::leakage`].
//! - Qubit basis order is `(|e⟩, |g⟩)` so that `σ_z|e⟩ = +|e⟩` and
//!   `σ₊ = |e⟩⟨g|`.
//! - Joint vectors and operators are `qubit ⊗ field` with the qubit index
//!   running slowest: amplitude of `|q⟩|n⟩` sits at `q·n_fock + n`.

use crate::error::{Error, Result};
use crate::numerics::{c, hermitian_eig, kron, real, vector_norm, CMatrix, CVector, ScalarFn, SpectralDecomposition, C64};

pub const MIN_FOCK: usize = 8;
pub const MIN_GUARD_FOR_DISPLACEMENT: usize = 4;
pub const DEFAULT_DISPLACEMENT_BOUND: f64 = 3.0;
/// Tail population above which a truncated coherent state is rejected.
pub const COHERENT_TAIL_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HilbertDims {
    n_fock: usize,
    guard: usize,
}

impl HilbertDims {
    /// Dimensions used for time evolution.
    pub const DYNAMICS: HilbertDims = HilbertDims { n_fock: 80, guard: 12 };
    /// Dimensions used for operator identity checks.
    pub const IDENTITY: HilbertDims = HilbertDims { n_fock: 40, guard: 8 };

    pub fn new(n_fock: usize, guard: usize) -> Result<Self> {
        if n_fock < MIN_FOCK {
            return Err(Error::InvalidDims(format!("n_fock = {n_fock} is below the minimum {MIN_FOCK}")));
        }
        if guard >= n_fock {
            return Err(Error::InvalidDims(format!(
                "guard = {guard} must be smaller than n_fock = {n_fock}"
            )));
        }
        Ok(Self { n_fock, guard })
    }

    pub fn n_fock(&self) -> usize {
        self.n_fock
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    /// Number of trusted Fock levels, `n_fock − guard`.
    pub fn interior(&self) -> usize {
        self.n_fock - self.guard
    }

    pub fn joint_dim(&self) -> usize {
        2 * self.n_fock
    }

    pub(crate) fn require_guard(&self) -> Result<()> {
        if self.guard < MIN_GUARD_FOR_DISPLACEMENT {
            return Err(Error::InvalidDims(format!(
                "guard = {} but displacement/squeezing needs at least {MIN_GUARD_FOR_DISPLACEMENT}",
                self.guard
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Qubit {
    Excited,
    Ground,
}

impl Qubit {
    pub fn index(self) -> usize {
        match self {
            Qubit::Excited => 0,
            Qubit::Ground => 1,
        }
    }

    pub fn ket(self) -> CVector {
        let mut v = CVector::zeros(2);
        v[self.index()] = real(1.0);
        v
    }

    pub fn label(self) -> &'static str {
        match self {
            Qubit::Excited => "e",
            Qubit::Ground => "g",
        }
    }
}

// ---------------------------------------------------------------------------
// field operators

pub fn annihilation(dims: HilbertDims) -> CMatrix {
    let n = dims.n_fock;
    CMatrix::from_fn(n, n, |i, j| if j == i + 1 { real((j as f64).sqrt()) } else { real(0.0) })
}

pub fn creation(dims: HilbertDims) -> CMatrix {
    annihilation(dims).transpose()
}

pub fn number(dims: HilbertDims) -> CMatrix {
    let n = dims.n_fock;
    CMatrix::from_fn(n, n, |i, j| if i == j { real(i as f64) } else { real(0.0) })
}

pub fn field_identity(dims: HilbertDims) -> CMatrix {
    CMatrix::identity(dims.n_fock, dims.n_fock)
}

/// `a² + a†²`.
pub fn two_photon(dims: HilbertDims) -> CMatrix {
    let a = annihilation(dims);
    let a2 = &a * &a;
    &a2 + a2.transpose()
}

/// `β a + β* a†`.
pub fn field_quadrature(beta: C64, dims: HilbertDims) -> CMatrix {
    annihilation(dims) * beta + creation(dims) * beta.conj()
}

pub fn parity(dims: HilbertDims) -> CMatrix {
    let n = dims.n_fock;
    CMatrix::from_fn(n, n, |i, j| {
        if i != j {
            real(0.0)
        } else if i % 2 == 0 {
            real(1.0)
        } else {
            real(-1.0)
        }
    })
}

/// `e^{iφ a†a}`.
pub fn phase_rotation(phi: f64, dims: HilbertDims) -> CMatrix {
    let n = dims.n_fock;
    CMatrix::from_fn(n, n, |i, j| if i == j { C64::from_polar(1.0, phi * i as f64) } else { real(0.0) })
}

/// Hermitian `K = i(α a† − α* a)`, so that `D(α) = exp(−iK)`.
fn displacement_generator(alpha: C64, dims: HilbertDims) -> CMatrix {
    (creation(dims) * alpha - annihilation(dims) * alpha.conj()) * c(0.0, 1.0)
}

/// Glauber displacement `D(α) = exp(α a† − α* a)` with the default bound
/// `|α| ≤ 3`.
pub fn displacement(alpha: C64, dims: HilbertDims) -> Result<CMatrix> {
    displacement_bounded(alpha, dims, DEFAULT_DISPLACEMENT_BOUND)
}

pub fn displacement_bounded(alpha: C64, dims: HilbertDims, bound: f64) -> Result<CMatrix> {
    dims.require_guard()?;
    if alpha.norm() > bound {
        return Err(Error::DisplacementTooLarge {
            magnitude: alpha.norm(),
            bound,
        });
    }
    let k = displacement_generator(alpha, dims);
    Ok(hermitian_eig(&k)?.apply(ScalarFn::ExpIScale(-1.0)))
}

/// Applies `D(α)` for many `α` from one eigendecomposition.
///
/// Uses `D(r e^{iφ}) = e^{iφ a†a} exp(r(a† − a)) e^{−iφ a†a}`, which holds
/// exactly in the truncated space as well.
#[derive(Debug, Clone)]
pub struct Displacer {
    dims: HilbertDims,
    real_axis: SpectralDecomposition,
}

impl Displacer {
    pub fn new(dims: HilbertDims) -> Result<Self> {
        dims.require_guard()?;
        // Q = i(a† − a), exp(r(a† − a)) = exp(−i r Q)
        let q = (creation(dims) - annihilation(dims)) * c(0.0, 1.0);
        Ok(Self {
            dims,
            real_axis: hermitian_eig(&q)?,
        })
    }

    pub fn dims(&self) -> HilbertDims {
        self.dims
    }

    pub fn apply(&self, alpha: C64, psi: &CVector) -> CVector {
        let (r, phi) = alpha.to_polar();
        let mut v = psi.clone();
        rotate_in_place(&mut v, -phi);
        let mut out = self.real_axis.apply_to_vector(|x| C64::from_polar(1.0, -r * x), &v);
        rotate_in_place(&mut out, phi);
        out
    }

    pub fn matrix(&self, alpha: C64) -> CMatrix {
        let (r, phi) = alpha.to_polar();
        let base = self.real_axis.apply(ScalarFn::ExpIScale(-r));
        let n = self.dims.n_fock;
        CMatrix::from_fn(n, n, |i, j| base[(i, j)] * C64::from_polar(1.0, phi * (i as f64 - j as f64)))
    }
}

fn rotate_in_place(v: &mut CVector, phi: f64) {
    for (n, z) in v.iter_mut().enumerate() {
        *z *= C64::from_polar(1.0, phi * n as f64);
    }
}

// ---------------------------------------------------------------------------
// qubit operators, basis (|e⟩, |g⟩)

pub fn qubit_identity() -> CMatrix {
    CMatrix::identity(2, 2)
}

pub fn sigma_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[real(0.0), real(1.0), real(1.0), real(0.0)])
}

pub fn sigma_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[real(0.0), c(0.0, -1.0), c(0.0, 1.0), real(0.0)])
}

pub fn sigma_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[real(1.0), real(0.0), real(0.0), real(-1.0)])
}

/// `σ₊ = |e⟩⟨g|`.
pub fn sigma_plus() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[real(0.0), real(1.0), real(0.0), real(0.0)])
}

pub fn sigma_minus() -> CMatrix {
    sigma_plus().transpose()
}

/// `qubit_op ⊗ field_op`, qubit index slowest.
pub fn compose(qubit_op: &CMatrix, field_op: &CMatrix) -> Result<CMatrix> {
    if qubit_op.shape() != (2, 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: qubit_op.nrows().max(qubit_op.ncols()),
        });
    }
    if field_op.nrows() != field_op.ncols() {
        return Err(Error::NotSquare {
            rows: field_op.nrows(),
            cols: field_op.ncols(),
        });
    }
    Ok(kron(qubit_op, field_op))
}

/// [`compose`] for callers that already built both factors with matching
/// shapes.
pub(crate) fn qf(qubit_op: &CMatrix, field_op: &CMatrix) -> CMatrix {
    kron(qubit_op, field_op)
}

// ---------------------------------------------------------------------------
// interior-block projections

/// Indices of the joint basis vectors with Fock level `< levels`.
pub fn joint_indices(dims: HilbertDims, levels: usize) -> Vec<usize> {
    let levels = levels.min(dims.n_fock);
    (0..2).flat_map(|q| (0..levels).map(move |n| q * dims.n_fock + n)).collect()
}

fn submatrix(op: &CMatrix, idx: &[usize]) -> CMatrix {
    CMatrix::from_fn(idx.len(), idx.len(), |i, j| op[(idx[i], idx[j])])
}

/// Restriction of a joint operator to Fock levels below `levels`.
pub fn joint_restrict(op: &CMatrix, dims: HilbertDims, levels: usize) -> CMatrix {
    submatrix(op, &joint_indices(dims, levels))
}

pub fn joint_interior(op: &CMatrix, dims: HilbertDims) -> CMatrix {
    joint_restrict(op, dims, dims.interior())
}

pub fn field_interior(op: &CMatrix, dims: HilbertDims) -> CMatrix {
    let idx: Vec<usize> = (0..dims.interior()).collect();
    submatrix(op, &idx)
}

/// Interior-block unitarity defect `‖P(UU† − I)P‖_F` of a joint operator.
pub fn joint_interior_unitarity_defect(u: &CMatrix, dims: HilbertDims) -> f64 {
    let prod = u * u.adjoint();
    let idx = joint_indices(dims, dims.interior());
    let mut sum = 0.0;
    for (i, &r) in idx.iter().enumerate() {
        for (j, &s) in idx.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            sum += (prod[(r, s)] - real(target)).norm_sqr();
        }
    }
    sum.sqrt()
}

pub fn field_interior_unitarity_defect(u: &CMatrix, dims: HilbertDims) -> f64 {
    let prod = u * u.adjoint();
    let n = dims.interior();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            sum += (prod[(i, j)] - real(target)).norm_sqr();
        }
    }
    sum.sqrt()
}

// ---------------------------------------------------------------------------
// states

/// A state vector on a truncated space.
pub trait TruncatedState {
    fn dims(&self) -> HilbertDims;
    fn amplitudes(&self) -> &CVector;

    fn norm(&self) -> f64 {
        vector_norm(self.amplitudes())
    }

    /// Population in the top `guard` Fock levels, summed over the qubit
    /// index for joint states.
    fn leakage(&self) -> f64 {
        let dims = self.dims();
        let n = dims.n_fock;
        self.amplitudes()
            .iter()
            .enumerate()
            .filter(|(i, _)| i % n >= dims.interior())
            .map(|(_, z)| z.norm_sqr())
            .sum()
    }
}

pub fn leakage<S: TruncatedState>(state: &S) -> f64 {
    state.leakage()
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Cavity-field state. `normalized` is false for intermediate vectors that
/// carry meaningful norm (the Φ± components).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    dims: HilbertDims,
    amplitudes: CVector,
    normalized: bool,
}

impl FieldState {
    /// Normalized state; fails if the norm is off by more than `1e−10`.
    pub fn new(dims: HilbertDims, amplitudes: CVector) -> Result<Self> {
        check_len(dims.n_fock, amplitudes.len())?;
        let norm = vector_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!("field state norm {norm} is not 1")));
        }
        Ok(Self {
            dims,
            amplitudes,
            normalized: true,
        })
    }

    pub fn unnormalized(dims: HilbertDims, amplitudes: CVector) -> Result<Self> {
        check_len(dims.n_fock, amplitudes.len())?;
        Ok(Self {
            dims,
            amplitudes,
            normalized: false,
        })
    }

    pub fn fock(level: usize, dims: HilbertDims) -> Result<Self> {
        if level >= dims.n_fock {
            return Err(Error::InvalidParameter(format!("Fock level {level} outside 0..{}", dims.n_fock)));
        }
        let mut v = CVector::zeros(dims.n_fock);
        v[level] = real(1.0);
        Self::new(dims, v)
    }

    pub fn vacuum(dims: HilbertDims) -> Self {
        Self::fock(0, dims).expect("level 0 always exists")
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Rescaled copy with unit norm.
    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm <= f64::MIN_POSITIVE {
            return Err(Error::ZeroProbabilityCollapse(norm * norm));
        }
        Ok(Self {
            dims: self.dims,
            amplitudes: &self.amplitudes / real(norm),
            normalized: true,
        })
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }

    pub fn apply(&self, op: &CMatrix) -> Result<Self> {
        check_len(self.dims.n_fock, op.ncols())?;
        Ok(Self {
            dims: self.dims,
            amplitudes: op * &self.amplitudes,
            normalized: false,
        })
    }
}

impl TruncatedState for FieldState {
    fn dims(&self) -> HilbertDims {
        self.dims
    }

    fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    dims: HilbertDims,
    amplitudes: CVector,
}

impl JointState {
    pub fn new(dims: HilbertDims, amplitudes: CVector) -> Result<Self> {
        check_len(dims.joint_dim(), amplitudes.len())?;
        let norm = vector_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!("joint state norm {norm} is not 1")));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Wraps an evolved vector; norm is monitored by the caller.
    pub(crate) fn from_raw(dims: HilbertDims, amplitudes: CVector) -> Self {
        Self { dims, amplitudes }
    }

    pub fn product(qubit: Qubit, field: &FieldState) -> Self {
        let n = field.dims.n_fock;
        let mut v = CVector::zeros(2 * n);
        v.rows_mut(qubit.index() * n, n).copy_from(&field.amplitudes);
        Self {
            dims: field.dims,
            amplitudes: v,
        }
    }

    /// Unnormalized `⟨q|ψ⟩` as a field vector.
    pub fn qubit_component(&self, qubit: Qubit) -> CVector {
        let n = self.dims.n_fock;
        self.amplitudes.rows(qubit.index() * n, n).into_owned()
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }
}

impl TruncatedState for JointState {
    fn dims(&self) -> HilbertDims {
        self.dims
    }

    fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }
}

/// Poisson tail `Σ_{n ≥ from} e^{−x} xⁿ/n!`, summed in log space.
fn poisson_tail(x: f64, from: usize) -> f64 {
    if x == 0.0 {
        return if from == 0 { 1.0 } else { 0.0 };
    }
    let ln_x = x.ln();
    let mut ln_fact = 0.0;
    for k in 1..=from {
        ln_fact += (k as f64).ln();
    }
    let mut total = 0.0;
    let mut n = from;
    loop {
        let term = (-x + n as f64 * ln_x - ln_fact).exp();
        total += term;
        if n as f64 > x && term < 1e-30 * total.max(1e-300) {
            break;
        }
        n += 1;
        ln_fact += (n as f64).ln();
        if n > from + 100_000 {
            break;
        }
    }
    total
}

/// Coherent state `|amp⟩`, renormalized after truncation.
///
/// Rejected when the population that would sit in the guard band or beyond
/// the truncation exceeds [`COHERENT_TAIL_TOL`].
pub fn coherent_state(amp: C64, dims: HilbertDims) -> Result<FieldState> {
    let tail = poisson_tail(amp.norm_sqr(), dims.interior());
    if tail > COHERENT_TAIL_TOL {
        return Err(Error::TruncationLeakage {
            leakage: tail,
            tolerance: COHERENT_TAIL_TOL,
        });
    }
    let mut v = CVector::zeros(dims.n_fock);
    v[0] = real((-amp.norm_sqr() / 2.0).exp());
    for n in 1..dims.n_fock {
        v[n] = v[n - 1] * amp / (n as f64).sqrt();
    }
    let norm = vector_norm(&v);
    v /= real(norm);
    FieldState::new(dims, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{commutator, frobenius, identity, inner, unitarity_defect};
    use approx::assert_abs_diff_eq;

    fn dims(n: usize, g: usize) -> HilbertDims {
        HilbertDims::new(n, g).unwrap()
    }

    #[test]
    fn dims_validation() {
        assert!(HilbertDims::new(4, 1).is_err());
        assert!(HilbertDims::new(10, 10).is_err());
        let d = dims(10, 3);
        assert_eq!((d.interior(), d.joint_dim()), (7, 20));
        assert!(displacement(c(0.1, 0.0), dims(10, 2)).is_err());
    }

    #[test]
    fn annihilation_on_fock_levels() {
        let d = dims(10, 4);
        let a = annihilation(d);
        let one = FieldState::fock(1, d).unwrap();
        let out = &a * one.amplitudes();
        assert_eq!(out[0], real(1.0));
        assert_abs_diff_eq!(vector_norm(&out), 1.0, epsilon = 0.0);
        let vac = FieldState::vacuum(d);
        assert_eq!(vector_norm(&(&a * vac.amplitudes())), 0.0);
    }

    #[test]
    fn commutator_truncation_artifact() {
        let d = dims(12, 4);
        let a = annihilation(d);
        let comm = commutator(&a, &creation(d));
        // exact up to sqrt(n)^2 rounding
        assert!(frobenius(&(field_interior(&comm, d) - identity(d.interior()))) < 1e-14);
        let mut expected = identity(12);
        expected[(11, 11)] = real(1.0 - 12.0);
        assert!(frobenius(&(comm - expected)) < 1e-13);
    }

    #[test]
    fn number_operator_is_exact_diagonal() {
        let d = dims(9, 4);
        let n = &creation(d) * &annihilation(d);
        for i in 0..9 {
            for j in 0..9 {
                let target = if i == j { i as f64 } else { 0.0 };
                assert_abs_diff_eq!(n[(i, j)].re, target, epsilon = 1e-14);
                assert_eq!(n[(i, j)].im, 0.0);
            }
        }
    }

    #[test]
    fn coherent_states() {
        let d = dims(30, 5);
        let vac = coherent_state(real(0.0), d).unwrap();
        assert_eq!(vac, FieldState::vacuum(d));
        let coh = coherent_state(real(1.0), d).unwrap();
        assert_abs_diff_eq!(coh.amplitudes()[0].norm_sqr(), (-1f64).exp(), epsilon = 1e-12);
        assert!(coh.leakage() < 1e-10);
        // independent tail: 1 − Σ_{n<25} e^{-1}/n!
        let mut head = 0.0;
        let mut term = (-1f64).exp();
        for n in 0..25 {
            if n > 0 {
                term /= n as f64;
            }
            head += term;
        }
        assert!(1.0 - head < 1e-10);
        assert!(matches!(
            coherent_state(real(4.0), dims(20, 4)),
            Err(Error::TruncationLeakage { .. })
        ));
    }

    #[test]
    fn poisson_tail_matches_direct_sum() {
        let x: f64 = 2.3;
        let mut direct = 0.0;
        let mut term = (-x).exp();
        for n in 0..200 {
            if n > 0 {
                term *= x / n as f64;
            }
            if n >= 6 {
                direct += term;
            }
        }
        assert_abs_diff_eq!(poisson_tail(x, 6), direct, epsilon = 1e-15);
    }

    #[test]
    fn displacement_properties() {
        let d = dims(40, 8);
        assert!(frobenius(&(displacement(real(0.0), d).unwrap() - identity(40))) < 1e-14);

        let alpha = c(0.5, 0.2);
        let prod = displacement(alpha, d).unwrap() * displacement(-alpha, d).unwrap();
        assert!(frobenius(&field_interior(&(prod - identity(40)), d)) < 1e-8);
        assert!(field_interior_unitarity_defect(&displacement(alpha, d).unwrap(), d) < 1e-8);

        let d1 = displacement(real(1.0), d).unwrap();
        assert_abs_diff_eq!(d1[(0, 0)].re, (-0.5f64).exp(), epsilon = 1e-8);
        assert_abs_diff_eq!((-0.5f64).exp(), 0.606531, epsilon = 1e-6);

        let shifted = &d1 * FieldState::vacuum(d).amplitudes();
        let coh = coherent_state(real(1.0), d).unwrap();
        assert!(inner(&shifted, coh.amplitudes()).norm_sqr() >= 1.0 - 1e-8);

        assert!(matches!(displacement(real(3.5), d), Err(Error::DisplacementTooLarge { .. })));
    }

    #[test]
    fn displacer_matches_direct_exponential() {
        let d = dims(30, 8);
        let disp = Displacer::new(d).unwrap();
        for alpha in [c(0.7, -0.3), c(-1.1, 0.4), real(0.0), c(0.0, 1.5)] {
            let direct = displacement(alpha, d).unwrap();
            assert!(frobenius(&(disp.matrix(alpha) - &direct)) < 1e-11, "{alpha}");
            let psi = coherent_state(c(0.3, 0.2), d).unwrap();
            let v = disp.apply(alpha, psi.amplitudes());
            assert!(vector_norm(&(v - &direct * psi.amplitudes())) < 1e-11);
        }
    }

    #[test]
    fn parity_eigenvalues() {
        let d = dims(10, 4);
        let p = parity(d);
        assert_eq!(&p * FieldState::vacuum(d).amplitudes(), FieldState::vacuum(d).into_amplitudes());
        let three = FieldState::fock(3, d).unwrap();
        assert_eq!(&p * three.amplitudes(), -three.amplitudes());
        assert_eq!(&p * &p, identity(10));
    }

    #[test]
    fn compose_bookkeeping() {
        let d = dims(8, 4);
        assert_eq!(compose(&qubit_identity(), &field_identity(d)).unwrap(), identity(16));

        let e0 = JointState::product(Qubit::Excited, &FieldState::vacuum(d));
        let sz = compose(&sigma_z(), &field_identity(d)).unwrap();
        assert_eq!(&sz * e0.amplitudes(), e0.amplitudes().clone());

        let e1 = JointState::product(Qubit::Excited, &FieldState::fock(1, d).unwrap());
        let g0 = JointState::product(Qubit::Ground, &FieldState::vacuum(d));
        let op = compose(&sigma_x(), &annihilation(d)).unwrap();
        assert_eq!(&op * e1.amplitudes(), g0.amplitudes().clone());

        assert!(compose(&identity(3), &field_identity(d)).is_err());
        assert!(compose(&sigma_x(), &CMatrix::zeros(3, 4)).is_err());
    }

    #[test]
    fn leakage_monitor() {
        let d = dims(10, 3);
        assert_eq!(FieldState::vacuum(d).leakage(), 0.0);
        assert_eq!(FieldState::fock(9, d).unwrap().leakage(), 1.0);
        let top = JointState::product(Qubit::Ground, &FieldState::fock(8, d).unwrap());
        assert_eq!(leakage(&top), 1.0);
        let coh = coherent_state(real(1.0), dims(30, 5)).unwrap();
        assert!(leakage(&coh) < 1e-10);
    }

    #[test]
    fn pauli_algebra() {
        let sp = sigma_plus();
        let sm = sigma_minus();
        assert_eq!(&sp + &sm, sigma_x());
        assert_eq!((&sp - &sm) * c(0.0, -1.0), sigma_y());
        assert_eq!(&sp * Qubit::Ground.ket(), Qubit::Excited.ket());
        assert!(unitarity_defect(&sigma_y()) < 1e-15);
    }
}
