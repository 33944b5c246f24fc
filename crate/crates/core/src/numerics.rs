//! Dense complex matrices, Hermitian spectral decomposition and matrix
//! functions.
//!
//! Every operator function in the crate (exponentials, cosines, propagators)
//! goes through [`hermitian_eig`]: the generators that appear in the model are
//! Hermitian or `i` times Hermitian, so `V f(λ) V†` is exact to rounding and
//! unitary results stay unitary.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Relative Hermiticity tolerance accepted by the spectral routines.
pub const HERMITIAN_RTOL: f64 = 1e-10;

/// Components smaller than this are skipped when fixing eigenvector phases.
const PHASE_PIVOT_MIN: f64 = 1e-12;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

/// Tensor product `a ⊗ b` with the index of `a` running slowest.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    frobenius(&(m - m.adjoint()))
}

/// `‖U U† − I‖_F`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    frobenius(&(u * u.adjoint() - identity(u.nrows())))
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Scalar function applied to the spectrum of a Hermitian operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarFn {
    /// `λ ↦ exp(i·s·λ)`; `s = −t` gives the propagator `exp(−iHt)`.
    ExpIScale(f64),
    Cos,
    Sin,
    /// `λ ↦ exp(s·λ)`.
    ExpRealScale(f64),
}

impl ScalarFn {
    pub fn eval(self, x: f64) -> C64 {
        match self {
            ScalarFn::ExpIScale(s) => C64::from_polar(1.0, s * x),
            ScalarFn::Cos => real(x.cos()),
            ScalarFn::Sin => real(x.sin()),
            ScalarFn::ExpRealScale(s) => real((s * x).exp()),
        }
    }
}

/// Eigen-decomposition `M = V diag(λ) V†` of a Hermitian matrix.
///
/// Eigenvalues are ascending. Each eigenvector has its first significant
/// component made real and positive, and exactly degenerate eigenvalues are
/// ordered by comparing eigenvector moduli lexicographically, so identical
/// inputs always produce identical output.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V diag(f(λ)) V†`.
    pub fn map<F>(&self, f: F) -> CMatrix
    where
        F: Fn(f64) -> C64,
    {
        let mut scaled = self.eigenvectors.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= w);
        }
        scaled * self.eigenvectors.adjoint()
    }

    pub fn apply(&self, f: ScalarFn) -> CMatrix {
        self.map(|x| f.eval(x))
    }

    /// `V diag(f(λ)) V† ψ` without forming the matrix.
    pub fn apply_to_vector<F>(&self, f: F, psi: &CVector) -> CVector
    where
        F: Fn(f64) -> C64,
    {
        let mut coeffs = self.eigenvectors.ad_mul(psi);
        for (z, &lambda) in coeffs.iter_mut().zip(&self.eigenvalues) {
            *z *= f(lambda);
        }
        &self.eigenvectors * coeffs
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map(real)
    }
}

fn check_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

fn check_hermitian(m: &CMatrix) -> Result<()> {
    check_square(m)?;
    if !is_finite(m) {
        return Err(Error::NonFinite);
    }
    let defect = hermiticity_defect(m);
    let tolerance = HERMITIAN_RTOL * frobenius(m);
    if defect > tolerance {
        return Err(Error::NotHermitian { defect, tolerance });
    }
    Ok(())
}

fn cmp_columns_by_modulus(v: &CMatrix, a: usize, b: usize) -> Ordering {
    for (x, y) in v.column(a).iter().zip(v.column(b).iter()) {
        match y.norm().total_cmp(&x.norm()) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

pub fn hermitian_eig(m: &CMatrix) -> Result<SpectralDecomposition> {
    check_hermitian(m)?;
    let n = m.nrows();
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: Vec::new(),
            eigenvectors: CMatrix::zeros(0, 0),
        });
    }
    let sym = (m + m.adjoint()) * real(0.5);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0).ok_or(Error::EigenFailed)?;

    let mut vectors = eig.eigenvectors;
    for j in 0..n {
        let pivot = vectors.column(j).iter().position(|z| z.norm() > PHASE_PIVOT_MIN);
        if let Some(i) = pivot {
            let p = vectors[(i, j)];
            let phase = p.conj() / p.norm();
            vectors.column_mut(j).iter_mut().for_each(|z| *z *= phase);
            vectors[(i, j)] = real(p.norm());
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .total_cmp(&eig.eigenvalues[b])
            .then_with(|| cmp_columns_by_modulus(&vectors, a, b))
    });

    let eigenvalues = order.iter().map(|&j| eig.eigenvalues[j]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

pub fn func_of_hermitian(m: &CMatrix, f: ScalarFn) -> Result<CMatrix> {
    Ok(hermitian_eig(m)?.apply(f))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    pub frobenius: f64,
    pub spectral: f64,
}

/// Frobenius norm and largest singular value (from the spectrum of `M†M`).
pub fn matrix_norms(m: &CMatrix) -> Norms {
    Norms {
        frobenius: frobenius(m),
        spectral: spectral_norm(m),
    }
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let gram = m.ad_mul(m);
    match hermitian_eig(&gram) {
        Ok(d) => d.eigenvalues.last().copied().unwrap_or(0.0).max(0.0).sqrt(),
        Err(_) => f64::NAN,
    }
}

/// `⟨a|b⟩`, antilinear in the first argument.
pub fn inner(a: &CVector, b: &CVector) -> C64 {
    a.dotc(b)
}

pub fn vector_norm(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨ψ|O|ψ⟩`.
pub fn expectation(op: &CMatrix, psi: &CVector) -> C64 {
    psi.dotc(&(op * psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn number_op(n: usize) -> CMatrix {
        CMatrix::from_fn(n, n, |i, j| if i == j { real(i as f64) } else { real(0.0) })
    }

    fn lower_shift(n: usize, beta: C64, gamma: f64) -> CMatrix {
        // gamma I + beta a + beta* a†
        CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                real(gamma)
            } else if j == i + 1 {
                beta * (j as f64).sqrt()
            } else if i == j + 1 {
                beta.conj() * (i as f64).sqrt()
            } else {
                real(0.0)
            }
        })
    }

    /// Taylor series of cos summed until the terms stop contributing.
    fn cos_taylor(m: &CMatrix) -> CMatrix {
        let n = m.nrows();
        let m2 = m * m;
        let mut term = identity(n);
        let mut sum = identity(n);
        for k in 1..400 {
            term = &term * &m2 * real(-1.0 / ((2 * k - 1) as f64 * (2 * k) as f64));
            sum += &term;
            if frobenius(&term) < 1e-18 * frobenius(&sum) {
                break;
            }
        }
        sum
    }

    #[test]
    fn diagonal_input() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![real(3.0), real(1.0)]));
        let d = hermitian_eig(&m).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 3.0]);
        assert_abs_diff_eq!(d.eigenvectors[(1, 0)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.eigenvectors[(0, 1)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.eigenvectors[(0, 0)].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn pauli_x_spectrum() {
        let sx = CMatrix::from_row_slice(2, 2, &[real(0.0), real(1.0), real(1.0), real(0.0)]);
        let d = hermitian_eig(&sx).unwrap();
        assert_abs_diff_eq!(d.eigenvalues[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.eigenvalues[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn number_operator_spectrum() {
        let d = hermitian_eig(&number_op(8)).unwrap();
        for (k, lambda) in d.eigenvalues.iter().enumerate() {
            assert_abs_diff_eq!(*lambda, k as f64, epsilon = 1e-14);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eig(&rect), Err(Error::NotSquare { rows: 2, cols: 3 })));
        let m = CMatrix::from_row_slice(2, 2, &[real(1.0), real(2.0), real(0.0), real(1.0)]);
        match hermitian_eig(&m) {
            Err(Error::NotHermitian { defect, .. }) => assert_abs_diff_eq!(defect, 8f64.sqrt(), epsilon = 1e-14),
            other => panic!("unexpected {other:?}"),
        }
        let mut nan = identity(2);
        nan[(0, 0)] = real(f64::NAN);
        assert_eq!(hermitian_eig(&nan).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn decomposition_invariants() {
        let m = lower_shift(30, c(0.3, -0.2), 0.1) + number_op(30);
        let d = hermitian_eig(&m).unwrap();
        let v = &d.eigenvectors;
        assert!(unitarity_defect(v) <= 1e-10 * 30.0);
        assert!(frobenius(&(d.reconstruct() - &m)) <= 1e-9 * frobenius(&m));
        assert!(d.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        for j in 0..30 {
            let pivot = *v.column(j).iter().find(|z| z.norm() > 1e-12).unwrap();
            assert_eq!(pivot.im, 0.0);
            assert!(pivot.re > 0.0);
        }
    }

    #[test]
    fn deterministic() {
        let m = lower_shift(25, c(0.4, 0.1), 0.3);
        let a = hermitian_eig(&m).unwrap();
        let b = hermitian_eig(&m).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(a.eigenvectors, b.eigenvectors);
    }

    #[test]
    fn cos_of_zero_is_identity() {
        let z = CMatrix::zeros(6, 6);
        let cz = func_of_hermitian(&z, ScalarFn::Cos).unwrap();
        assert_eq!(cz, identity(6));
    }

    #[test]
    fn diagonal_exponential_gives_level_phases() {
        let (omega, t) = (1.7, 0.9);
        let h = number_op(8) * real(omega);
        let u = func_of_hermitian(&h, ScalarFn::ExpIScale(-t)).unwrap();
        for n in 0..8 {
            let mut fock = CVector::zeros(8);
            fock[n] = real(1.0);
            let out = &u * fock;
            let expected = C64::from_polar(1.0, -omega * n as f64 * t);
            assert_abs_diff_eq!((out[n] - expected).norm(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn cos_matches_taylor_series_on_interior() {
        let n = 40;
        let m = lower_shift(n, real(0.3), 0.2);
        let spectral = func_of_hermitian(&m, ScalarFn::Cos).unwrap();
        let taylor = cos_taylor(&m);
        for i in 0..n - 10 {
            for j in 0..n - 10 {
                assert!((spectral[(i, j)] - taylor[(i, j)]).norm() <= 1e-8, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn norms_of_simple_matrices() {
        let n = matrix_norms(&identity(5));
        assert_abs_diff_eq!(n.frobenius, 5f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(n.spectral, 1.0, epsilon = 1e-14);
        let z = matrix_norms(&CMatrix::zeros(4, 4));
        assert_eq!((z.frobenius, z.spectral), (0.0, 0.0));

        let u = CVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8), real(0.0)]);
        let v = CVector::from_vec(vec![real(0.0), c(0.0, 1.0 / 2f64.sqrt()), real(1.0 / 2f64.sqrt())]);
        let outer = &u * v.adjoint();
        let n = matrix_norms(&outer);
        assert_abs_diff_eq!(n.frobenius, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(n.spectral, 1.0, epsilon = 1e-12);
    }
}
