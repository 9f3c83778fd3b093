//! Small dense complex matrices, a cyclic Jacobi eigensolver for Hermitian
//! matrices, and exact matrix exponentials built from the eigendecomposition.
//!
//! Dimensions stay at 2^n for n ≤ 12 qubits, so robustness wins over speed:
//! the Jacobi sweep is foolproof on Hermitian input and needs no pivoting or
//! deflation logic.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::pauli::PauliHamiltonian;
use crate::scalar::Scalar;

/// Maximum number of Jacobi sweeps before giving up.
const MAX_SWEEPS: usize = 100;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex::new(T::one(), T::zero()));
        }
        m
    }

    /// Build from a row-major slice of `dim × dim` entries.
    pub fn from_rows(dim: usize, entries: &[Complex<T>]) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        Self {
            dim,
            data: entries.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: Complex<T>) {
        self.data[row * self.dim + col] = v;
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.norm_sqr() == T::zero() {
                    continue;
                }
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let n = self.dim;
        let mut out = vec![Complex::new(T::zero(), T::zero()); n];
        for i in 0..n {
            let mut acc = Complex::new(T::zero(), T::zero());
            for j in 0..n {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let n = self.dim * other.dim;
        let mut out = Self::zeros(n);
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                let a = self.get(i1, j1);
                for i2 in 0..other.dim {
                    for j2 in 0..other.dim {
                        out.set(
                            i1 * other.dim + i2,
                            j1 * other.dim + j2,
                            a * other.get(i2, j2),
                        );
                    }
                }
            }
        }
        out
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Frobenius norm of the off-diagonal part.
    pub fn off_diagonal_norm(&self) -> T {
        let n = self.dim;
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc += self.get(i, j).norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    /// Largest deviation of `self† self` from the identity.
    pub fn unitarity_defect(&self) -> T {
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.dim))
    }

    /// Largest deviation from `self = self†`.
    pub fn hermiticity_defect(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

/// Hermitian matrix, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHermitian<T> {
    inner: DenseMatrix<T>,
}

impl<T: Scalar> DenseHermitian<T> {
    /// Wrap a matrix after checking it equals its conjugate transpose.
    pub fn new(m: DenseMatrix<T>) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect > T::validation_tol() {
            return Err(Error::Validation(format!(
                "matrix is not Hermitian (defect {defect})"
            )));
        }
        Ok(Self { inner: m })
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order, orthonormal eigenvectors as matching columns.
#[derive(Debug, Clone)]
pub struct EigenSystem<T> {
    values: Vec<T>,
    vectors: DenseMatrix<T>,
}

impl<T: Scalar> EigenSystem<T> {
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn vectors(&self) -> &DenseMatrix<T> {
        &self.vectors
    }

    /// Eigenvector for `values()[k]`, as an amplitude vector.
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.vectors.dim).map(|i| self.vectors.get(i, k)).collect()
    }

    /// Smallest eigenvalue and its eigenvector.
    pub fn ground(&self) -> (T, Vec<Complex<T>>) {
        (self.values[0], self.vector(0))
    }
}

/// Diagonalize a Hermitian matrix by cyclic Jacobi rotations.
///
/// Sweeps annihilate one off-diagonal entry at a time with a complex plane
/// rotation and stop once the off-diagonal Frobenius norm falls below the
/// scalar's eigensolver tolerance.
pub fn eig_hermitian<T: Scalar>(m: &DenseHermitian<T>) -> Result<EigenSystem<T>> {
    let n = m.dim();
    let mut a = m.matrix().clone();
    let mut q = DenseMatrix::identity(n);
    let zero = Complex::new(T::zero(), T::zero());
    let tol = T::eig_tol();

    let mut converged = n <= 1 || a.off_diagonal_norm() < tol;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n - 1 {
            for r in p + 1..n {
                let b = a.get(p, r);
                let babs = b.norm();
                if babs == T::zero() {
                    continue;
                }
                // Phase of the pivot and the real rotation that annihilates it.
                let phase = b / babs;
                let app = a.get(p, p).re;
                let arr = a.get(r, r).re;
                let theta = (arr - app) / (babs + babs);
                // Smaller-magnitude root of t² − 2θt − 1 = 0.
                let t = if theta == T::zero() {
                    T::one()
                } else {
                    let sign = if theta < T::zero() { T::one() } else { -T::one() };
                    sign / (theta.abs() + (T::one() + theta * theta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let sigma = t * c;

                // V[p][p]=c, V[p][r]=−σ·phase, V[r][p]=σ·conj(phase), V[r][r]=c.
                let vpp = Complex::new(c, T::zero());
                let vpr = -phase * sigma;
                let vrp = phase.conj() * sigma;
                let vrr = Complex::new(c, T::zero());

                // A ← V† A V, columns then rows.
                for j in 0..n {
                    let xp = a.get(j, p);
                    let xr = a.get(j, r);
                    a.set(j, p, xp * vpp + xr * vrp);
                    a.set(j, r, xp * vpr + xr * vrr);
                }
                for j in 0..n {
                    let yp = a.get(p, j);
                    let yr = a.get(r, j);
                    a.set(p, j, vpp.conj() * yp + vrp.conj() * yr);
                    a.set(r, j, vpr.conj() * yp + vrr.conj() * yr);
                }
                a.set(p, r, zero);
                a.set(r, p, zero);

                // Accumulate eigenvectors: Q ← Q V.
                for j in 0..n {
                    let xp = q.get(j, p);
                    let xr = q.get(j, r);
                    q.set(j, p, xp * vpp + xr * vrp);
                    q.set(j, r, xp * vpr + xr * vrr);
                }
            }
        }
        converged = a.off_diagonal_norm() < tol;
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps \
             (off-diagonal norm {})",
            a.off_diagonal_norm()
        )));
    }

    // Sort eigenpairs ascending.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .expect("eigenvalues are finite")
    });
    let values: Vec<T> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = DenseMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, new_col, q.get(row, old_col));
        }
    }
    Ok(EigenSystem { values, vectors })
}

/// Exact unitary `exp(−i t H)` of a Pauli-sum Hamiltonian, via the
/// eigendecomposition `V · diag(e^{−iλt}) · V†`.
pub fn expm_exact<T: Scalar>(h: &PauliHamiltonian<T>, t: T) -> Result<DenseMatrix<T>> {
    let dense = h.to_dense()?;
    let eig = eig_hermitian(&dense)?;
    let n = dense.dim();
    let phases: Vec<Complex<T>> = eig
        .values()
        .iter()
        .map(|&lambda| Complex::from_polar(T::one(), -lambda * t))
        .collect();
    let v = eig.vectors();
    let mut out = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..n {
                acc += v.get(i, k) * phases[k] * v.get(j, k).conj();
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}
