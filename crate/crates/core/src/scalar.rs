//! Scalar abstraction: every numerical routine in this crate is generic over
//! the real floating-point type that backs complex amplitudes, Hamiltonian
//! coefficients and times.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign, NumCast};

/// Real scalar backing amplitudes, coefficients and times.
///
/// Implemented for `f32` and `f64`. The associated tolerances control input
/// validation and iteration stopping, and scale with the precision of the
/// type; all reference results are stated for `f64`.
pub trait Scalar:
    Float + FloatConst + NumAssign + Sum<Self> + Debug + Display + Send + Sync + 'static
{
    /// Off-diagonal Frobenius norm at which the Jacobi eigensolver stops.
    fn eig_tol() -> Self;

    /// Largest deviation accepted when validating Hermitian or unitary inputs.
    fn validation_tol() -> Self;

    /// Pauli-term coefficients below this magnitude are dropped on merge.
    fn merge_tol() -> Self;

    /// Active-subspace probability below this aborts a distillation run.
    fn prob_floor() -> Self;

    /// Cast an `f64` literal into this scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("literal must be representable in the scalar type")
    }
}

impl Scalar for f64 {
    #[inline]
    fn eig_tol() -> Self {
        1e-13
    }
    #[inline]
    fn validation_tol() -> Self {
        1e-12
    }
    #[inline]
    fn merge_tol() -> Self {
        1e-15
    }
    #[inline]
    fn prob_floor() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    #[inline]
    fn eig_tol() -> Self {
        1e-5
    }
    #[inline]
    fn validation_tol() -> Self {
        1e-4
    }
    #[inline]
    fn merge_tol() -> Self {
        1e-7
    }
    #[inline]
    fn prob_floor() -> Self {
        1e-9
    }
}
