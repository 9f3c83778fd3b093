//! Statevector simulation of adiabatic ground-state preparation and
//! ancilla-based distillation of vacuum expectation values.
//!
//! The crate is organized around a small stack:
//!
//! - [`pauli`]: Hermitian operators as weighted Pauli words.
//! - [`dense`]: dense matrices, a Jacobi eigensolver and exact exponentials,
//!   serving as the ground-truth layer.
//! - [`statevec`]: the amplitude register with gates, expectations, ancilla
//!   projection and seeded shot sampling.
//! - [`models`]: the one-qubit and two-site benchmark Hamiltonians with
//!   closed-form reference values.
//! - [`evolve`]: interpolated adiabatic ramps and second-order split-step
//!   evolution.
//! - [`distill`]: the twirl protocol that filters excitation out of the
//!   approximate vacuum through ancilla post-selection.
//!
//! Everything is generic over the real scalar behind the amplitudes (see
//! [`scalar::Scalar`]); the `*64`/`*32` aliases below pin the two concrete
//! precisions. All quoted tolerances hold for `f64`.

pub mod dense;
pub mod distill;
pub mod error;
pub mod evolve;
pub mod models;
pub mod pauli;
pub mod scalar;
pub mod statevec;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type StateVector64 = statevec::StateVector<f64>;
pub type PauliHamiltonian64 = pauli::PauliHamiltonian<f64>;
pub type DenseMatrix64 = dense::DenseMatrix<f64>;
pub type DenseHermitian64 = dense::DenseHermitian<f64>;
pub type EigenSystem64 = dense::EigenSystem<f64>;
pub type ModelSpec64 = models::ModelSpec<f64>;
pub type Schedule64 = evolve::Schedule<f64>;
pub type TrotterSplit64 = evolve::TrotterSplit<f64>;
pub type TwirlRecord64 = distill::TwirlRecord<f64>;

pub type StateVector32 = statevec::StateVector<f32>;
pub type PauliHamiltonian32 = pauli::PauliHamiltonian<f32>;
pub type DenseMatrix32 = dense::DenseMatrix<f32>;
pub type DenseHermitian32 = dense::DenseHermitian<f32>;
pub type EigenSystem32 = dense::EigenSystem<f32>;
pub type ModelSpec32 = models::ModelSpec<f32>;
pub type Schedule32 = evolve::Schedule<f32>;
pub type TrotterSplit32 = evolve::TrotterSplit<f32>;
pub type TwirlRecord32 = distill::TwirlRecord<f32>;
