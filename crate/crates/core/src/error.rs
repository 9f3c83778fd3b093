//! Error type shared by all simulator operations.

use thiserror::Error;

/// Errors surfaced by the simulator core.
#[derive(Debug, Error)]
pub enum Error {
    /// A size, index or parameter does not fit the register or schedule.
    #[error("configuration error: {0}")]
    Config(String),

    /// A numerical input failed validation (non-unitary gate, non-Hermitian
    /// matrix, non-commuting split, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// An iterative routine failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// The protocol lost its active subspace: all-ancillas-zero probability
    /// is zero or has underflowed the guard threshold.
    #[error("degenerate protocol: {0}")]
    DegenerateProtocol(String),
}

pub type Result<T> = std::result::Result<T, Error>;
