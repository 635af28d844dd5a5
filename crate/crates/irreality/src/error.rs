//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by state construction, quantum maps, and tomography.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The matrix deviates from `M = M†` by more than the Hermiticity tolerance.
    #[error("matrix is not Hermitian (max |M - M†| = {max_dev:.3e})")]
    NotHermitian { max_dev: f64 },

    /// Eigendecomposition is only supported up to dimension 8.
    #[error("dimension {dim} exceeds the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    /// Two operands have incompatible dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// An operation requires a specific Hilbert-space dimension.
    #[error("expected dimension {expected}, got {got}")]
    InvalidDimension { expected: usize, got: usize },

    /// Density matrices are supported for a single qubit or a qubit pair only.
    #[error("density matrices must have dimension 2 or 4, got {got}")]
    UnsupportedStateDimension { got: usize },

    /// The matrix deviates from `U·U† = I` by more than the unitarity tolerance.
    #[error("matrix is not unitary (max |U·U† - I| = {max_dev:.3e})")]
    NotUnitary { max_dev: f64 },

    /// The trace differs from 1 beyond tolerance.
    #[error("trace must equal 1 (deviation {dev:.3e})")]
    NotUnitTrace { dev: f64 },

    /// An eigenvalue below the positivity floor was found.
    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    /// A state vector is not normalized.
    #[error("state vector is not normalized (|<v|v> - 1| = {dev:.3e})")]
    NotNormalized { dev: f64 },

    /// A scalar parameter lies outside its admissible interval.
    #[error("{name} = {value} is out of range [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// A measurement-outcome index does not address any projector.
    #[error("outcome index {index} is out of range for {count} outcomes")]
    InvalidOutcome { index: usize, count: usize },

    /// A count table is missing settings or is otherwise malformed.
    #[error("incomplete count table: {detail}")]
    IncompleteData { detail: String },

    /// A serialized count table could not be parsed.
    #[error("failed to parse count table: {detail}")]
    Parse { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
