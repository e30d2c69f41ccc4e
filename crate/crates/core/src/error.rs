use thiserror::Error;

/// Errors produced by the characteristic polynomial routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The matrix does not have the structure the operation requires.
    #[error("structure error: {0}")]
    Structure(String),

    /// Dimensions are inconsistent (non-square data, mismatched lengths).
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A matrix entry or parameter is NaN or infinite.
    #[error("non-finite value at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// Requested coefficient count is outside `1..=n`.
    #[error("coefficient index {k} outside 1..={n}")]
    Index { k: usize, n: usize },

    /// An intermediate result left the floating-point range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Argument outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// The dense eigensolver did not converge.
    #[error("eigensolver failed to converge")]
    EigFailure,

    /// A hypothesis of an error bound theorem does not hold.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Invalid or missing gallery parameters.
    #[error("invalid gallery spec: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
