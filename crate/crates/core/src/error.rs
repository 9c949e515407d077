//! Error taxonomy shared by every module in the crate.

use thiserror::Error;

/// Failure modes of the library operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input contains NaN or infinite entries, or is structurally malformed.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A matrix required to be Hermitian is not, within tolerance.
    #[error(
        "matrix is not Hermitian: deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// A matrix required to be PT-symmetric (real characteristic polynomial) is not.
    #[error("matrix is not PT-symmetric: {0}")]
    NotPtSymmetric(String),

    /// Inputs violate the algebraic preconditions of an identity.
    #[error("domain error: {0}")]
    Domain(String),

    /// A metric fell outside the cell pattern an operation supports.
    #[error("metric cell mismatch: {0}")]
    CellMismatch(String),

    /// Scalar metrics carry no constraint matrix; the ensemble is answered directly.
    #[error("scalar metric has no constraint matrix; use the closed-form basis")]
    ScalarGUnsupported,

    /// The matrix pair does not satisfy the pseudo-Hermiticity relation.
    #[error("pair is not compatible: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    PairNotCompatible { residual: f64, tolerance: f64 },

    /// Two metrics are proportional, so no unique common matrix exists.
    #[error("metrics are proportional; the common pseudo-Hermitian matrix is not unique")]
    ProportionalMetrics,

    /// The linear system has no solution for the given data.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A parameter list does not match the basis dimension.
    #[error("dimension mismatch: expected {expected} parameters, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The requested level set contains no real points.
    #[error("level set is empty: {0}")]
    EmptyLevelSet(String),

    /// The requested sampling grid exceeds the hard size limit.
    #[error("grid of {points} points exceeds the limit of {limit}")]
    GridTooLarge { points: u64, limit: u64 },

    /// Malformed JSON or an unrecognized schema.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
