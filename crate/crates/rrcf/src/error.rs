//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series, product, or continued fraction failed to converge
    /// within the hard term cap.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A precondition on the working precision was violated.
    #[error("insufficient precision: {0}")]
    Precision(String),

    /// Evaluation hit a pole or removable-only singularity.
    #[error("singularity: {0}")]
    Singularity(String),

    /// A root-selection target had no real root nearby.
    #[error("root mismatch: {0}")]
    RootMismatch(String),

    /// Malformed argument (bad fraction string, empty basis, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
