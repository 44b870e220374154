use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// An enumeration would have produced more faces or cells than the
    /// configured guard allows. Deleted joins blow up combinatorially, so
    /// every closure and construction counts what it produces and aborts
    /// with this error instead of exhausting memory.
    #[error("face guard exceeded: construction needs more than {limit} faces (override with set_face_guard or the CTV_FACE_GUARD env var)")]
    FaceGuardExceeded { limit: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} exceeds the supported bound {max}", max = crate::homology::MAX_PRIME)]
    PrimeTooLarge(u64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    /// The requested group action does not map the complex into itself,
    /// which signals a malformed construction.
    #[error("complex is not closed under the shift: face {face:?} maps outside the complex")]
    ActionNotClosed { face: Vec<usize> },

    #[error("torus lift out of range: coordinate {coord} of point {point} is not in [0,1)")]
    LiftOutOfRange { point: usize, coord: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
