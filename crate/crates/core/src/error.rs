use thiserror::Error;

use crate::invariant_subspaces::StructureWitness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("the action is not transitive")]
    NotTransitive,

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no minimal decomposition found after {attempts} seeds")]
    MinimalityFailure { attempts: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("kernel property {property} violated (max residual {residual:e})")]
    PropertyViolation { property: String, residual: f64 },

    #[error("invariant subspace is not the direct sum of the minimal spaces it meets (signature {:?}, residual {:e})", .0.omega, .0.residual)]
    StructureFailure(Box<StructureWitness>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::InvalidPermutation(_)
            | Error::InvalidArgument(_)
            | Error::DimensionMismatch { .. } => 2,
            Error::CapExceeded { .. } => 3,
            _ => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NotTransitive => "NotTransitive",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NonFinite => "NonFinite",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::MinimalityFailure { .. } => "MinimalityFailure",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::PropertyViolation { .. } => "PropertyViolation",
            Error::StructureFailure(_) => "StructureFailure",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "ParseError",
        }
    }
}
