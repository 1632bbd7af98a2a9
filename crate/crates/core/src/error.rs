use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be positive, got 0")]
    Zero,

    #[error("multiset is not Galois-stable: exponent {exponent} at level {level} has multiplicity {found}, expected {expected}")]
    NotGaloisStable {
        level: u64,
        exponent: u64,
        found: String,
        expected: String,
    },

    #[error("inexact division in {context}")]
    InexactDivision { context: &'static str },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix spectrum is not contained in the roots of unity: {0}")]
    NotUnitSpectrum(String),

    #[error("numeric spectrum certification inconclusive: {0}")]
    Indeterminate(String),

    #[error("subset is not multiplicative: {0}")]
    NotMultiplicative(String),

    #[error("invalid rig table: {0}")]
    InvalidRig(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("characterization failed: {0}")]
    Characterization(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}
