use thiserror::Error;

/// Errors raised by the arithmetic, ring and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different fields ({0} vs {1})")]
    MixedField(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("cocycle value alpha({0}, {1}) is zero")]
    ZeroCocycleValue(String, String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),
    #[error("exact division failed: {0}")]
    ExactDivisionFailed(String),
    #[error("denominator is not in the localizing monoid: {0}")]
    NonUnitDenominator(String),
    #[error("unsupported field for this operation: {0}")]
    FieldUnsupported(String),
    #[error("target degree {0} exceeds bound {1}")]
    DegreeBoundExceeded(usize, usize),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("document error: {0}")]
    Document(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable kind, used on the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MixedField(..) => "MixedField",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotPrime(_) => "NotPrime",
            Error::ArityMismatch(..) => "ArityMismatch",
            Error::CarrierMismatch(_) => "CarrierMismatch",
            Error::InvalidAutomorphism(_) => "InvalidAutomorphism",
            Error::GroupMismatch(_) => "GroupMismatch",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::ZeroCocycleValue(..) => "ZeroCocycleValue",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::ParameterDomain(_) => "ParameterDomain",
            Error::ExactDivisionFailed(_) => "ExactDivisionFailed",
            Error::NonUnitDenominator(_) => "NonUnitDenominator",
            Error::FieldUnsupported(_) => "FieldUnsupported",
            Error::DegreeBoundExceeded(..) => "DegreeBoundExceeded",
            Error::Parse { .. } => "ParseError",
            Error::Document(_) => "DocumentError",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
