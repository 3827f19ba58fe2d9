use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a usable prime modulus")]
    InvalidPrime(u64),

    #[error("scalars or matrices over different fields")]
    FieldMismatch,

    #[error("cannot reduce {value} modulo {p}: denominator divisible by {p}")]
    DenominatorDivisible { p: u64, value: String },

    #[error("entry {entry}: {source}")]
    Reduction {
        entry: String,
        #[source]
        source: Box<Error>,
    },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("expected {expected}, got {got}")]
    Shape { expected: String, got: String },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("odd size {0} has no pfaffian")]
    OddPfaffian(usize),

    #[error("characteristic {0} does not support the apolarity action up to order {1}")]
    Characteristic(u64, u32),

    #[error("{0} must be nonzero")]
    ZeroInput(&'static str),

    #[error("dual socle kernel has dimension {0}, expected 1")]
    DualSocleKernel(usize),

    #[error("degenerate input at stage `{stage}`: {reason}")]
    Degenerate { stage: &'static str, reason: String },

    #[error("non-general net at stage `{stage}`: {reason}")]
    NonGeneralNet { stage: &'static str, reason: String },

    #[error("resolution input is not minimal or has the wrong shape: {0}")]
    NonMinimalResolution(String),

    #[error("{0}")]
    Parse(#[from] crate::parse::ParseError),

    #[error("not a twisted-cubic point: {0}")]
    NotTwistedCubic(String),

    #[error("enumeration guard: {0}")]
    EnumerationGuard(String),
}

impl Error {
    pub(crate) fn degenerate(stage: &'static str, reason: impl Into<String>) -> Error {
        Error::Degenerate {
            stage,
            reason: reason.into(),
        }
    }

    pub(crate) fn non_general(stage: &'static str, reason: impl Into<String>) -> Error {
        Error::NonGeneralNet {
            stage,
            reason: reason.into(),
        }
    }
}
