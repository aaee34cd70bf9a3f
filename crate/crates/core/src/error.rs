use thiserror::Error;

/// Errors raised by the exact-arithmetic, function-field and symbol layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed field descriptors: {0} and {1}")]
    MixedField(String, String),

    #[error("mixed polynomial variables: {0} and {1}")]
    MixedVariable(char, char),

    #[error("zero input to {0}")]
    ZeroInput(&'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a unit at the place {1}")]
    NotAUnit(String, String),

    #[error("irreducibility of factor {0} over Q is not certified")]
    UncertifiedFactor(String),

    #[error("insufficient precision: exponent {needed} requested, series known up to {known}")]
    InsufficientPrecision { needed: i64, known: i64 },

    #[error("window {window} is below the required bound {bound}")]
    WindowTooSmall { window: usize, bound: usize },

    #[error("commutator support escapes the matrix block at index {0}")]
    SupportEscape(i64),

    #[error("operator does not stabilize the commensurability class of {0}")]
    NotStabilized(String),

    #[error("theorem hypothesis ({label}) fails for J = {subset:?}: {detail}")]
    Hypothesis {
        label: &'static str,
        subset: Vec<usize>,
        detail: String,
    },

    #[error("oracle mismatch at {place}: classical {classical}, oracle {oracle}")]
    OracleMismatch {
        place: String,
        classical: String,
        oracle: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
