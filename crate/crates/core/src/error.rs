use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands need more than two independent square roots")]
    TooManyRadicals,

    #[error("square root of a negative number is not supported: {0}")]
    NegativeRadicand(String),

    #[error("cannot certify square-free part of {value}: square factors above trial bound {bound} are possible")]
    SquarefreeBound { value: String, bound: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("discriminant mismatch: {left} vs {right}")]
    DiscriminantMismatch { left: i64, right: i64 },

    #[error("{0} has no decomposition into a fundamental discriminant")]
    NotADiscriminant(i64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("search exhausted: no {what} found within bound {bound}")]
    Exhausted { what: String, bound: u64 },

    #[error("enumeration radius {needed} exceeds search box {limit}")]
    BoxExceeded { needed: u64, limit: u64 },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn exhausted(what: impl Into<String>, bound: u64) -> Self {
        Error::Exhausted {
            what: what.into(),
            bound,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
