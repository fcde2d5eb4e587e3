use thiserror::Error;

/// Errors raised by the enumeration and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has a zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("inner series of a composition must have a zero constant term")]
    NonzeroConstantTerm,

    #[error("not a quartic: leading coefficient is zero")]
    NotQuartic,

    #[error("pole of theta at z = {0}")]
    Pole(f64),

    #[error("no real root of theta(z) = {0} in (0, 0.7)")]
    NoRealRoot(f64),

    #[error("enumeration budget of {budget} search nodes exceeded")]
    BudgetExceeded { budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
