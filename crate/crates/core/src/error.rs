use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("measure has no atoms")]
    EmptyMeasure,

    #[error("atom value {0} is not finite")]
    NonFiniteValue(f64),

    #[error("atom weight {weight} at value {value} must be finite and > 0")]
    InvalidWeight { value: f64, weight: f64 },

    #[error("perturbation would leave total mass {0} (must be > 0)")]
    NonPositiveMass(f64),

    /// A functional was evaluated outside its domain (nonpositive values,
    /// zero total, bad parameter).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("sampling design error: {0}")]
    Design(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn design(msg: impl Into<String>) -> Self {
        Error::Design(msg.into())
    }
}
