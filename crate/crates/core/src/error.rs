use thiserror::Error;

/// Failures raised by entropy, bound and spectral computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated infinite family leaves more tail mass than allowed.
    #[error("truncation error: tail mass {tail_mass:e} exceeds {limit:e} at truncation {truncation}")]
    Truncation {
        tail_mass: f64,
        limit: f64,
        truncation: usize,
    },

    /// Inconsistent configuration, e.g. a divergent weight series.
    #[error("configuration error: {0}")]
    Config(String),

    /// A numerically verified precondition does not hold.
    #[error("precondition failed: {message} (actual {actual})")]
    Precondition { message: String, actual: f64 },

    /// An iterative routine stopped before reaching its tolerance.
    #[error("numerical error: {message} (residual {residual:e})")]
    Numerical { message: String, residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
