use thiserror::Error;

/// Errors raised by the rheokit core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RheoError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("argument {value} outside of [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("root solve did not converge: {0}")]
    NoConvergence(String),

    #[error("unsupported mode: {0}")]
    Unsupported(String),

    #[error("time integration failed: {0}")]
    Integrator(String),
}

pub type Result<T, E = RheoError> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(RheoError::InvalidInput(msg.into()))
}
