use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole {
        function: &'static str,
        at: Complex64,
    },

    #[error("argument {at} outside the domain of {function}: {reason}")]
    Domain {
        function: &'static str,
        at: Complex64,
        reason: &'static str,
    },

    #[error("{what} does not converge at {at} (requires {requirement})")]
    ConvergenceDomain {
        what: &'static str,
        at: Complex64,
        requirement: String,
    },

    #[error("point z = {z} is not admissible: z - {point} lies on the cut (-inf, 0]")]
    NotAdmissible { z: Complex64, point: Complex64 },

    #[error("index out of range: {0}")]
    IndexRange(String),

    #[error("quadrature did not reach the requested accuracy: estimated error {estimate:e} > allowed {allowed:e} ({detail})")]
    QuadratureFailure {
        estimate: f64,
        allowed: f64,
        detail: String,
    },

    #[error("no closed form available for {0}")]
    NoClosedForm(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
