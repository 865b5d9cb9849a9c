//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a precondition (bad range, mismatched dimensions, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The exponent does not satisfy p > n; none of the bounds apply there.
    #[error("unsupported exponent: requires p > n (got p={p}, n={n})")]
    UnsupportedExponent { p: f64, n: u32 },

    /// Parameters fall outside the growth regime an operation was asked for.
    #[error("regime error: {0}")]
    Regime(String),

    /// An iterative routine hit its cap without meeting its tolerance.
    /// `last` carries the final iterate value for diagnostics.
    #[error("convergence failure in {context}: last value {last}")]
    Convergence { context: String, last: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn regime(msg: impl Into<String>) -> Self {
        Error::Regime(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
