use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A symbolic set is malformed (bad parameter, empty union, ...).
    #[error("malformed set: {0}")]
    Structural(String),

    /// An index profile violates one or more of the index inequalities.
    #[error("invalid index profile: {}", .0.join("; "))]
    InvalidProfile(Vec<String>),

    /// The profile falls outside the cases the classifier can decide.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A check needs exact answers but received bounds.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// Adaptive quadrature stopped before reaching the requested tolerance.
    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound:e}")]
    Convergence {
        estimate: Complex64,
        error_bound: f64,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
