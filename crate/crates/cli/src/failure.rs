use fht_core::Error;

pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BOUNDS: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_CONVERGENCE: i32 = 4;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DOMAIN: i32 = 65;

/// An error with its exit code. `report` is printed to stdout when present.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    pub report: Option<String>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
            report: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Parse(_) => EXIT_USAGE,
            Error::Domain(_) | Error::Structural(_) | Error::InvalidProfile(_) => EXIT_DOMAIN,
            Error::Unsupported(_) => EXIT_UNSUPPORTED,
            Error::Inconclusive(_) => EXIT_BOUNDS,
            Error::Convergence { .. } => EXIT_CONVERGENCE,
        };
        let report = match &err {
            Error::Convergence {
                estimate,
                error_bound,
            } => Some(
                serde_json::json!({
                    "status": "not_converged",
                    "estimate": [estimate.re, estimate.im],
                    "error_bound": error_bound,
                })
                .to_string(),
            ),
            _ => None,
        };
        Failure {
            code,
            message: err.to_string(),
            report,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: format!("I/O error: {err}"),
            report: None,
        }
    }
}
