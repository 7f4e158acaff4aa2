use thiserror::Error;

/// Errors shared by every module.
///
/// `Divergence` is a mathematically meaningful outcome (a potential that is identically
/// infinite), not a bug; callers usually report it rather than abort.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates its domain; the message names the constraint.
    #[error("invalid parameters: {0}")]
    Invalid(String),
    /// Valid parameters handed to an operation that does not cover them.
    #[error("rejected: {0}")]
    Rejected(String),
    #[error("quadrature/integration did not converge in {context}: estimate {estimate:e}, error bound {error_bound:e}")]
    NonConvergence {
        context: String,
        estimate: f64,
        error_bound: f64,
    },
    /// The integral is infinite; `exponent` is the non-positive decay exponent found.
    #[error("divergent integral in {context}: tail decay exponent {exponent} is not positive")]
    Divergence { context: String, exponent: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
