use thiserror::Error;

/// Failures raised by the exact-arithmetic engine.
///
/// Certification *outcomes* (a matrix that is not positive definite, a
/// nonzero residual) are never errors; they are reported through
/// [`crate::report::VerificationReport`]. Errors signal contract
/// violations or derivation bugs upstream.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("homogeneity error: cannot add a pi^({left}/2) term to a pi^({right}/2) term")]
    Homogeneity { left: u32, right: u32 },
    #[error("divergent moment integral: r^{i} / (1+r^2)^({two_j}/2)")]
    Convergence { i: i64, two_j: i64 },
    #[error("zero pivot in back-substitution at row {row}, column {col}")]
    Degenerate { row: usize, col: usize },
    #[error("input error: {0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
