use thiserror::Error;

use crate::strata::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The inputs are inconsistent (unstable moduli index, degree mismatch, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported genus {genus}: this evaluator handles genus <= {max}")]
    UnsupportedGenus { genus: u32, max: u32 },

    #[error("invalid dual graph: {0}")]
    InvalidGraph(ValidationReport),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
