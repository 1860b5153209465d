use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no sign change on bracket [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },
    #[error("no convergence after {iterations} iterations")]
    Convergence { iterations: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inequality violated: {0}")]
    InequalityViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by bad input rather than numerical failure.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
