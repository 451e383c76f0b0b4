use thiserror::Error;

/// Errors raised by the exact pipeline.
///
/// Verification outcomes (violations, strict vs. tight relations) are data and
/// are reported through the report types, never through this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {what} is {got}, limit is {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("gave up after {attempts} attempts: {what}")]
    RetryExhausted { what: String, attempts: usize },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        Err(Error::Capacity { what, got, limit })
    } else {
        Ok(())
    }
}
