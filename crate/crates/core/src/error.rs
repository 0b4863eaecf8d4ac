use thiserror::Error;

/// Errors raised across the census engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The configured search budget ran out before the search completed.
    /// This is distinct from a completed search that found nothing.
    #[error("resource budget exhausted after {touched} table cells (limit {limit})")]
    BudgetExceeded { touched: u64, limit: u64 },

    /// Coset enumeration did not close within the configured cap.
    #[error("group too large or infinite: enumeration exceeded {cap} cosets")]
    TooLarge { cap: usize },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Whether the error signals resource exhaustion rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::TooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
