use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its valid range.
    #[error("invalid {name}: {value} (expected {expected})")]
    InvalidParameter {
        name: &'static str,
        value: String,
        expected: String,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// No duration within the time limit reaches the detection requirement.
    #[error("infeasible design: {0}")]
    Infeasible(String),

    #[error(
        "payload of {bits} bits does not fit: only {available} bits available at T = {budget}"
    )]
    BudgetTooSmall {
        bits: usize,
        available: usize,
        budget: u64,
    },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("consecutive redundancy letters are equal at position {position}")]
    ZeroDifference { position: usize },

    #[error("unrecoverable: {0}")]
    Unrecoverable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(
        name: &'static str,
        value: impl ToString,
        expected: impl Into<String>,
    ) -> Self {
        Error::InvalidParameter {
            name,
            value: value.to_string(),
            expected: expected.into(),
        }
    }
}
