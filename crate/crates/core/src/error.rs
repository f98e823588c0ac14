use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown node `{0}`")]
    UnknownNode(NodeId),

    #[error("duplicate node `{0}`")]
    DuplicateNode(NodeId),

    #[error("channel endpoints must differ (got `{0}` twice)")]
    SelfLoop(NodeId),

    #[error("negative balance {value} in {field}")]
    NegativeBalance { field: String, value: f64 },

    #[error("invalid value for {field}: {reason}")]
    InvalidField { field: String, reason: String },

    #[error("rank factors need at least two nodes")]
    SingletonGraph,

    #[error("source and target are the same node `{0}`")]
    SameNode(NodeId),

    #[error("strategy costs {spent} but the budget is {budget}")]
    BudgetExceeded { spent: u64, budget: u64 },

    #[error("budget cannot fund a single channel")]
    EmptyBudget,

    #[error("{count} budget divisions exceed the cap of {cap}; use a larger unit")]
    DivisionSpaceTooLarge { count: u128, cap: u128 },

    #[error("no candidate channel satisfies the benefit positivity condition")]
    NoFeasibleCandidate,

    #[error("search space of {size} strategies exceeds the cap of {cap}")]
    SpaceTooLarge { size: u128, cap: u128 },

    #[error("graph has {n} nodes, best-response enumeration is limited to {max}")]
    TooLarge { n: usize, max: usize },

    #[error("bad topology size: {0}")]
    BadSize(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Whether the error stems from bad input rather than from a failed computation.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::DivisionSpaceTooLarge { .. }
                | Error::SpaceTooLarge { .. }
                | Error::NoFeasibleCandidate
                | Error::TooLarge { .. }
        )
    }

    pub(crate) fn field(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidField {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
