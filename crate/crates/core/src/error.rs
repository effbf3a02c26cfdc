use thiserror::Error;

/// Crate-wide error type. Search budgets, precondition failures and malformed
/// inputs are all first-class values so callers can map them to exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// A bounded search ran out of budget before it could settle the question.
    #[error("search budget exhausted after {spent} steps (limit {limit})")]
    CapExceeded { limit: u64, spent: u64 },

    /// A graph was larger than the configured vertex cap of an exact solver.
    #[error("instance has {n} vertices, above the configured cap of {cap}")]
    VertexCapExceeded { n: usize, cap: usize },

    /// Order search over |S|! permutations is only attempted for small S.
    #[error("order search needs |S| <= {max}, got {s}; supply an order explicitly")]
    TooManyOrders { s: usize, max: usize },

    /// Erdos-Szekeres needs |seq| >= (a-1)(b-1)+1.
    #[error("sequence of length {got} is below the Erdos-Szekeres threshold {needed}")]
    TooShort { needed: usize, got: usize },

    /// A model had fewer branch sets than the recursion requires.
    #[error("model has {got} branch sets, need at least {needed}")]
    ModelTooSmall { needed: usize, got: usize },

    /// A caller violated a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal consistency check failed; this indicates a bug, not a user error.
    #[error("internal defect: {0}")]
    Defect(String),

    /// Malformed file or argument.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
