use thiserror::Error;

/// Errors raised by solvers, the oracle, and the I/O layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller broke an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),

    /// No spanning tree satisfies the hop bound (n ≥ 3 with D = 1).
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A reattachment would create a cycle.
    #[error("cycle: cannot attach {child} under {parent}, which lies in its subtree")]
    Cycle { child: usize, parent: usize },

    /// Malformed input text.
    #[error("parse error at token {token}: {message}")]
    Parse { token: usize, message: String },

    /// The exhaustive oracle refused an instance above its enumeration budget.
    #[error("oracle refuses n = {n}: enumeration budget is n <= {max} ({trees} trees would be needed)")]
    Budget { n: usize, max: usize, trees: f64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
