use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid arities: {0}")]
    InvalidArities(String),

    #[error("{what} {value} out of range (must be < {bound})")]
    Range {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("operation not defined at level {0}")]
    Level(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
