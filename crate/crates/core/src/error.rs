use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyInput,
    #[error("degenerate window starting at scan position {position} could not be covered within budget")]
    DegenerateWindowUnsolvable { position: usize },
    #[error("window search budget {0} exceeds the maximum of 8")]
    BudgetTooLarge(usize),
    #[error("exact oracle supports at most 9 points, got {0}")]
    TooLarge(usize),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid path document: {0}")]
    PathFormat(String),
}
