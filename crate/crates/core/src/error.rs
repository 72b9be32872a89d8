use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("test not applicable: {0}")]
    Inapplicable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field: {0}")]
    Field(String),
    #[error("group closure exceeds the order cap of {cap}")]
    OrderCap { cap: usize },
    #[error("group: {0}")]
    Group(String),
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("action is not sharply transitive: {0}")]
    NotSharplyTransitive(String),
    #[error("construction: {0}")]
    Construction(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
