use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("input rejected: {0}")]
    Input(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("mathematical check failed: {0}")]
    CheckFailed(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("internal failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
