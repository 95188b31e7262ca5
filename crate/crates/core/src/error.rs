use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("ideal is not admissible: {0}")]
    NotAdmissible(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("modules over different algebras")]
    AlgebraMismatch,
    #[error("index {0} out of range")]
    Index(usize),
    #[error("not a module map: {0}")]
    NotAMap(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("cap of {cap} reached: {what}")]
    Cap { what: String, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
