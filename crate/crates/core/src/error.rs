use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message} (near {token})")]
    Syntax {
        line: usize,
        column: usize,
        token: String,
        message: String,
    },

    #[error("{0}")]
    Bind(String),

    #[error("table or view '{0}' already exists")]
    DuplicateName(String),

    #[error("unknown table '{0}'")]
    UnknownTable(String),

    #[error("unknown graph view '{0}'")]
    UnknownView(String),

    #[error("unknown column '{column}' in '{table}'")]
    UnknownColumn { table: String, column: String },

    #[error("invalid schema: {0}")]
    Schema(String),

    #[error("table '{table}' expects {expected} values, got {got}")]
    Arity { table: String, expected: usize, got: usize },

    #[error("type mismatch for column '{column}': expected {expected}, got {got}")]
    TypeMismatch {
        column: String,
        expected: String,
        got: String,
    },

    #[error("duplicate id {id} in '{table}'")]
    DuplicateId { table: String, id: String },

    #[error("null id in graph source '{table}'")]
    NullId { table: String },

    #[error("graph view '{view}': {message}")]
    GraphView { view: String, message: String },

    #[error("plan error: {0}")]
    Plan(String),

    #[error("execution error: {0}")]
    Exec(String),

    #[error("negative weight on edge {edge}")]
    NegativeWeight { edge: i64 },

    #[error("csv error in {path} at line {line}: {message}")]
    Csv { path: PathBuf, line: u64, message: String },

    #[error("io error on {path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn bind(msg: impl Into<String>) -> Self {
        Error::Bind(msg.into())
    }

    pub(crate) fn exec(msg: impl Into<String>) -> Self {
        Error::Exec(msg.into())
    }

    pub(crate) fn plan(msg: impl Into<String>) -> Self {
        Error::Plan(msg.into())
    }
}
