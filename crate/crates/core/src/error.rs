use thiserror::Error;

use crate::digraph::GraphClass;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("input is {found}, expected {expected}")]
    Class { found: GraphClass, expected: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource bound exceeded: {0}")]
    Resource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
