use thiserror::Error;

use crate::graph::GraphViolation;
use crate::signature::Word;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("undeclared object symbol `{0}`")]
    UndeclaredObject(String),

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("type mismatch in `{context}`: codomain {cod} does not match domain {dom}")]
    TypeMismatch { context: String, cod: Word, dom: Word },

    #[error("`{0}` is not dualisable")]
    NotDualisable(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("lens is not an adaptor: {0}")]
    NotAnAdaptor(String),

    #[error("no instance dual for the value of `{0}`")]
    DualUndefined(String),

    #[error("symbol `{0}` has no value in the valuation")]
    UnmappedSymbol(String),

    #[error("infeasible reflection subset: {0}")]
    InfeasibleSubset(String),

    #[error("game is not a scalar: {0}")]
    NotAScalar(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(Box<GraphViolation>),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("valuation: {0}")]
    Valuation(String),

    #[error("fixture: {0}")]
    Fixture(String),

    #[error("json: {0}")]
    Json(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<GraphViolation> for Error {
    fn from(e: GraphViolation) -> Self {
        Error::InvalidGraph(Box::new(e))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
