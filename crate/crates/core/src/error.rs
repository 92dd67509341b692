use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("relation `{0}` cannot be oriented: {1}")]
    Orientation(String, String),

    #[error("axiom `{identity}` violated at {witness}")]
    Axiom { identity: String, witness: String },

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("rewriting did not terminate within {0} steps")]
    NonTermination(usize),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
