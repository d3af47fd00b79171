use thiserror::Error;

/// Errors raised by every layer of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("sort mismatch in {context}: expected `{expected}`, found `{found}`")]
    SortMismatch {
        context: String,
        expected: String,
        found: String,
    },
    #[error("syntax error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("rename collision: {0}")]
    RenameCollision(String),
    #[error("signatures are not disjoint: symbol `{0}` occurs twice")]
    Disjointness(String),
    #[error("domain mismatch: {0}")]
    Domain(String),
    #[error("invalid structure: {0}")]
    Structure(String),
    #[error("word is empty")]
    EmptyWord,
    #[error("position {index} out of range for word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("formula uses future operator: {0}")]
    NotPurePast(String),
    #[error("formula is not a sentence; free variables: {0}")]
    NotSentence(String),
    #[error("formula is not first-order: {0}")]
    Temporal(String),
    #[error("enumeration budget exceeded: {what} needs {needed}, limit {limit}")]
    Budget {
        what: String,
        needed: u128,
        limit: u128,
    },
    #[error("determinism violation: {0}")]
    Determinism(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid automaton: {0}")]
    Automaton(String),
    #[error("smt encoding: {0}")]
    Smt(String),
    #[error("solver: {0}")]
    Solver(String),
    #[error("schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
