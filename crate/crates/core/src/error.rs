use thiserror::Error;

/// Errors raised by the algebra kernel and the liaison constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch between operands")]
    RingMismatch,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("inhomogeneous entry at ({row}, {col})")]
    Inhomogeneous { row: usize, col: usize },
    #[error("inhomogeneous generator #{0}")]
    InhomogeneousGenerator(usize),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("zero module not allowed here")]
    ZeroModule,
    #[error("module is free: {0}")]
    FreeModule(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("element is not in the image of the map")]
    NotInImage,
    #[error("could not find a regular sequence in the annihilator (degrees tried: {0:?})")]
    NoRegularSequence(Vec<i64>),
    #[error("linking map is degenerate: the epimorphism is injective")]
    DegenerateLink,
    #[error("map is not surjective onto the target module")]
    NotSurjective,
    #[error("module is not quasi-Gorenstein: {0}")]
    NotQuasiGorenstein(String),
    #[error("isomorphism search inconclusive: {0}")]
    Inconclusive(String),
    #[error("operation search exhausted: {0}")]
    SearchExhausted(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
