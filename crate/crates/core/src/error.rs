use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("zero polynomial has no multidegree")]
    ZeroPolynomial,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorSize { k: usize, rows: usize, cols: usize },
    #[error("row and column selections have different sizes ({rows} vs {cols})")]
    SelectionMismatch { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("camera matrix has rank {0}, expected 3")]
    RankDeficient(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("point is the zero vector")]
    ZeroPoint,
    #[error("projection is undefined at the focal point")]
    AtFocus,
    #[error("cameras {0} and {1} share a focal point")]
    CoincidentFoci(usize, usize),
    #[error("invalid camera index or subset: {0}")]
    InvalidIndex(String),
    #[error("k = {k} out of range for {n} cameras")]
    KOutOfRange { k: usize, n: usize },
    #[error("colon by the zero ideal")]
    ZeroColon,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("too many variables ({0}); the engine supports at most {1}")]
    TooManyVariables(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
