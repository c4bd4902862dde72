use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("size cap exceeded: n = {n} > {max}")]
    SizeCap { n: usize, max: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("matrix has no cycles")]
    NoCycles,

    #[error("empty {0} selection")]
    EmptyCore(&'static str),

    #[error("constant polynomial has no corner roots")]
    ConstantPolynomial,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("matrix is nonsingular")]
    Nonsingular,

    #[error("{what}: bound {bound} exhausted")]
    BoundExhausted { what: &'static str, bound: usize },
}

impl Error {
    /// Process exit code for the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::BoundExhausted { .. } => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
