use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2..65536")]
    NotPrime(u64),
    #[error("field mismatch: characteristic {0} vs {1}")]
    FieldMismatch(u32, u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("entry {value} is not reduced modulo {p}")]
    Unreduced { value: u64, p: u32 },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("algebra is not local")]
    NotLocal,
    #[error("algebra is not selfinjective")]
    NotSelfinjective,
    #[error("bimodule is not left-right projective")]
    NotLrp,
    #[error("not an algebra map: {0}")]
    InvalidMap(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("could not lift chain map in degree {0}")]
    LiftFailed(usize),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
