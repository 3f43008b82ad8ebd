use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("boundary composition is nonzero ({rows}x{cols} product has {nonzero} nonzero entries)")]
    CompositionNonzero {
        rows: usize,
        cols: usize,
        nonzero: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("structure constants fail antisymmetry at ({0}, {1})")]
    Antisymmetry(usize, usize),
    #[error("structure constants fail the Jacobi identity at ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("character does not vanish on [h, h]")]
    NonInvariantCharacter,
    #[error("unsupported group K: {0}")]
    UnsupportedK(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
