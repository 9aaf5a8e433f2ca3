use thiserror::Error;

/// Errors raised by the library.
///
/// `Infeasible` is reserved for linear systems or constructions that the
/// underlying theory guarantees to be solvable; hitting it means the input
/// violated a precondition or there is a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("algebra is not semisimple (radical has dimension {radical_dim})")]
    NotSemisimple { radical_dim: usize },
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("invalid structure constants: {0}")]
    InvalidAlgebra(String),
    #[error("subspace is not a unital subalgebra: {0}")]
    NotUnital(String),
    #[error("center mismatch: {0}")]
    CenterMismatch(String),
    #[error("dimension {dim} over the base field is not a perfect square")]
    NotSquareDimension { dim: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("sl2 relations violated: {0}")]
    Sl2Relations(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("divisibility failure: {0}")]
    Divisibility(String),
    #[error("central splitting failed after {attempts} random attempts")]
    SplittingFailed { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
