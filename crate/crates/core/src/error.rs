use thiserror::Error;

/// Errors raised by the exact lattice machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate form: determinant of the Gram matrix is zero")]
    DegenerateForm,

    #[error("lattice is not hyperbolic: signature is ({plus}, {minus}, {zero})")]
    NotHyperbolic {
        plus: usize,
        minus: usize,
        zero: usize,
    },

    #[error("cone reference vector has non-positive square {0}")]
    BadReference(String),

    #[error("matrix does not preserve the bilinear form")]
    NotIsometry,

    #[error("isometry swaps the two components of the positive cone")]
    NotInOPrime,

    #[error("isometries live on different lattices")]
    LatticeMismatch,

    #[error("generator {0} does not scale the given ray")]
    NotPolarized(usize),

    /// A mathematical guarantee was violated; indicates a bug or corrupt input upstream.
    #[error("malformed result: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
