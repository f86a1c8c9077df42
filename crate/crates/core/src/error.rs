use thiserror::Error;

/// Errors raised by the geometry, lattice and decision layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("singular matrix")]
    SingularMatrix,

    #[error("empty box: lower bound {lower} is not below upper bound {upper} on axis {axis}")]
    EmptyBox {
        axis: usize,
        lower: String,
        upper: String,
    },

    #[error("malformed rational {0:?}")]
    MalformedRational(String),

    #[error("systems have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("lattice system is empty")]
    EmptySystem,

    #[error("system has nonzero shifts; use the shifted tightness check")]
    ShiftedSystem,

    #[error("lattice {index} uses different matrices in the two systems; the shared-matrix check does not apply")]
    MatricesDiffer { index: usize },

    #[error("systems are not single-matrix; the single-matrix-pair check does not apply")]
    NotSingleMatrix,

    #[error("no criterion available: {0}")]
    NoCriterion(String),

    #[error("spectral cells {first} and {second} overlap")]
    OverlappingCells { first: usize, second: usize },

    #[error("exponential sum has an irrational phase; exact zero test refused")]
    IrrationalPhase,
}

pub type Result<T> = std::result::Result<T, Error>;
