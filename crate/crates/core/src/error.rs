use thiserror::Error;

/// Errors raised by the library.
///
/// Variants ending in `Violation` signal that a proved structural fact failed
/// to hold on a concrete instance. They indicate a bug or an input outside the
/// supported regime, never an ordinary user error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-square minor: {rows} rows vs {cols} columns")]
    NonSquareMinor { rows: usize, cols: usize },

    #[error("rank {rank} exceeds ground set size {n}")]
    RankExceedsGround { rank: usize, n: usize },

    #[error("ground set of size {0} exceeds the supported maximum of 16")]
    GroundTooLarge(usize),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("invalid valuated matroid: {0}")]
    InvalidValuated(String),

    #[error("not a presentation of any valuated matroid")]
    ConstantInfinity,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("t(M) < 0: input not in the guaranteed regime ({0})")]
    NegativeMultiplicity(i64),

    #[error("dapx reconstruction failed: {0}")]
    DapxFailed(String),

    #[error("not a presentation decomposition: {0}")]
    NotDecomposition(String),

    #[error("structural violation: {0}")]
    Violation(String),

    #[error("rank-increasing extension out of scope: * is a coloop")]
    ColoopExtension,

    #[error("different reference valuated matroids")]
    ReferenceMismatch,

    #[error("lab size cap exceeded: n = {n}, d = {d} (caps n <= 5, d <= 3)")]
    LabSizeCap { n: usize, d: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
