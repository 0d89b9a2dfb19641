use thiserror::Error;

/// Errors raised by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed root orders: d={left} and d={right}")]
    MixedRootOrder { left: u32, right: u32 },
    #[error("variant violation: {0}")]
    VariantViolation(String),
    #[error("c-tilde must sum to zero, got {0}")]
    NormalizationViolation(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("element is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("decomposition scheme not applicable: {0}")]
    SchemeDomain(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("weight data too short: need order {need}, have {have}")]
    InsufficientOrder { need: usize, have: usize },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("degree mismatch at (i={i}, j={j}): expected {expected}, got {got}")]
    DegreeMismatch { i: usize, j: usize, expected: String, got: usize },
    #[error("series mismatch at (i={i}, j={j}, r={r})")]
    SeriesMismatch { i: usize, j: usize, r: i64 },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("not stabilized below degree cap {0}")]
    NotStabilized(usize),
    #[error("range error: {0}")]
    RangeError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
