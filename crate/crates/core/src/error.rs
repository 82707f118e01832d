use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("kappa mismatch between operands")]
    KappaMismatch,
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("level {level} differs from kappa - m = {expected}")]
    LevelMismatch { level: String, expected: String },
    #[error("non-generic parameters: mu_{a} - mu_{b} = {diff} lies in Z + kappa Z")]
    NonGeneric { a: usize, b: usize, diff: String },
    #[error("vanishing denominator in {0}")]
    VanishingDenominator(String),
    #[error("image leaves the basis box at key {0}")]
    BoxOverflow(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("reduction exceeded depth bound {0}")]
    DepthExceeded(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
