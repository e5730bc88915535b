use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("distribution is empty")]
    EmptyInput,
    #[error("probability at index {index} is not positive: {value}")]
    NonPositiveProbability { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, not 1")]
    SumNotOne { sum: f64 },
    #[error("weights must be positive, finite and nonincreasing")]
    InvalidWeights,
    #[error("length vector violates the Kraft inequality")]
    KraftViolation,
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("exponential base must be positive and different from 1, got {0}")]
    InvalidBase(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid epsilon {epsilon}: legal range is {range}")]
    InvalidEpsilon { epsilon: f64, range: String },
    #[error("operation requires at least two symbols")]
    DegenerateInput,
    #[error("n = {n} exceeds the limit of {max} for exhaustive search")]
    TooLarge { n: usize, max: usize },
    #[error("invalid codebook: {0}")]
    InvalidCodebook(String),
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("corrupt payload: {0}")]
    CorruptPayload(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
