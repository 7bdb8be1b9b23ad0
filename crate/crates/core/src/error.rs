use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("block size {block_size} does not divide signal length {total_len}")]
    IndivisibleLength { total_len: usize, block_size: usize },

    #[error("{what} must be positive")]
    NonPositive { what: &'static str },

    #[error("length mismatch: {what} has length {got}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("block {index} is identically zero")]
    ZeroBlock { index: usize },

    #[error("column {index} is identically zero")]
    ZeroColumn { index: usize },

    #[error("coherence needs at least two {what}, got {got}")]
    TooFewBlocks { what: &'static str, got: usize },

    #[error("matrix does not satisfy {normalization} normalization: {detail}")]
    NormalizationViolated {
        normalization: &'static str,
        detail: String,
    },

    #[error("block {index} is rank deficient and cannot be orthonormalized")]
    RankDeficientBlock { index: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid bound: {0}")]
    InvalidBound(String),

    #[error("solver diverged at iteration {iteration}: non-finite iterate")]
    Divergence { iteration: usize },

    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),

    #[error("all {trials} trials failed at axis point {point}")]
    AllTrialsFailed { point: String, trials: usize },
}
