use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("antenna array must have matching gains/positions of length >= 1 (got {gains} gains, {positions} positions)")]
    BadArrayShape { gains: usize, positions: usize },

    #[error("perturbation std deviations must be finite and non-negative (sigma_g={sigma_g}, sigma_p={sigma_p})")]
    BadPerturbation { sigma_g: f64, sigma_p: f64 },

    #[error("dictionary must contain at least one atom")]
    EmptyDictionary,

    #[error("dictionary shape mismatch: {detail}")]
    DictionaryShape { detail: String },

    #[error("operation requires a unit-norm (normalized) dictionary")]
    UnnormalizedDictionary,

    #[error("vector length {got} does not match expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("channel vector has zero norm; noise variance is undefined")]
    ZeroChannel,

    #[error("input observation has zero norm")]
    ZeroInput,

    #[error("multipath channel requires at least one path")]
    NoPaths,

    #[error("batch size must be >= 1")]
    EmptyBatch,

    #[error("iteration count must be >= 1")]
    ZeroIterations,

    #[error("network depth must be >= 1")]
    ZeroDepth,

    #[error("forward trace is stale: weights changed since it was recorded")]
    StaleTrace,

    #[error("gradient refers to atom {index} outside the {n_atoms}-atom weight matrix")]
    GradientOutOfRange { index: usize, n_atoms: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("checkpoint is corrupt or has an unsupported layout: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
