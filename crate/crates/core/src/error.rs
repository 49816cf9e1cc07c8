use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("mode count mismatch: {left} vs {right}")]
    ModeMismatch { left: usize, right: usize },

    #[error("mode index {mode} out of range for {mode_count} modes")]
    ModeOutOfRange { mode: usize, mode_count: usize },

    #[error("the zero state cannot be normalized")]
    ZeroState,

    #[error("state is not normalized (squared norm {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("transform is not unitary within tolerance")]
    NonUnitary,

    #[error("vacuum projection left no amplitude (success probability 0)")]
    EmptyProjection,

    #[error("phase grid is empty")]
    EmptyGrid,

    #[error("series is identically zero; visibility undefined")]
    ZeroSeries,

    #[error("degenerate splitter: input modes {0} and {0} coincide")]
    DegenerateSplitter(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
