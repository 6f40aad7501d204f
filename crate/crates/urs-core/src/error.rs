use thiserror::Error;

#[derive(Debug, Error)]
pub enum UrsError {
    #[error("zero divisor")]
    ZeroDivisor,

    #[error("{0}")]
    Specialize(String),

    #[error("rank must satisfy n >= 2, got {0}")]
    RankTooSmall(usize),

    #[error("elements belong to different algebras")]
    MixedHandles,

    #[error("generator {0} is not valid for this algebra")]
    BadGenerator(String),

    #[error("height {got} exceeds the configured cutoff {cutoff}")]
    CutoffExceeded { got: usize, cutoff: usize },

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, UrsError>;
