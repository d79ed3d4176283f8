use thiserror::Error;

/// Errors raised by the engine and its combinatorial helpers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlrError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{kind} index {index} out of range 1..={max}")]
    IndexOutOfRange { kind: &'static str, index: usize, max: usize },

    #[error("word {word} does not have content {alpha}")]
    ContentMismatch { word: String, alpha: String },

    #[error("elements live in different algebras: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },

    #[error("height {0} exceeds the supported maximum of {max} strands", max = crate::MAX_STRANDS)]
    TooManyStrands(usize),

    #[error("not a reduced word of the expected permutation: {0:?}")]
    NotReduced(Vec<usize>),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),
}

pub type Result<T, E = KlrError> = std::result::Result<T, E>;
