use thiserror::Error;

pub type Result<T> = std::result::Result<T, ControlError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ControlError {
    #[error("matrix is not unitary (max |M^dagger M - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("target amplitude {target} exceeds staged amplitude {available}")]
    BudgetExceeded { target: f64, available: f64 },

    #[error("no witness found within depth {max_depth}")]
    NotFound { max_depth: usize },

    #[error("epsilon {0} outside (0, 1/3)")]
    EpsilonOutOfRange(f64),

    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("swap range needs l >= 1, got {0}")]
    InvalidSwapRange(i64),

    #[error("op {position} is a pair block that is not a permutation")]
    NotAPermutation { position: usize },

    #[error("format error: {0}")]
    Format(String),
}

impl ControlError {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            ControlError::NotUnitary { .. } => "NotUnitary",
            ControlError::NotNormalized { .. } => "NotNormalized",
            ControlError::BudgetExceeded { .. } => "BudgetExceeded",
            ControlError::NotFound { .. } => "NotFound",
            ControlError::EpsilonOutOfRange(_) => "EpsilonOutOfRange",
            ControlError::DegenerateInput(_) => "DegenerateInput",
            ControlError::InvalidSwapRange(_) => "InvalidSwapRange",
            ControlError::NotAPermutation { .. } => "NotAPermutation",
            ControlError::Format(_) => "ParseError",
        }
    }
}

impl From<serde_json::Error> for ControlError {
    fn from(e: serde_json::Error) -> Self {
        ControlError::Format(e.to_string())
    }
}
