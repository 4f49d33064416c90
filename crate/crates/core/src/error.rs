use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("reward must be finite, got {0}")]
    NonFiniteReward(f64),

    #[error("empirical distribution has no samples")]
    EmptyDistribution,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("preference between arms {i} and {j} is not finite (reward gaps too large for beta = {beta})")]
    NonFinitePreference { i: usize, j: usize, beta: f64 },

    #[error("arm index {index} out of range for {n_arms} arms")]
    ArmOutOfRange { index: usize, n_arms: usize },

    #[error("at least {required} arms required, got {got}")]
    TooFewArms { required: usize, got: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
