use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants are grouped so the command-line runner can map them onto
/// its exit codes: configuration problems, margin violations, resource caps.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group specification: {0}")]
    InvalidGroup(String),

    #[error("margin violation: {0}")]
    Margin(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown event `{0}`")]
    UnknownEvent(String),

    #[error("insufficient points for fit: need at least {needed} positive estimates, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("threshold {threshold} unreachable for radii in [1, {n}]")]
    Unreachable { threshold: f64, n: u32 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
