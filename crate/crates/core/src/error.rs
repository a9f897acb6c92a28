use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated an operation's domain (non-finite value, bad range).
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix/vector shapes do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A configuration field failed validation.
    #[error("config error: {0}")]
    Config(String),

    /// Weight construction failed (e.g. an all-zero recurrent draw).
    #[error("construction error: {0}")]
    Construction(String),

    /// Spectral-radius estimation hit the iteration cap.
    #[error("spectral radius did not converge within the iteration cap (best estimate {best_estimate:.6e})")]
    Convergence { best_estimate: f64 },

    /// Degenerate data (constant target, empty alphabet, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A linear solve failed even after jitter escalation.
    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by a bad configuration rather than a numeric
    /// failure at runtime; the CLI maps these to exit code 2.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_) | Error::Json(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
