use thiserror::Error;

/// Errors raised by the library. The CLI maps `Usage`/`Config` to exit code 2
/// and everything else to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse angle {0:?}: expected \"p/q\"")]
    AngleParse(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("ray broken at potential t = {t:e}: {reason}")]
    RayBroken { t: f64, reason: String },

    #[error("ray in bubbles does not exist: {0}")]
    RayNonexistent(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Image(#[from] image::ImageError),
}

pub type Result<T> = std::result::Result<T, Error>;
