use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// [`Error::is_usage`] separates caller mistakes (bad flags, malformed input
/// files) from numerical or feasibility failures; the CLI maps them to exit
/// codes 1 and 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("moment diverges: {0}")]
    MomentDiverges(String),
    #[error("no critical tilt in radius of convergence (radius {radius}, mean at boundary {boundary_mean})")]
    NoCriticalTilt { radius: f64, boundary_mean: f64 },
    #[error("radius zero: weights grow super-exponentially")]
    RadiusZero,
    #[error("size n={n} is infeasible: {reason}")]
    Infeasible { n: usize, reason: String },
    #[error("retry cap of {cap} attempts exceeded while conditioning on n={n}")]
    RetryCapExceeded { n: usize, cap: u64 },
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("enumeration refused: n={n} exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: String, reason: String },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid_arg(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name: name.to_string(),
            reason: reason.into(),
        }
    }

    /// True for malformed input or arguments, false for numerical and
    /// feasibility failures.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::InvalidArgument { .. }
                | Error::Io(_)
                | Error::Json(_)
                | Error::InvalidTree(_)
                | Error::InvalidWeights(_)
                | Error::TooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
