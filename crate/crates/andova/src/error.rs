use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid interval: lo = {lo} must be strictly less than hi = {hi}")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("maximum depth {depth} is too large: {reason}")]
    DepthTooLarge { depth: usize, reason: String },

    #[error(
        "observation {index} of group '{group}' replicate '{replicate}' \
         (value {value}) lies outside the sample space [{lo}, {hi}]"
    )]
    ObservationOutOfRange {
        group: String,
        replicate: String,
        index: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("need at least two groups, got {0}")]
    TooFewGroups(usize),

    #[error("group '{0}' has no replicates")]
    EmptyGroup(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "mode search did not converge after {iterations} iterations \
         (last iterate {last_theta}, gradient {last_gradient})"
    )]
    NonConvergence {
        iterations: usize,
        last_theta: f64,
        last_gradient: f64,
    },

    #[error("numerical failure at window {window}: {source}")]
    WindowFailure {
        window: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("target {target} is unattainable; attainable range is [{lo}, {hi}]")]
    TargetUnattainable { target: f64, lo: f64, hi: f64 },

    #[error("malformed input record {record}: {reason}")]
    MalformedRecord { record: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Attach a window identity to a numerical failure bubbling out of a
    /// per-window computation.
    pub fn at_window(self, window: usize) -> Error {
        Error::WindowFailure {
            window,
            source: Box::new(self),
        }
    }

    /// True for errors caused by bad user input rather than numerical trouble.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::NonConvergence { .. } | Error::WindowFailure { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
