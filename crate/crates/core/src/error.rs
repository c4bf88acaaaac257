use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("kernel matrix is not positive definite even with jitter {jitter:e} (degenerate training data?)")]
    DegenerateKernel { jitter: f64 },

    #[error("unknown task `{0}`")]
    UnknownTask(String),

    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),

    #[error("g_star {g_star} is below the observed value {observed}; recalibrate the task")]
    GStarTooLow { g_star: f64, observed: f64 },

    #[error("iteration {iteration}: {source}")]
    Iteration {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{strategy} run {run_index} (seed {seed}) failed: {source}")]
    RunFailed {
        strategy: String,
        run_index: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("malformed results file: {0}")]
    MalformedResults(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
