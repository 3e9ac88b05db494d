//! Error types shared across the crate.

/// Errors produced by any module in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Phase outside the principal branch of the tuning formula.
    #[error("phase {phi} rad is outside the principal branch |phi| < pi")]
    OutOfBranch { phi: f64 },

    /// Requested splitting cannot be reached within the principal branch.
    #[error(
        "target splitting {target_rad_s} rad/s needs phase {phi_needed} rad, \
         outside the principal branch |phi| < pi"
    )]
    UnreachableSplitting { target_rad_s: f64, phi_needed: f64 },

    /// A geometric feature spans too few grid cells to be resolved.
    #[error(
        "feature `{feature}` ({size_m} m) spans {cells} cells at this resolution, \
         need at least {min_cells}"
    )]
    UnderResolved {
        feature: String,
        size_m: f64,
        cells: usize,
        min_cells: usize,
    },

    /// The iterative field solver did not reach the requested residual.
    #[error(
        "field solve stopped at relative residual {residual:e} after {iterations} \
         iterations (target {tol:e})"
    )]
    SolverFailure {
        residual: f64,
        iterations: usize,
        tol: f64,
        /// Residual samples over the run, for diagnostics.
        history: Vec<f64>,
    },

    /// Adaptive integrator could not take a step at the requested tolerance.
    #[error("integrator step size underflow at t = {t} s (h = {h} s, tolerance {tol})")]
    StepSizeUnderflow { t: f64, h: f64, tol: f64 },

    #[error("config error: {0}")]
    Config(String),

    /// A pipeline stage failed; wraps the stage name around the cause.
    #[error("pipeline stage `{stage}` failed: {source}")]
    Pipeline {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Wrap an error with the pipeline stage it occurred in.
    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Pipeline {
            stage,
            source: Box::new(self),
        }
    }

    /// Process exit code this error maps to: 2 for configuration and argument
    /// problems, 3 for solver failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_)
            | Error::OutOfBranch { .. }
            | Error::UnreachableSplitting { .. }
            | Error::UnderResolved { .. }
            | Error::Config(_) => 2,
            Error::SolverFailure { .. } | Error::StepSizeUnderflow { .. } => 3,
            Error::Pipeline { source, .. } => source.exit_code(),
            Error::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
