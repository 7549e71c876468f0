use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("variance diverges for q = {q} (requires q < 5/3)")]
    VarianceDivergence { q: f64 },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("branch {branch} has {got} samples, need at least {needed}")]
    InsufficientBranchSamples {
        branch: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("singular information matrix (det = {det:e})")]
    Singular { det: f64 },

    #[error("empty sample")]
    EmptySample,

    #[error("need at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("optimization failed: {0}")]
    OptimizationFailure(String),

    #[error("{path}:{line}: parse error: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{path}:{line}: invalid row: {msg}")]
    Validation {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("CPI does not cover {0}")]
    CpiCoverage(String),

    #[error("region {start}..={end} selects no rows")]
    EmptySlice { start: String, end: String },

    #[error("degenerate series: {0}")]
    DegenerateSeries(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Data,
    Numerical,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Config => 2,
            ErrorClass::Data => 3,
            ErrorClass::Numerical => 4,
        }
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_) => ErrorClass::Config,
            Error::Parse { .. }
            | Error::Validation { .. }
            | Error::InvalidSeries(_)
            | Error::CpiCoverage(_)
            | Error::EmptySlice { .. }
            | Error::DegenerateSeries(_)
            | Error::Io { .. }
            | Error::Json(_)
            | Error::EmptySample
            | Error::InsufficientSamples { .. }
            | Error::InsufficientBranchSamples { .. }
            | Error::InsufficientPoints { .. }
            | Error::DegenerateSample(_) => ErrorClass::Data,
            Error::Domain(_)
            | Error::VarianceDivergence { .. }
            | Error::NoRoot(_)
            | Error::Singular { .. }
            | Error::OptimizationFailure(_) => ErrorClass::Numerical,
            Error::Stage { source, .. } => source.class(),
        }
    }

    pub(crate) fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }
}
