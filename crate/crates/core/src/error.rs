use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Variants fall into three families that the command-line front end maps
/// onto distinct exit codes: usage (bad parameters or column names), input
/// (unreadable files, empty datasets) and data (samples that cannot be
/// estimated or binned).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("degenerate support: lo = {lo}, hi = {hi}")]
    DegenerateSupport { lo: f64, hi: f64 },

    #[error("degenerate density: no mass inside [{lo}, {hi}]")]
    DegenerateDensity { lo: f64, hi: f64 },

    #[error("degenerate context: every density value is zero")]
    DegenerateContext,

    #[error("degenerate binning: {distinct} distinct values for {classes} classes")]
    DegenerateBinning { distinct: usize, classes: usize },

    #[error("value {value} outside bounds [{lo}, {hi}]")]
    OutOfBounds { value: f64, lo: f64, hi: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("conditioning levels differ: {0}")]
    LevelMismatch(String),

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("zero usable records in {0}")]
    NoRecords(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("config: {0}")]
    Config(String),

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Process exit code: 1 usage, 2 input, 3 data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_)
            | Error::UnknownColumn(_)
            | Error::Config(_)
            | Error::Usage(_)
            | Error::LevelMismatch(_) => 1,
            Error::Io { .. } | Error::Csv(_) | Error::NoRecords(_) => 2,
            Error::InvalidSample(_)
            | Error::DegenerateSupport { .. }
            | Error::DegenerateDensity { .. }
            | Error::DegenerateContext
            | Error::DegenerateBinning { .. }
            | Error::OutOfBounds { .. }
            | Error::LengthMismatch { .. } => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
