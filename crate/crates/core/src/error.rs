use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("i/o error: {0}")]
    Stream(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("unknown subject scheme `{0}` (expected scilit, scopus_asjc or wos_category)")]
    UnknownScheme(String),

    #[error("paper `{0}` is not in the citation graph")]
    UnknownPaper(String),

    #[error("paper `{0}` is not a member of the cohort")]
    NotInCohort(String),

    #[error("percentile {0} outside [0, 100)")]
    PercentileOutOfRange(f64),

    #[error("empty year window")]
    EmptyWindow,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("grid is not sorted in ascending order")]
    UnsortedGrid,

    #[error("undefined statistic: {0}")]
    Undefined(&'static str),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("corpus has {papers} papers, oracle limit is {limit}")]
    OracleOversize { papers: usize, limit: usize },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
