use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("invalid column mapping: {0}")]
    Mapping(#[from] toml::de::Error),

    #[error("{dataset} csv is missing required column `{column}`")]
    MissingColumn { dataset: &'static str, column: String },

    #[error("{0} csv is empty")]
    EmptyInput(&'static str),

    #[error("every song has the same {0}; cannot min-max normalize")]
    DegenerateCorpus(&'static str),

    #[error("need at least {needed} songs to normalize, got {got}")]
    TooFewSongs { needed: usize, got: usize },

    #[error("k-means needs at least k = {k} points, got {points}")]
    TooFewPoints { points: usize, k: usize },

    #[error("point {0} has a non-finite component")]
    NonFinite(usize),

    #[error("invalid k-means configuration: {0}")]
    KMeansConfig(String),

    #[error("label config has {got} labels but there are {expected} clusters")]
    LabelCount { expected: usize, got: usize },

    #[error("invalid label config: {0}")]
    LabelConfig(String),

    #[error("cluster {0} has no members")]
    EmptyCluster(usize),

    #[error("unknown cluster id {0}")]
    UnknownCluster(usize),

    #[error("unknown song id `{0}`")]
    UnknownSong(String),

    #[error("cosine similarity is undefined for a zero vector")]
    ZeroVector,

    #[error("unknown feature `{0}` (expected one of acousticness, danceability, energy, tempo, valence)")]
    UnknownFeature(String),

    #[error("unknown sort column `{0}`")]
    UnknownSortColumn(String),

    #[error("invalid survey: {0}")]
    Survey(String),

    #[error("catalog has no clustering; run the cluster step first")]
    NotClustered,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
