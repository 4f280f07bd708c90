//! Billboard chart history joined with per-track audio features, clustered
//! into five taste circles.
//!
//! The pipeline runs [`ingest`] (parse, link, dedup, normalize), then
//! [`cluster`] (k-means++ / Lloyd, label binding), producing an immutable
//! [`Catalog`]. [`analytics`] and [`taste`] are pure queries over it.
//!
//! ```no_run
//! use music_circles::{fixtures, Catalog, KMeansConfig, LabelConfig};
//!
//! let catalog = Catalog::build(&fixtures::inputs(), &KMeansConfig::default(), &LabelConfig::default())?;
//! println!("{} songs in {} clusters", catalog.len(), catalog.clusters.len());
//! # Ok::<(), music_circles::Error>(())
//! ```

pub mod analytics;
pub mod catalog;
pub mod cluster;
mod error;
pub mod features;
pub mod fixtures;
pub mod ingest;
pub mod taste;

#[cfg(test)]
mod testutil;

pub use catalog::{BuildInputs, Catalog};
pub use cluster::{Cluster, ClusteringResult, KMeansConfig, LabelConfig};
pub use error::{Error, Result};
pub use features::{FeatureKey, FeatureVector};
pub use ingest::{ColumnMapping, PipelineReport, SongRecord};
pub use taste::{SurveyDefinition, SurveyResponse, TasteResult};
