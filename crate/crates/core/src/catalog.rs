//! The immutable post-pipeline dataset every query reads.

use std::collections::HashMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cluster::{kmeans, label_clusters, Cluster, ClusteringResult, KMeansConfig, LabelConfig};
use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::ingest::{self, normalize_key, ColumnMapping, NormalizationRanges, PipelineReport, SongRecord};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringSummary {
    pub config: KMeansConfig,
    pub inertia: f64,
    pub iterations_run: usize,
    pub seed_used: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Catalog {
    pub schema_version: u32,
    /// Sorted by case-folded title, then artist, then id.
    pub songs: Vec<SongRecord>,
    pub normalization: NormalizationRanges,
    #[serde(default)]
    pub clustering: Option<ClusteringSummary>,
    #[serde(default)]
    pub clusters: Vec<Cluster>,
    /// Ids of songs whose best weekly rank is 1, in song order.
    pub number_ones: Vec<String>,
    /// Ids of songs with peak <= 10 and more than 50 weeks, in song order.
    pub mega_hits: Vec<String>,
    pub report: PipelineReport,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl PartialEq for Catalog {
    fn eq(&self, other: &Self) -> bool {
        self.schema_version == other.schema_version
            && self.songs == other.songs
            && self.normalization == other.normalization
            && self.clustering == other.clustering
            && self.clusters == other.clusters
            && self.number_ones == other.number_ones
            && self.mega_hits == other.mega_hits
            && self.report == other.report
    }
}

pub fn is_number_one(song: &SongRecord) -> bool {
    song.best_weekly_rank == 1
}

pub fn is_mega_hit(song: &SongRecord) -> bool {
    song.peak_position <= 10 && song.weeks_on_chart > 50
}

/// Source files and column mapping for a build.
#[derive(Debug, Clone, PartialEq)]
pub struct BuildInputs {
    pub billboard: PathBuf,
    pub spotify: PathBuf,
    pub mapping: ColumnMapping,
}

impl Catalog {
    /// Unclustered catalog over already normalized songs.
    pub fn from_songs(mut songs: Vec<SongRecord>, normalization: NormalizationRanges, report: PipelineReport) -> Self {
        songs.sort_by_cached_key(|s| (normalize_key(&s.title), normalize_key(&s.artist), s.id.clone()));
        let mut catalog = Catalog {
            schema_version: SCHEMA_VERSION,
            songs,
            normalization,
            clustering: None,
            clusters: Vec::new(),
            number_ones: Vec::new(),
            mega_hits: Vec::new(),
            report,
            index: HashMap::new(),
        };
        catalog.reindex();
        catalog
    }

    /// Ingest only, no clustering.
    pub fn ingest(inputs: &BuildInputs) -> Result<Self> {
        let open = |p: &Path| File::open(p).map_err(|e| Error::io(p, e));
        let out = ingest::run(open(&inputs.billboard)?, open(&inputs.spotify)?, &inputs.mapping)?;
        Ok(Catalog::from_songs(out.songs, out.ranges, out.report))
    }

    /// Full pipeline: ingest, normalize, k-means, label.
    pub fn build(inputs: &BuildInputs, kmeans_config: &KMeansConfig, labels: &LabelConfig) -> Result<Self> {
        let mut catalog = Catalog::ingest(inputs)?;
        catalog.apply_clustering(kmeans_config, labels)?;
        Ok(catalog)
    }

    /// (Re)clusters the songs and stamps cluster ids onto them.
    pub fn apply_clustering(&mut self, config: &KMeansConfig, labels: &LabelConfig) -> Result<()> {
        if labels.labels.len() != config.k {
            return Err(Error::LabelCount {
                expected: config.k,
                got: labels.labels.len(),
            });
        }
        let points: Vec<FeatureVector> = self.songs.iter().map(|s| s.normalized).collect();
        let ids: Vec<String> = self.songs.iter().map(|s| s.id.clone()).collect();
        let fit = kmeans(&points, config)?;
        let result = ClusteringResult::from_fit(&fit, &ids);
        let clusters = label_clusters(&result, labels)?;

        for song in &mut self.songs {
            song.cluster_id = None;
        }
        for cluster in &clusters {
            for id in &cluster.member_ids {
                let i = self.index[id];
                self.songs[i].cluster_id = Some(cluster.id);
            }
        }
        self.clusters = clusters;
        self.clustering = Some(ClusteringSummary {
            config: *config,
            inertia: result.inertia,
            iterations_run: result.iterations_run,
            seed_used: result.seed_used,
        });
        Ok(())
    }

    fn reindex(&mut self) {
        self.index = self.songs.iter().enumerate().map(|(i, s)| (s.id.clone(), i)).collect();
        self.number_ones = self
            .songs
            .iter()
            .filter(|s| is_number_one(s))
            .map(|s| s.id.clone())
            .collect();
        self.mega_hits = self
            .songs
            .iter()
            .filter(|s| is_mega_hit(s))
            .map(|s| s.id.clone())
            .collect();
    }

    pub fn song(&self, id: &str) -> Option<&SongRecord> {
        self.index.get(id).map(|&i| &self.songs[i])
    }

    pub fn cluster(&self, id: usize) -> Option<&Cluster> {
        self.clusters.iter().find(|c| c.id == id)
    }

    pub fn is_clustered(&self) -> bool {
        self.clustering.is_some()
    }

    pub fn len(&self) -> usize {
        self.songs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.songs.is_empty()
    }

    /// Pretty JSON with a trailing newline. Field order is fixed by the type
    /// definitions, so equal catalogs serialize to equal bytes.
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut catalog: Catalog = serde_json::from_str(text)?;
        if catalog.schema_version != SCHEMA_VERSION {
            return Err(Error::Json(serde::de::Error::custom(format!(
                "unsupported catalog schema_version {} (expected {SCHEMA_VERSION})",
                catalog.schema_version
            ))));
        }
        catalog.reindex();
        Ok(catalog)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
