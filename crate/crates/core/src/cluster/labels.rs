//! Binding display labels (name, color, fun fact) to clusters.
//!
//! K-means returns clusters in arbitrary order, so labels are matched by
//! centroid signature: each label names a marker feature and a direction, and
//! the (label, cluster) pair with the strongest standardized marker value is
//! bound first. After binding, cluster ids follow label order, so id 0 is the
//! first label in the config.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Cluster, ClusteringResult};
use crate::error::{Error, Result};
use crate::features::FeatureVector;

const DEFAULT_LABELS: &str = include_str!("../../config/labels.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    High,
    Low,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Label {
    pub name: String,
    pub color: String,
    /// One of the six clustering feature names.
    pub marker: String,
    #[serde(default = "high")]
    pub direction: Direction,
    #[serde(default)]
    pub fun_fact: String,
}

fn high() -> Direction {
    Direction::High
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Binding {
    /// Greedy best standardized marker score.
    Signature,
    /// Clusters ranked by one centroid component (descending) take the labels
    /// in config order.
    CentroidRank { feature: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelConfig {
    #[serde(default = "signature")]
    pub binding: Binding,
    pub labels: Vec<Label>,
}

fn signature() -> Binding {
    Binding::Signature
}

impl Default for LabelConfig {
    fn default() -> Self {
        serde_json::from_str(DEFAULT_LABELS).expect("bundled label config parses")
    }
}

impl LabelConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: LabelConfig = serde_json::from_str(text)?;
        config.check()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    fn check(&self) -> Result<()> {
        for label in &self.labels {
            feature_index(&label.marker)?;
        }
        if let Binding::CentroidRank { feature } = &self.binding {
            feature_index(feature)?;
        }
        Ok(())
    }
}

fn feature_index(name: &str) -> Result<usize> {
    FeatureVector::NAMES
        .iter()
        .position(|n| n.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| Error::LabelConfig(format!("unknown marker feature `{name}`")))
}

/// Standardized marker score of every label against every cluster:
/// `scores[label][cluster]`. A feature with no spread across centroids scores 0.
fn signature_scores(centroids: &[FeatureVector], labels: &[Label]) -> Result<Vec<Vec<f64>>> {
    let k = centroids.len() as f64;
    labels
        .iter()
        .map(|label| {
            let f = feature_index(&label.marker)?;
            let values: Vec<f64> = centroids.iter().map(|c| c.0[f]).collect();
            let mean = values.iter().sum::<f64>() / k;
            let std = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / k).sqrt();
            let sign = match label.direction {
                Direction::High => 1.0,
                Direction::Low => -1.0,
            };
            Ok(values
                .iter()
                .map(|v| if std > 0.0 { sign * (v - mean) / std } else { 0.0 })
                .collect())
        })
        .collect()
}

/// Returns `binding[label] = index into centroids`.
pub fn bind(centroids: &[FeatureVector], config: &LabelConfig) -> Result<Vec<usize>> {
    let k = centroids.len();
    if config.labels.len() != k {
        return Err(Error::LabelCount {
            expected: k,
            got: config.labels.len(),
        });
    }
    config.check()?;
    match &config.binding {
        Binding::Signature => {
            let scores = signature_scores(centroids, &config.labels)?;
            let mut pairs: Vec<(usize, usize)> = (0..k).flat_map(|l| (0..k).map(move |c| (l, c))).collect();
            // Highest score first; ties by label then cluster index.
            pairs.sort_by(|&(l1, c1), &(l2, c2)| {
                scores[l2][c2]
                    .total_cmp(&scores[l1][c1])
                    .then(l1.cmp(&l2))
                    .then(c1.cmp(&c2))
            });
            let mut binding = vec![usize::MAX; k];
            let mut taken = vec![false; k];
            for (l, c) in pairs {
                if binding[l] == usize::MAX && !taken[c] {
                    binding[l] = c;
                    taken[c] = true;
                }
            }
            Ok(binding)
        }
        Binding::CentroidRank { feature } => {
            let f = feature_index(feature)?;
            let mut order: Vec<usize> = (0..k).collect();
            order.sort_by(|&a, &b| centroids[b].0[f].total_cmp(&centroids[a].0[f]).then(a.cmp(&b)));
            Ok(order)
        }
    }
}

/// Attaches labels and renumbers clusters so that `cluster.id` is the
/// position of its label in `config`.
pub fn label_clusters(result: &ClusteringResult, config: &LabelConfig) -> Result<Vec<Cluster>> {
    let centroids: Vec<FeatureVector> = result.clusters.iter().map(|c| c.centroid).collect();
    let binding = bind(&centroids, config)?;
    Ok(binding
        .iter()
        .zip(&config.labels)
        .enumerate()
        .map(|(id, (&source, label))| {
            let c = &result.clusters[source];
            Cluster {
                id,
                name: label.name.clone(),
                color: label.color.clone(),
                centroid: c.centroid,
                member_ids: c.member_ids.clone(),
                fun_fact: label.fun_fact.clone(),
            }
        })
        .collect())
}
