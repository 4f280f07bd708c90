//! K-means over the six-feature vectors and the labeled cluster profiles.

mod kmeans;
mod labels;

use serde::{Deserialize, Serialize};

pub use kmeans::{assign, inertia, kmeans, kmeans_plus_plus, lloyd_run, KMeansConfig, KMeansFit, LloydRun};
pub use labels::{bind, label_clusters, Binding, Direction, Label, LabelConfig};

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::features::FeatureVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub id: usize,
    pub name: String,
    pub color: String,
    /// Mean of the members' feature vectors.
    pub centroid: FeatureVector,
    pub member_ids: Vec<String>,
    pub fun_fact: String,
}

impl Cluster {
    pub fn size(&self) -> usize {
        self.member_ids.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringResult {
    pub clusters: Vec<Cluster>,
    pub inertia: f64,
    pub iterations_run: usize,
    pub seed_used: u64,
}

impl ClusteringResult {
    /// Unlabeled clusters in k-means output order. `ids[i]` names `fit`'s point `i`.
    pub fn from_fit(fit: &KMeansFit, ids: &[String]) -> Self {
        let mut members = vec![Vec::new(); fit.centroids.len()];
        for (id, &a) in ids.iter().zip(&fit.assignments) {
            members[a].push(id.clone());
        }
        let clusters = fit
            .centroids
            .iter()
            .zip(members)
            .enumerate()
            .map(|(id, (centroid, member_ids))| Cluster {
                id,
                name: format!("Cluster {id}"),
                color: String::new(),
                centroid: *centroid,
                member_ids,
                fun_fact: String::new(),
            })
            .collect();
        ClusteringResult {
            clusters,
            inertia: fit.inertia,
            iterations_run: fit.iterations_run,
            seed_used: fit.seed_used,
        }
    }
}

/// Average feature vector of a cluster's members, looked up in the catalog.
pub fn cluster_profile(cluster: &Cluster, catalog: &Catalog) -> Result<FeatureVector> {
    let vectors = cluster
        .member_ids
        .iter()
        .map(|id| {
            catalog
                .song(id)
                .map(|s| s.normalized)
                .ok_or_else(|| Error::UnknownSong(id.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    FeatureVector::mean(&vectors).ok_or(Error::EmptyCluster(cluster.id))
}
