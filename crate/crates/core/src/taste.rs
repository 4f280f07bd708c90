//! Survey answers to a cluster: average the chosen songs' vectors and pick the
//! cluster whose mean vector points in the most similar direction.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::features::FeatureVector;

pub const QUESTIONS: usize = 4;
pub const OPTIONS_PER_QUESTION: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyOption {
    pub song_id: String,
    pub title: String,
    pub artist: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub youtube_url: Option<String>,
    pub cluster_id: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyQuestion {
    pub prompt: String,
    pub options: Vec<SurveyOption>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyDefinition {
    pub questions: Vec<SurveyQuestion>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyResponse {
    pub chosen_song_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TasteResult {
    pub mean_vector: FeatureVector,
    /// Indexed by cluster id.
    pub similarities: Vec<f64>,
    pub assigned_cluster: usize,
}

impl SurveyDefinition {
    /// Checks the 4 x 5 shape and that every question offers one song from
    /// each cluster.
    pub fn validate_shape(&self) -> Result<()> {
        if self.questions.len() != QUESTIONS {
            return Err(Error::Survey(format!(
                "expected {QUESTIONS} questions, found {}",
                self.questions.len()
            )));
        }
        for (q, question) in self.questions.iter().enumerate() {
            if question.options.len() != OPTIONS_PER_QUESTION {
                return Err(Error::Survey(format!(
                    "question {} has {} options, expected {OPTIONS_PER_QUESTION}",
                    q + 1,
                    question.options.len()
                )));
            }
            let mut clusters: Vec<usize> = question.options.iter().map(|o| o.cluster_id).collect();
            clusters.sort_unstable();
            if clusters != (0..OPTIONS_PER_QUESTION).collect::<Vec<_>>() {
                return Err(Error::Survey(format!(
                    "question {} must offer exactly one song from each of clusters 0..{}",
                    q + 1,
                    OPTIONS_PER_QUESTION - 1
                )));
            }
        }
        Ok(())
    }

    /// Shape check plus: every option exists in the catalog and sits in the
    /// cluster it claims.
    pub fn validate(&self, catalog: &Catalog) -> Result<()> {
        self.validate_shape()?;
        for option in self.questions.iter().flat_map(|q| &q.options) {
            let song = catalog
                .song(&option.song_id)
                .ok_or_else(|| Error::UnknownSong(option.song_id.clone()))?;
            if song.cluster_id != Some(option.cluster_id) {
                return Err(Error::Survey(format!(
                    "`{}` is listed under cluster {} but the catalog places it in {:?}",
                    option.title, option.cluster_id, song.cluster_id
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let survey: SurveyDefinition = serde_json::from_str(text)?;
        survey.validate_shape()?;
        Ok(survey)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Default survey for a clustered catalog: question `q` offers the `q`-th
    /// longest-charting song of every cluster, options ordered by cluster id.
    pub fn suggest(catalog: &Catalog) -> Result<Self> {
        if !catalog.is_clustered() {
            return Err(Error::NotClustered);
        }
        if catalog.clusters.len() != OPTIONS_PER_QUESTION {
            return Err(Error::Survey(format!(
                "a survey needs {OPTIONS_PER_QUESTION} clusters, catalog has {}",
                catalog.clusters.len()
            )));
        }
        let mut columns = Vec::new();
        for cluster in &catalog.clusters {
            let mut members: Vec<_> = cluster.member_ids.iter().filter_map(|id| catalog.song(id)).collect();
            members.sort_by(|a, b| {
                b.weeks_on_chart
                    .cmp(&a.weeks_on_chart)
                    .then(a.peak_position.cmp(&b.peak_position))
                    .then(a.id.cmp(&b.id))
            });
            if members.len() < QUESTIONS {
                return Err(Error::Survey(format!(
                    "cluster {} has only {} songs",
                    cluster.id,
                    members.len()
                )));
            }
            columns.push((cluster.id, members));
        }
        let questions = (0..QUESTIONS)
            .map(|q| SurveyQuestion {
                prompt: format!("Question {} of {QUESTIONS}: pick your favorite song", q + 1),
                options: columns
                    .iter()
                    .map(|(cluster_id, members)| {
                        let s = members[q];
                        SurveyOption {
                            song_id: s.id.clone(),
                            title: s.title.clone(),
                            artist: s.artist.clone(),
                            youtube_url: s.youtube_url.clone(),
                            cluster_id: *cluster_id,
                        }
                    })
                    .collect(),
            })
            .collect();
        Ok(SurveyDefinition { questions })
    }
}

impl SurveyResponse {
    /// Checks arity and that answer `i` is an option of question `i`.
    pub fn validate(&self, survey: &SurveyDefinition) -> Result<()> {
        if self.chosen_song_ids.len() != survey.questions.len() {
            return Err(Error::Survey(format!(
                "expected {} song ids, got {}",
                survey.questions.len(),
                self.chosen_song_ids.len()
            )));
        }
        for (i, (id, question)) in self.chosen_song_ids.iter().zip(&survey.questions).enumerate() {
            if !question.options.iter().any(|o| &o.song_id == id) {
                return Err(Error::Survey(format!(
                    "song `{id}` is not an option of question {}",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

pub fn mean_vector<S: AsRef<str>>(song_ids: &[S], catalog: &Catalog) -> Result<FeatureVector> {
    let vectors = song_ids
        .iter()
        .map(|id| {
            let id = id.as_ref();
            catalog
                .song(id)
                .map(|s| s.normalized)
                .ok_or_else(|| Error::UnknownSong(id.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    FeatureVector::mean(&vectors).ok_or_else(|| Error::Survey("no songs chosen".into()))
}

/// `dot(a, b) / (|a| |b|)`, unclamped.
pub fn cosine_similarity(a: &FeatureVector, b: &FeatureVector) -> Result<f64> {
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(a.dot(b) / (na * nb))
}

/// Similarity to every cluster's mean vector; the argmax wins, ties to the
/// lowest cluster id regardless of the order `clusters` is given in.
pub fn assign_cluster(mean: &FeatureVector, clusters: &[Cluster]) -> Result<TasteResult> {
    if clusters.is_empty() {
        return Err(Error::Survey("no clusters to compare against".into()));
    }
    let k = clusters.len();
    let mut similarities = vec![f64::NAN; k];
    for c in clusters {
        if c.id >= k || !similarities[c.id].is_nan() {
            return Err(Error::UnknownCluster(c.id));
        }
        similarities[c.id] = cosine_similarity(mean, &c.centroid)?;
    }
    let mut assigned = 0;
    for (id, s) in similarities.iter().enumerate() {
        if *s > similarities[assigned] {
            assigned = id;
        }
    }
    Ok(TasteResult {
        mean_vector: *mean,
        similarities,
        assigned_cluster: assigned,
    })
}

/// Validates a survey response and runs mean -> cosine -> argmax against the
/// catalog's clusters.
pub fn evaluate(response: &SurveyResponse, survey: &SurveyDefinition, catalog: &Catalog) -> Result<TasteResult> {
    response.validate(survey)?;
    if !catalog.is_clustered() {
        return Err(Error::NotClustered);
    }
    let mean = mean_vector(&response.chosen_song_ids, catalog)?;
    assign_cluster(&mean, &catalog.clusters)
}
