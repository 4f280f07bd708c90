//! Response bodies. Every endpoint returns one of these; `docs/schemas/api.schema.json`
//! describes the same shapes.

use music_circles::analytics::{raw_value, MegaHit};
use music_circles::{Catalog, Cluster, FeatureKey, FeatureVector, SongRecord, TasteResult};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct FeatureInfo {
    pub key: FeatureKey,
    pub name: &'static str,
    pub color: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeatureList {
    pub features: Vec<FeatureInfo>,
}

impl FeatureList {
    pub fn all() -> Self {
        FeatureList {
            features: FeatureKey::ALL
                .into_iter()
                .map(|key| FeatureInfo {
                    key,
                    name: key.display_name(),
                    color: key.color(),
                    unit: key.unit(),
                })
                .collect(),
        }
    }
}

/// Raw display values of the five discover-screen features.
#[derive(Debug, Clone, Serialize)]
pub struct DisplayFeatures {
    pub acousticness: f64,
    pub danceability: f64,
    pub energy: f64,
    pub tempo: f64,
    pub valence: f64,
}

impl DisplayFeatures {
    pub fn of(song: &SongRecord) -> Self {
        DisplayFeatures {
            acousticness: raw_value(song, FeatureKey::Acousticness),
            danceability: raw_value(song, FeatureKey::Danceability),
            energy: raw_value(song, FeatureKey::Energy),
            tempo: raw_value(song, FeatureKey::Tempo),
            valence: raw_value(song, FeatureKey::Valence),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SongRow {
    pub id: String,
    pub title: String,
    pub artist: String,
    pub release_year: i32,
    pub album_image_url: Option<String>,
    pub youtube_url: Option<String>,
    pub peak_position: u8,
    pub weeks_on_chart: u32,
    pub best_weekly_rank: u8,
    pub cluster_id: Option<usize>,
    pub features: DisplayFeatures,
}

impl SongRow {
    pub fn of(song: &SongRecord) -> Self {
        SongRow {
            id: song.id.clone(),
            title: song.title.clone(),
            artist: song.artist.clone(),
            release_year: song.release_year,
            album_image_url: song.album_image_url.clone(),
            youtube_url: song.youtube_url.clone(),
            peak_position: song.peak_position,
            weeks_on_chart: song.weeks_on_chart,
            best_weekly_rank: song.best_weekly_rank,
            cluster_id: song.cluster_id,
            features: DisplayFeatures::of(song),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NumberOnes {
    pub sort: Option<FeatureKey>,
    pub order: &'static str,
    pub count: usize,
    pub songs: Vec<SongRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TopRow {
    pub rank: usize,
    pub id: String,
    pub title: String,
    pub artist: String,
    pub album_image_url: Option<String>,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TopSongs {
    pub feature: FeatureKey,
    pub n: usize,
    pub rows: Vec<TopRow>,
}

impl TopSongs {
    pub fn of(feature: FeatureKey, n: usize, songs: &[&SongRecord]) -> Self {
        TopSongs {
            feature,
            n,
            rows: songs
                .iter()
                .enumerate()
                .map(|(i, s)| TopRow {
                    rank: i + 1,
                    id: s.id.clone(),
                    title: s.title.clone(),
                    artist: s.artist.clone(),
                    album_image_url: s.album_image_url.clone(),
                    value: raw_value(s, feature),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClusterSummary {
    pub id: usize,
    pub name: String,
    pub color: String,
    pub size: usize,
    pub centroid: FeatureVector,
    pub fun_fact: String,
}

impl ClusterSummary {
    pub fn of(c: &Cluster) -> Self {
        ClusterSummary {
            id: c.id,
            name: c.name.clone(),
            color: c.color.clone(),
            size: c.size(),
            centroid: c.centroid,
            fun_fact: c.fun_fact.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClusterList {
    pub clusters: Vec<ClusterSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClusterDetail {
    #[serde(flatten)]
    pub summary: ClusterSummary,
    /// Mean of the members' normalized vectors (the radar chart values).
    pub profile: FeatureVector,
    /// Mean raw display values of the members.
    pub display_profile: DisplayFeatures,
    pub members: Vec<SongRow>,
}

impl ClusterDetail {
    pub fn of(cluster: &Cluster, profile: FeatureVector, catalog: &Catalog) -> Self {
        let members: Vec<&SongRecord> = cluster.member_ids.iter().filter_map(|id| catalog.song(id)).collect();
        let n = members.len().max(1) as f64;
        let avg = |f: FeatureKey| members.iter().map(|s| raw_value(s, f)).sum::<f64>() / n;
        let mut rows: Vec<SongRow> = members.iter().map(|s| SongRow::of(s)).collect();
        rows.sort_by(|a, b| {
            a.title
                .to_lowercase()
                .cmp(&b.title.to_lowercase())
                .then(a.id.cmp(&b.id))
        });
        ClusterDetail {
            summary: ClusterSummary::of(cluster),
            profile,
            display_profile: DisplayFeatures {
                acousticness: avg(FeatureKey::Acousticness),
                danceability: avg(FeatureKey::Danceability),
                energy: avg(FeatureKey::Energy),
                tempo: avg(FeatureKey::Tempo),
                valence: avg(FeatureKey::Valence),
            },
            members: rows,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MegaHitRow {
    #[serde(flatten)]
    pub hit: MegaHit,
    pub cluster_name: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MegaHits {
    pub count: usize,
    pub rows: Vec<MegaHitRow>,
}

impl MegaHits {
    pub fn of(hits: Vec<MegaHit>, catalog: &Catalog) -> Self {
        let rows: Vec<MegaHitRow> = hits
            .into_iter()
            .map(|hit| MegaHitRow {
                cluster_name: hit.cluster_id.and_then(|c| catalog.cluster(c)).map(|c| c.name.clone()),
                hit,
            })
            .collect();
        MegaHits {
            count: rows.len(),
            rows,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SongTable {
    pub total: usize,
    pub offset: usize,
    pub rows: Vec<SongRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyResult {
    #[serde(flatten)]
    pub taste: TasteResult,
    pub cluster: ClusterDetail,
}
