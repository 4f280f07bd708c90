//! Read-only views over a [`Catalog`]: No.1 songs, feature rankings, top-N
//! tables, mega-hits and the searchable song table.
//!
//! Rankings use raw feature values (tempo in BPM). Ties always fall back to
//! case-folded title, then artist, then id.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{is_mega_hit, is_number_one, Catalog};
use crate::error::{Error, Result};
use crate::features::FeatureKey;
use crate::ingest::{normalize_key, SongRecord};

pub fn raw_value(song: &SongRecord, feature: FeatureKey) -> f64 {
    let raw = &song.raw;
    match feature {
        FeatureKey::Acousticness => raw.acousticness,
        FeatureKey::Danceability => raw.danceability,
        FeatureKey::Energy => raw.energy,
        FeatureKey::Tempo => raw.tempo,
        FeatureKey::Valence => raw.valence,
    }
}

fn name_order(a: &SongRecord, b: &SongRecord) -> Ordering {
    normalize_key(&a.title)
        .cmp(&normalize_key(&b.title))
        .then_with(|| normalize_key(&a.artist).cmp(&normalize_key(&b.artist)))
        .then_with(|| a.id.cmp(&b.id))
}

/// No.1 songs ordered by title, then artist.
pub fn number_one_songs(catalog: &Catalog) -> Vec<&SongRecord> {
    let mut out: Vec<&SongRecord> = catalog.songs.iter().filter(|s| is_number_one(s)).collect();
    out.sort_by(|a, b| name_order(a, b));
    out
}

/// Orders any subset of songs by a raw feature value.
pub fn rank_songs<'a, I>(songs: I, feature: FeatureKey, descending: bool) -> Vec<&'a SongRecord>
where
    I: IntoIterator<Item = &'a SongRecord>,
{
    let mut out: Vec<&SongRecord> = songs.into_iter().collect();
    out.sort_by(|a, b| {
        let by_value = raw_value(a, feature).total_cmp(&raw_value(b, feature));
        let by_value = if descending { by_value.reverse() } else { by_value };
        by_value.then_with(|| name_order(a, b))
    });
    out
}

pub fn rank_by_feature(catalog: &Catalog, feature: FeatureKey, descending: bool) -> Vec<&str> {
    rank_songs(&catalog.songs, feature, descending)
        .into_iter()
        .map(|s| s.id.as_str())
        .collect()
}

/// The first `n` songs by descending feature value; fewer when the catalog is
/// smaller. Callers reject `n == 0`.
pub fn top_n(catalog: &Catalog, feature: FeatureKey, n: usize) -> Vec<&SongRecord> {
    let mut ranked = rank_songs(&catalog.songs, feature, true);
    ranked.truncate(n);
    ranked
}

/// One bubble: x = release year, y = peak position, size = weeks, color = cluster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MegaHit {
    pub song_id: String,
    pub title: String,
    pub artist: String,
    pub release_year: i32,
    pub peak_position: u8,
    pub weeks_on_chart: u32,
    pub cluster_id: Option<usize>,
}

pub fn mega_hits(catalog: &Catalog) -> Vec<MegaHit> {
    catalog
        .songs
        .iter()
        .filter(|s| is_mega_hit(s))
        .map(|s| MegaHit {
            song_id: s.id.clone(),
            title: s.title.clone(),
            artist: s.artist.clone(),
            release_year: s.release_year,
            peak_position: s.peak_position,
            weeks_on_chart: s.weeks_on_chart,
            cluster_id: s.cluster_id,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SortColumn {
    Title,
    Artist,
    ReleaseYear,
    PeakPosition,
    WeeksOnChart,
    BestWeeklyRank,
    Cluster,
    Feature(FeatureKey),
}

impl SortColumn {
    pub const NAMES: [&'static str; 12] = [
        "title",
        "artist",
        "release_year",
        "peak_position",
        "weeks_on_chart",
        "best_weekly_rank",
        "cluster",
        "acousticness",
        "danceability",
        "energy",
        "tempo",
        "valence",
    ];

    fn compare(self, a: &SongRecord, b: &SongRecord) -> Ordering {
        match self {
            SortColumn::Title => normalize_key(&a.title).cmp(&normalize_key(&b.title)),
            SortColumn::Artist => normalize_key(&a.artist).cmp(&normalize_key(&b.artist)),
            SortColumn::ReleaseYear => a.release_year.cmp(&b.release_year),
            SortColumn::PeakPosition => a.peak_position.cmp(&b.peak_position),
            SortColumn::WeeksOnChart => a.weeks_on_chart.cmp(&b.weeks_on_chart),
            SortColumn::BestWeeklyRank => a.best_weekly_rank.cmp(&b.best_weekly_rank),
            SortColumn::Cluster => a.cluster_id.cmp(&b.cluster_id),
            SortColumn::Feature(f) => raw_value(a, f).total_cmp(&raw_value(b, f)),
        }
    }
}

impl FromStr for SortColumn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "title" => SortColumn::Title,
            "artist" => SortColumn::Artist,
            "release_year" | "year" => SortColumn::ReleaseYear,
            "peak_position" | "peak" => SortColumn::PeakPosition,
            "weeks_on_chart" | "weeks" => SortColumn::WeeksOnChart,
            "best_weekly_rank" => SortColumn::BestWeeklyRank,
            "cluster" | "cluster_id" => SortColumn::Cluster,
            other => SortColumn::Feature(other.parse().map_err(|_| Error::UnknownSortColumn(s.to_string()))?),
        })
    }
}

impl fmt::Display for SortColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SortColumn::Title => f.write_str("title"),
            SortColumn::Artist => f.write_str("artist"),
            SortColumn::ReleaseYear => f.write_str("release_year"),
            SortColumn::PeakPosition => f.write_str("peak_position"),
            SortColumn::WeeksOnChart => f.write_str("weeks_on_chart"),
            SortColumn::BestWeeklyRank => f.write_str("best_weekly_rank"),
            SortColumn::Cluster => f.write_str("cluster"),
            SortColumn::Feature(k) => f.write_str(k.as_str()),
        }
    }
}

/// Case-insensitive substring search over title or artist, optionally limited
/// to one cluster, stably sorted by `column` (catalog order among equals).
pub fn search_songs<'a>(
    catalog: &'a Catalog,
    query: &str,
    column: SortColumn,
    descending: bool,
    scope: Option<usize>,
) -> Vec<&'a SongRecord> {
    let needle = normalize_key(query);
    let mut out: Vec<&SongRecord> = catalog
        .songs
        .iter()
        .filter(|s| scope.is_none() || s.cluster_id == scope)
        .filter(|s| {
            needle.is_empty() || normalize_key(&s.title).contains(&needle) || normalize_key(&s.artist).contains(&needle)
        })
        .collect();
    out.sort_by(|a, b| {
        let o = column.compare(a, b);
        if descending {
            o.reverse()
        } else {
            o
        }
    });
    out
}
