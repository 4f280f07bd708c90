//! Source CSVs to a deduplicated, normalized song table.
//!
//! The stages are exposed individually ([`parse_billboard`], [`parse_spotify`],
//! [`link`], [`dedup`], [`normalize`]) and chained by [`run`], which also
//! collects the counts for the [`PipelineReport`].

mod keys;
mod link;
mod mapping;
mod normalize;
mod parse;

use std::io::Read;

use serde::{Deserialize, Serialize};

pub use keys::{flatten_artist_list, normalize_key, tidy, SongKey};
pub use link::{dedup, link, Linked, LinkedSong};
pub use mapping::{BillboardColumns, ColumnMapping, SpotifyColumns};
pub use normalize::{key_norm, normalize, NormalizationRanges, Range};
pub use parse::{parse_billboard, parse_spotify, ChartEntry, Parsed, TrackFeatures, BOUND_SLACK};

use crate::error::Result;
use crate::features::FeatureVector;

/// One deduplicated song with chart stats and both raw and normalized features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SongRecord {
    pub id: String,
    pub title: String,
    pub artist: String,
    pub release_year: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub album_image_url: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub youtube_url: Option<String>,
    pub peak_position: u8,
    pub weeks_on_chart: u32,
    pub best_weekly_rank: u8,
    pub raw: TrackFeatures,
    pub normalized: FeatureVector,
    /// Min-max scaled loudness. Kept for display; not a clustering feature.
    pub loudness_norm: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_id: Option<usize>,
}

impl SongRecord {
    pub fn key(&self) -> SongKey {
        SongKey::new(&self.title, &self.artist)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub billboard_rows: usize,
    pub billboard_parsed: usize,
    pub billboard_skipped: usize,
    pub spotify_rows: usize,
    pub spotify_parsed: usize,
    pub spotify_rejected: usize,
    pub spotify_clamped: usize,
    pub chart_songs: usize,
    pub unmatched_chart_songs: usize,
    pub linked_candidates: usize,
    pub duplicates_removed: usize,
    pub final_total: usize,
}

impl std::fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "billboard rows      {:>8}  parsed {:>8}  skipped {:>6}",
            self.billboard_rows, self.billboard_parsed, self.billboard_skipped
        )?;
        writeln!(
            f,
            "spotify rows        {:>8}  parsed {:>8}  rejected {:>5}  clamped {}",
            self.spotify_rows, self.spotify_parsed, self.spotify_rejected, self.spotify_clamped
        )?;
        writeln!(
            f,
            "chart songs         {:>8}  unmatched {:>5}",
            self.chart_songs, self.unmatched_chart_songs
        )?;
        writeln!(
            f,
            "linked candidates   {:>8}  duplicates removed {}",
            self.linked_candidates, self.duplicates_removed
        )?;
        write!(f, "final songs         {:>8}", self.final_total)
    }
}

#[derive(Debug, Clone)]
pub struct IngestOutput {
    pub songs: Vec<SongRecord>,
    pub ranges: NormalizationRanges,
    pub report: PipelineReport,
}

/// parse → link → dedup → normalize.
pub fn run<B: Read, S: Read>(billboard: B, spotify: S, mapping: &ColumnMapping) -> Result<IngestOutput> {
    let chart = parse_billboard(billboard, &mapping.billboard)?;
    let tracks = parse_spotify(spotify, &mapping.spotify)?;
    let linked = link(&chart.records, &tracks.records);
    let candidates = linked.songs.len();
    let survivors = dedup(linked.songs);
    let duplicates_removed = candidates - survivors.len();
    let (songs, ranges) = normalize(survivors)?;

    let report = PipelineReport {
        billboard_rows: chart.rows,
        billboard_parsed: chart.records.len(),
        billboard_skipped: chart.skipped,
        spotify_rows: tracks.rows,
        spotify_parsed: tracks.records.len(),
        spotify_rejected: tracks.skipped,
        spotify_clamped: tracks.clamped,
        chart_songs: linked.chart_songs,
        unmatched_chart_songs: linked.unmatched,
        linked_candidates: candidates,
        duplicates_removed,
        final_total: songs.len(),
    };
    Ok(IngestOutput { songs, ranges, report })
}
