use serde::{Deserialize, Serialize};

use super::link::LinkedSong;
use super::SongRecord;
use crate::error::{Error, Result};
use crate::features::FeatureVector;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Range {
        values.fold(
            Range {
                min: f64::INFINITY,
                max: f64::NEG_INFINITY,
            },
            |r, x| Range {
                min: r.min.min(x),
                max: r.max.max(x),
            },
        )
    }

    pub fn scale(&self, x: f64) -> f64 {
        (x - self.min) / (self.max - self.min)
    }
}

/// Corpus ranges the min-max features were scaled with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationRanges {
    pub tempo: Range,
    pub loudness: Range,
}

pub fn key_norm(key: u8) -> f64 {
    f64::from(key) / 11.0
}

/// Fills the clustering vectors: key over its fixed 0..=11 domain, tempo and
/// loudness min-max over the deduplicated corpus, the rest copied.
pub fn normalize(songs: Vec<LinkedSong>) -> Result<(Vec<SongRecord>, NormalizationRanges)> {
    if songs.len() < 2 {
        return Err(Error::TooFewSongs {
            needed: 2,
            got: songs.len(),
        });
    }
    let tempo = Range::of(songs.iter().map(|s| s.track.tempo));
    let loudness = Range::of(songs.iter().map(|s| s.track.loudness));
    if tempo.max <= tempo.min {
        return Err(Error::DegenerateCorpus("tempo"));
    }
    if loudness.max <= loudness.min {
        return Err(Error::DegenerateCorpus("loudness"));
    }

    let records = songs
        .into_iter()
        .map(|s| {
            let t = &s.track;
            let normalized = FeatureVector([
                t.acousticness,
                t.danceability,
                t.energy,
                key_norm(t.key),
                tempo.scale(t.tempo),
                t.valence,
            ]);
            SongRecord {
                id: s.key().song_id(),
                title: s.title,
                artist: s.artist,
                release_year: t.release_year,
                album_image_url: t.album_image_url.clone(),
                youtube_url: t.youtube_url.clone(),
                peak_position: s.peak_position,
                weeks_on_chart: s.weeks_on_chart,
                best_weekly_rank: s.best_weekly_rank,
                loudness_norm: loudness.scale(t.loudness),
                normalized,
                cluster_id: None,
                raw: s.track,
            }
        })
        .collect();
    Ok((records, NormalizationRanges { tempo, loudness }))
}
