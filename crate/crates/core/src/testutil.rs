//! Hand-built catalogs for unit tests.

use std::collections::BTreeMap;

use crate::catalog::Catalog;
use crate::features::FeatureVector;
use crate::ingest::{NormalizationRanges, PipelineReport, Range, SongKey, SongRecord, TrackFeatures};

pub(crate) fn song(title: &str, artist: &str, peak: u8, weeks: u32, energy: f64) -> SongRecord {
    SongRecord {
        id: SongKey::new(title, artist).song_id(),
        title: title.into(),
        artist: artist.into(),
        release_year: 2010,
        album_image_url: None,
        youtube_url: None,
        peak_position: peak,
        weeks_on_chart: weeks,
        best_weekly_rank: peak,
        raw: TrackFeatures {
            song_title: title.into(),
            artist: artist.into(),
            release_year: 2010,
            album_image_url: None,
            youtube_url: None,
            acousticness: 0.5,
            danceability: 0.5,
            energy,
            key: 0,
            loudness: -5.0,
            tempo: 120.0,
            valence: 0.5,
            binary: BTreeMap::new(),
        },
        normalized: FeatureVector([0.5, 0.5, energy, 0.0, 0.5, 0.5]),
        loudness_norm: 0.5,
        cluster_id: None,
    }
}

pub(crate) fn catalog_of(songs: Vec<SongRecord>) -> Catalog {
    let r = Range { min: 0.0, max: 1.0 };
    Catalog::from_songs(
        songs,
        NormalizationRanges { tempo: r, loudness: r },
        PipelineReport::default(),
    )
}
