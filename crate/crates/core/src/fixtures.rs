//! Paths to the bundled fixture corpus (about 200 songs in five planted
//! feature groups) and its shipped configs.

use std::path::PathBuf;

use crate::catalog::BuildInputs;
use crate::ingest::ColumnMapping;

pub fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn billboard_csv() -> PathBuf {
    dir().join("billboard.csv")
}

pub fn spotify_csv() -> PathBuf {
    dir().join("spotify.csv")
}

pub fn survey_json() -> PathBuf {
    dir().join("survey.json")
}

pub fn labels_json() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("config")
        .join("labels.json")
}

pub fn inputs() -> BuildInputs {
    BuildInputs {
        billboard: billboard_csv(),
        spotify: spotify_csv(),
        mapping: ColumnMapping::default(),
    }
}

/// Synthetic catalog of `n` songs for oracle tests, built through the real
/// normalize and clustering stages. Titles and artists come from small word
/// lists and feature values are rounded to two decimals so that ties and
/// shared substrings are common.
pub fn random_catalog(seed: u64, n: usize) -> crate::Result<crate::Catalog> {
    use std::collections::{BTreeMap, HashSet};

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::cluster::{KMeansConfig, LabelConfig};
    use crate::ingest::{normalize, LinkedSong, PipelineReport, SongKey, TrackFeatures};

    const WORDS: [&str; 12] = [
        "Love", "Night", "Fire", "Dance", "Blue", "Heart", "Gold", "Rain", "Run", "Home", "Sky", "Drake",
    ];
    const ARTISTS: [&str; 10] = [
        "Drake", "Adele", "Coldplay", "Rihanna", "Lizzo", "Sia", "Muse", "Kesha", "Lorde", "Usher",
    ];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut linked = Vec::with_capacity(n);
    let round2 = |x: f64| (x * 100.0).round() / 100.0;
    while linked.len() < n {
        let title = format!(
            "{} {}",
            WORDS[rng.random_range(0..WORDS.len())],
            WORDS[rng.random_range(0..WORDS.len())]
        );
        let artist = ARTISTS[rng.random_range(0..ARTISTS.len())].to_string();
        if !seen.insert(SongKey::new(&title, &artist)) {
            continue;
        }
        let peak: u8 = if rng.random_bool(0.15) {
            1
        } else {
            rng.random_range(1..=100)
        };
        let weeks: u32 = rng.random_range(1..=80);
        let track = TrackFeatures {
            song_title: title.clone(),
            artist: artist.clone(),
            release_year: rng.random_range(1999..=2019),
            album_image_url: None,
            youtube_url: None,
            acousticness: round2(rng.random()),
            danceability: round2(rng.random()),
            energy: round2(rng.random()),
            key: rng.random_range(0..=11),
            loudness: round2(rng.random_range(-20.0..-1.0)),
            tempo: round2(rng.random_range(60.0..200.0)).round(),
            valence: round2(rng.random()),
            binary: BTreeMap::new(),
        };
        linked.push(LinkedSong {
            title,
            artist,
            peak_position: peak,
            weeks_on_chart: weeks,
            best_weekly_rank: peak,
            track,
        });
    }
    let (songs, ranges) = normalize(linked)?;
    let report = PipelineReport {
        final_total: songs.len(),
        ..PipelineReport::default()
    };
    let mut catalog = crate::Catalog::from_songs(songs, ranges, report);
    catalog.apply_clustering(&KMeansConfig::default(), &LabelConfig::default())?;
    Ok(catalog)
}
