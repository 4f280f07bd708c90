//! Column-name mapping for the two source CSVs.
//!
//! Defaults follow the public Kaggle exports (`billboardHot100_1999-2019.csv`
//! and the 160k-track Spotify `data.csv`). Any subset can be overridden with a
//! TOML file:
//!
//! ```toml
//! [billboard]
//! title = "Song"
//! week_date = "Chart Date"
//! date_format = "%m/%d/%Y"
//!
//! [spotify]
//! binary = ["mode", "explicit"]
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct ColumnMapping {
    pub billboard: BillboardColumns,
    pub spotify: SpotifyColumns,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BillboardColumns {
    pub title: String,
    pub artist: String,
    pub weekly_rank: String,
    pub week_date: String,
    /// Optional. Kept on each parsed row, but a song's peak is always its
    /// best weekly rank.
    pub peak_position: String,
    /// Optional. Kept on each parsed row, but a song's weeks on chart is
    /// always its count of distinct chart dates.
    pub weeks_on_chart: String,
    /// chrono format string; ISO dates and `%m/%d/%Y` are always accepted too.
    pub date_format: String,
}

impl Default for BillboardColumns {
    fn default() -> Self {
        BillboardColumns {
            title: "Name".into(),
            artist: "Artists".into(),
            weekly_rank: "Weekly.rank".into(),
            week_date: "Week".into(),
            peak_position: "Peak.position".into(),
            weeks_on_chart: "Weeks.on.chart".into(),
            date_format: "%Y-%m-%d".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpotifyColumns {
    pub title: String,
    pub artist: String,
    pub release_year: String,
    pub acousticness: String,
    pub danceability: String,
    pub energy: String,
    pub valence: String,
    pub key: String,
    pub loudness: String,
    pub tempo: String,
    /// 0/1 columns kept on the record but never clustered on.
    pub binary: Vec<String>,
    /// Optional.
    pub album_image_url: String,
    /// Optional.
    pub youtube_url: String,
}

impl Default for SpotifyColumns {
    fn default() -> Self {
        SpotifyColumns {
            title: "name".into(),
            artist: "artists".into(),
            release_year: "year".into(),
            acousticness: "acousticness".into(),
            danceability: "danceability".into(),
            energy: "energy".into(),
            valence: "valence".into(),
            key: "key".into(),
            loudness: "loudness".into(),
            tempo: "tempo".into(),
            binary: vec!["mode".into(), "explicit".into()],
            album_image_url: "album_image_url".into(),
            youtube_url: "youtube_url".into(),
        }
    }
}

impl ColumnMapping {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }
}
