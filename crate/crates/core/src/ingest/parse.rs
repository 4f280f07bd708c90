//! CSV parsers for the chart history and the audio-feature export.

use std::collections::{BTreeMap, HashMap};
use std::io::Read;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::keys::{flatten_artist_list, tidy};
use super::mapping::{BillboardColumns, SpotifyColumns};
use crate::error::{Error, Result};

/// Slack allowed on the `[0, 1]` features before a row is rejected.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ChartEntry {
    pub song_title: String,
    pub artist: String,
    pub weekly_rank: u8,
    pub week_date: NaiveDate,
    pub peak_position: u8,
    pub weeks_on_chart: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackFeatures {
    pub song_title: String,
    pub artist: String,
    pub release_year: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub album_image_url: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub youtube_url: Option<String>,
    pub acousticness: f64,
    pub danceability: f64,
    pub energy: f64,
    pub key: u8,
    pub loudness: f64,
    pub tempo: f64,
    pub valence: f64,
    /// The excluded 0/1 features, by source column name.
    pub binary: BTreeMap<String, u8>,
}

/// Parser output plus the number of data rows that were dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed<T> {
    pub records: Vec<T>,
    pub rows: usize,
    pub skipped: usize,
    /// Rows kept after snapping a bounded feature back onto `[0, 1]`.
    pub clamped: usize,
}

struct Header {
    index: HashMap<String, usize>,
    dataset: &'static str,
}

impl Header {
    fn new(dataset: &'static str, record: &csv::StringRecord) -> Result<Self> {
        if record.iter().all(|h| h.trim().is_empty()) {
            return Err(Error::EmptyInput(dataset));
        }
        let index = record
            .iter()
            .enumerate()
            .map(|(i, h)| (h.trim().trim_start_matches('\u{feff}').to_string(), i))
            .collect();
        Ok(Header { index, dataset })
    }

    fn required(&self, column: &str) -> Result<usize> {
        self.index.get(column).copied().ok_or_else(|| Error::MissingColumn {
            dataset: self.dataset,
            column: column.to_string(),
        })
    }

    fn optional(&self, column: &str) -> Option<usize> {
        if column.is_empty() {
            return None;
        }
        self.index.get(column).copied()
    }
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(input)
}

fn headers<R: Read>(dataset: &'static str, rdr: &mut csv::Reader<R>) -> Result<Header> {
    let record = rdr.headers()?.clone();
    Header::new(dataset, &record)
}

fn parse_date(text: &str, format: &str) -> Option<NaiveDate> {
    let text = text.trim();
    NaiveDate::parse_from_str(text, format)
        .or_else(|_| NaiveDate::parse_from_str(text, "%Y-%m-%d"))
        .or_else(|_| NaiveDate::parse_from_str(text, "%m/%d/%Y"))
        .ok()
}

fn parse_rank(text: &str) -> Option<u8> {
    let rank: u8 = text.trim().parse().ok()?;
    (1..=100).contains(&rank).then_some(rank)
}

pub fn parse_billboard<R: Read>(input: R, columns: &BillboardColumns) -> Result<Parsed<ChartEntry>> {
    let mut rdr = reader(input);
    let header = headers("billboard", &mut rdr)?;
    let title = header.required(&columns.title)?;
    let artist = header.required(&columns.artist)?;
    let rank = header.required(&columns.weekly_rank)?;
    let date = header.required(&columns.week_date)?;
    let peak = header.optional(&columns.peak_position);
    let weeks = header.optional(&columns.weeks_on_chart);

    let mut out = Parsed {
        records: Vec::new(),
        rows: 0,
        skipped: 0,
        clamped: 0,
    };
    for row in rdr.records() {
        let row = row?;
        out.rows += 1;
        let field = |i: usize| row.get(i).unwrap_or("");
        let entry = (|| {
            let song_title = tidy(field(title));
            let artist = tidy(field(artist));
            if song_title.is_empty() || artist.is_empty() {
                return None;
            }
            let weekly_rank = parse_rank(field(rank))?;
            let week_date = parse_date(field(date), &columns.date_format)?;
            let peak_position = match peak {
                Some(i) => parse_rank(field(i))?,
                None => weekly_rank,
            };
            let weeks_on_chart = match weeks {
                Some(i) => field(i).trim().parse::<u32>().ok().filter(|w| *w >= 1)?,
                None => 1,
            };
            Some(ChartEntry {
                song_title,
                artist,
                weekly_rank,
                week_date,
                peak_position,
                weeks_on_chart,
            })
        })();
        match entry {
            Some(e) => out.records.push(e),
            None => out.skipped += 1,
        }
    }
    Ok(out)
}

/// Parses a `[0, 1]` feature. Values within [`BOUND_SLACK`] outside the range
/// are snapped onto it; the flag reports whether that happened.
fn parse_unit(text: &str) -> Option<(f64, bool)> {
    let x: f64 = text.trim().parse().ok()?;
    if !x.is_finite() {
        return None;
    }
    if (0.0..=1.0).contains(&x) {
        Some((x, false))
    } else if (-BOUND_SLACK..0.0).contains(&x) {
        Some((0.0, true))
    } else if x > 1.0 && x <= 1.0 + BOUND_SLACK {
        Some((1.0, true))
    } else {
        None
    }
}

fn parse_key(text: &str) -> Option<u8> {
    let x: f64 = text.trim().parse().ok()?;
    (x.fract() == 0.0 && (0.0..=11.0).contains(&x)).then_some(x as u8)
}

fn parse_year(text: &str) -> Option<i32> {
    let text = text.trim();
    text.parse::<i32>()
        .ok()
        .or_else(|| text.parse::<f64>().ok().filter(|y| y.fract() == 0.0).map(|y| y as i32))
}

fn parse_binary(text: &str) -> Option<u8> {
    match text.trim() {
        "0" | "0.0" | "False" | "false" => Some(0),
        "1" | "1.0" | "True" | "true" => Some(1),
        _ => None,
    }
}

fn non_empty(text: &str) -> Option<String> {
    let t = text.trim();
    (!t.is_empty()).then(|| t.to_string())
}

pub fn parse_spotify<R: Read>(input: R, columns: &SpotifyColumns) -> Result<Parsed<TrackFeatures>> {
    let mut rdr = reader(input);
    let header = headers("spotify", &mut rdr)?;
    let title = header.required(&columns.title)?;
    let artist = header.required(&columns.artist)?;
    let year = header.required(&columns.release_year)?;
    let acousticness = header.required(&columns.acousticness)?;
    let danceability = header.required(&columns.danceability)?;
    let energy = header.required(&columns.energy)?;
    let valence = header.required(&columns.valence)?;
    let key = header.required(&columns.key)?;
    let loudness = header.required(&columns.loudness)?;
    let tempo = header.required(&columns.tempo)?;
    let binary = columns
        .binary
        .iter()
        .map(|name| Ok((name.clone(), header.required(name)?)))
        .collect::<Result<Vec<_>>>()?;
    let album = header.optional(&columns.album_image_url);
    let youtube = header.optional(&columns.youtube_url);

    let mut out = Parsed {
        records: Vec::new(),
        rows: 0,
        skipped: 0,
        clamped: 0,
    };
    for row in rdr.records() {
        let row = row?;
        out.rows += 1;
        let field = |i: usize| row.get(i).unwrap_or("");
        let mut clamped = false;
        let track = (|| {
            let mut unit = |i: usize| {
                let (x, snapped) = parse_unit(field(i))?;
                clamped |= snapped;
                Some(x)
            };
            let acousticness = unit(acousticness)?;
            let danceability = unit(danceability)?;
            let energy = unit(energy)?;
            let valence = unit(valence)?;

            let song_title = tidy(field(title));
            let artist = tidy(&flatten_artist_list(field(artist)));
            if song_title.is_empty() || artist.is_empty() {
                return None;
            }
            let tempo: f64 = field(tempo).trim().parse().ok()?;
            if !(tempo.is_finite() && tempo > 0.0) {
                return None;
            }
            let loudness: f64 = field(loudness).trim().parse().ok()?;
            if !loudness.is_finite() {
                return None;
            }
            let binary = binary
                .iter()
                .map(|(name, i)| Some((name.clone(), parse_binary(field(*i))?)))
                .collect::<Option<BTreeMap<_, _>>>()?;
            Some(TrackFeatures {
                song_title,
                artist,
                release_year: parse_year(field(year))?,
                album_image_url: album.and_then(|i| non_empty(field(i))),
                youtube_url: youtube.and_then(|i| non_empty(field(i))),
                acousticness,
                danceability,
                energy,
                key: parse_key(field(key))?,
                loudness,
                tempo,
                valence,
                binary,
            })
        })();
        match track {
            Some(t) => {
                out.clamped += usize::from(clamped);
                out.records.push(t);
            }
            None => out.skipped += 1,
        }
    }
    Ok(out)
}
