//! Joining chart history to audio features, and collapsing duplicates.

use std::collections::{BTreeSet, HashMap};

use chrono::NaiveDate;

use super::keys::SongKey;
use super::parse::{ChartEntry, TrackFeatures};

/// A chart song paired with one matching track, before normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkedSong {
    pub title: String,
    pub artist: String,
    pub peak_position: u8,
    pub weeks_on_chart: u32,
    pub best_weekly_rank: u8,
    pub track: TrackFeatures,
}

impl LinkedSong {
    pub fn key(&self) -> SongKey {
        SongKey::new(&self.title, &self.artist)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Linked {
    pub songs: Vec<LinkedSong>,
    /// Distinct chart songs (exact title/artist spelling).
    pub chart_songs: usize,
    /// Chart songs with no track under the normalized key.
    pub unmatched: usize,
}

struct ChartSong<'a> {
    title: &'a str,
    artist: &'a str,
    best_rank: u8,
    weeks: BTreeSet<NaiveDate>,
}

/// Chart songs are grouped by their exact spelling; each group is matched to
/// every track sharing its normalized (title, artist) key. Spelling variants
/// of one song therefore produce separate candidates that [`dedup`] resolves.
pub fn link(entries: &[ChartEntry], tracks: &[TrackFeatures]) -> Linked {
    let mut order: Vec<ChartSong<'_>> = Vec::new();
    let mut slot: HashMap<(&str, &str), usize> = HashMap::new();
    for e in entries {
        let i = *slot
            .entry((e.song_title.as_str(), e.artist.as_str()))
            .or_insert_with(|| {
                order.push(ChartSong {
                    title: &e.song_title,
                    artist: &e.artist,
                    best_rank: e.weekly_rank,
                    weeks: BTreeSet::new(),
                });
                order.len() - 1
            });
        let song = &mut order[i];
        song.best_rank = song.best_rank.min(e.weekly_rank);
        song.weeks.insert(e.week_date);
    }

    let mut by_key: HashMap<SongKey, Vec<&TrackFeatures>> = HashMap::new();
    for t in tracks {
        by_key
            .entry(SongKey::new(&t.song_title, &t.artist))
            .or_default()
            .push(t);
    }

    let mut songs = Vec::new();
    let mut unmatched = 0;
    for chart in &order {
        match by_key.get(&SongKey::new(chart.title, chart.artist)) {
            Some(matches) => songs.extend(matches.iter().map(|t| LinkedSong {
                title: chart.title.to_string(),
                artist: chart.artist.to_string(),
                peak_position: chart.best_rank,
                weeks_on_chart: chart.weeks.len() as u32,
                best_weekly_rank: chart.best_rank,
                track: (*t).clone(),
            })),
            None => unmatched += 1,
        }
    }
    Linked {
        songs,
        chart_songs: order.len(),
        unmatched,
    }
}

/// Keeps one candidate per normalized (title, artist): the best (numerically
/// smallest) weekly rank, then the earliest release year, then input order.
/// Survivors stay in first-appearance order of their key.
pub fn dedup(candidates: Vec<LinkedSong>) -> Vec<LinkedSong> {
    let mut slot: HashMap<SongKey, usize> = HashMap::new();
    let mut out: Vec<LinkedSong> = Vec::new();
    for c in candidates {
        match slot.get(&c.key()) {
            Some(&i) => {
                let kept = &out[i];
                if (c.best_weekly_rank, c.track.release_year) < (kept.best_weekly_rank, kept.track.release_year) {
                    out[i] = c;
                }
            }
            None => {
                slot.insert(c.key(), out.len());
                out.push(c);
            }
        }
    }
    out
}
