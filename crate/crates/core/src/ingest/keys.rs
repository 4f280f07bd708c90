use sha2::{Digest, Sha256};

/// Matching form of a title or artist: Unicode case fold, trimmed, internal
/// whitespace runs collapsed to one space.
pub fn normalize_key(text: &str) -> String {
    let folded = caseless::default_case_fold_str(text);
    folded.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Display form: trimmed with whitespace runs collapsed, case preserved.
pub fn tidy(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SongKey {
    pub title: String,
    pub artist: String,
}

impl SongKey {
    pub fn new(title: &str, artist: &str) -> Self {
        SongKey {
            title: normalize_key(title),
            artist: normalize_key(artist),
        }
    }

    /// Stable opaque id derived from the normalized key.
    pub fn song_id(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.title.as_bytes());
        hasher.update([0x1f]);
        hasher.update(self.artist.as_bytes());
        let digest = hasher.finalize();
        let mut id = String::with_capacity(13);
        id.push('s');
        for byte in &digest[..6] {
            id.push_str(&format!("{byte:02x}"));
        }
        id
    }
}

/// Flattens the Spotify export's Python-list artist field
/// (`['Drake', 'WizKid']`) into `Drake, WizKid`. Anything else is returned
/// unchanged.
pub fn flatten_artist_list(raw: &str) -> String {
    let trimmed = raw.trim();
    let Some(inner) = trimmed.strip_prefix('[').and_then(|rest| rest.strip_suffix(']')) else {
        return trimmed.to_string();
    };

    let mut names = Vec::new();
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c == '\'' || c == '"' {
            let name: String = chars.by_ref().take_while(|&q| q != c).collect();
            names.push(name);
        }
    }
    if names.is_empty() {
        return inner.trim().to_string();
    }
    names.join(", ")
}
