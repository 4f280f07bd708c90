//! The six clustering features and the five display features.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

pub const DIM: usize = 6;

/// Normalized clustering vector in fixed order:
/// acousticness, danceability, energy, key, tempo, valence.
///
/// Components are expected to lie in `[0, 1]` for vectors coming out of the
/// ingest pipeline; arithmetic helpers here do not enforce that because
/// scaled survey means and k-means intermediates are also represented with
/// this type.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FeatureVector(pub [f64; DIM]);

impl FeatureVector {
    pub const NAMES: [&'static str; DIM] = ["acousticness", "danceability", "energy", "key", "tempo", "valence"];

    pub const ZERO: FeatureVector = FeatureVector([0.0; DIM]);

    pub fn new(components: [f64; DIM]) -> Self {
        FeatureVector(components)
    }

    pub fn as_array(&self) -> &[f64; DIM] {
        &self.0
    }

    pub fn acousticness(&self) -> f64 {
        self.0[0]
    }
    pub fn danceability(&self) -> f64 {
        self.0[1]
    }
    pub fn energy(&self) -> f64 {
        self.0[2]
    }
    pub fn key(&self) -> f64 {
        self.0[3]
    }
    pub fn tempo(&self) -> f64 {
        self.0[4]
    }
    pub fn valence(&self) -> f64 {
        self.0[5]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn in_unit_cube(&self) -> bool {
        self.0.iter().all(|c| (0.0..=1.0).contains(c))
    }

    pub fn dot(&self, other: &FeatureVector) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn squared_distance(&self, other: &FeatureVector) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b) * (a - b)).sum()
    }

    pub fn scale(&self, factor: f64) -> FeatureVector {
        FeatureVector(self.0.map(|c| c * factor))
    }

    /// Component-wise mean, summed in input order. `None` for an empty input.
    pub fn mean<'a, I>(vectors: I) -> Option<FeatureVector>
    where
        I: IntoIterator<Item = &'a FeatureVector>,
    {
        let mut sum = [0.0; DIM];
        let mut count = 0usize;
        for v in vectors {
            for (s, c) in sum.iter_mut().zip(v.0.iter()) {
                *s += c;
            }
            count += 1;
        }
        if count == 0 {
            return None;
        }
        Some(FeatureVector(sum.map(|s| s / count as f64)))
    }
}

#[derive(Serialize, Deserialize)]
struct NamedComponents {
    acousticness: f64,
    danceability: f64,
    energy: f64,
    key: f64,
    tempo: f64,
    valence: f64,
}

impl Serialize for FeatureVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let [acousticness, danceability, energy, key, tempo, valence] = self.0;
        NamedComponents {
            acousticness,
            danceability,
            energy,
            key,
            tempo,
            valence,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FeatureVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let n = NamedComponents::deserialize(deserializer)?;
        Ok(FeatureVector([
            n.acousticness,
            n.danceability,
            n.energy,
            n.key,
            n.tempo,
            n.valence,
        ]))
    }
}

/// The five features offered on the discover screen. Key is clustered on but
/// never displayed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKey {
    Acousticness,
    Danceability,
    Energy,
    Tempo,
    Valence,
}

impl FeatureKey {
    pub const ALL: [FeatureKey; 5] = [
        FeatureKey::Acousticness,
        FeatureKey::Danceability,
        FeatureKey::Energy,
        FeatureKey::Tempo,
        FeatureKey::Valence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureKey::Acousticness => "acousticness",
            FeatureKey::Danceability => "danceability",
            FeatureKey::Energy => "energy",
            FeatureKey::Tempo => "tempo",
            FeatureKey::Valence => "valence",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            FeatureKey::Acousticness => "Acousticness",
            FeatureKey::Danceability => "Danceability",
            FeatureKey::Energy => "Energy",
            FeatureKey::Tempo => "Tempo",
            FeatureKey::Valence => "Valence",
        }
    }

    /// Bar color used on the discover screen when this feature is selected.
    pub fn color(self) -> &'static str {
        match self {
            FeatureKey::Acousticness => "#4e79a7",
            FeatureKey::Danceability => "#f28e2b",
            FeatureKey::Energy => "#e15759",
            FeatureKey::Tempo => "#59a14f",
            FeatureKey::Valence => "#b07aa1",
        }
    }

    pub fn unit(self) -> Option<&'static str> {
        match self {
            FeatureKey::Tempo => Some("BPM"),
            _ => None,
        }
    }

    /// Position of this feature inside a [`FeatureVector`].
    pub fn vector_index(self) -> usize {
        match self {
            FeatureKey::Acousticness => 0,
            FeatureKey::Danceability => 1,
            FeatureKey::Energy => 2,
            FeatureKey::Tempo => 4,
            FeatureKey::Valence => 5,
        }
    }
}

impl fmt::Display for FeatureKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        FeatureKey::ALL
            .into_iter()
            .find(|k| k.as_str() == lower)
            .ok_or_else(|| Error::UnknownFeature(s.to_string()))
    }
}
