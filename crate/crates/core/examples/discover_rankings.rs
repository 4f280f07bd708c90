//! The discover screen: No.1 songs sorted by a feature and the top five songs
//! for every feature.
//!
//! ```bash
//! cargo run -p music-circles --example discover_rankings [-- tempo]
//! ```

use music_circles::analytics::{number_one_songs, rank_songs, raw_value, top_n};
use music_circles::{fixtures, Catalog, FeatureKey, KMeansConfig, LabelConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let feature: FeatureKey = std::env::args().nth(1).as_deref().unwrap_or("energy").parse()?;
    let catalog = Catalog::build(&fixtures::inputs(), &KMeansConfig::default(), &LabelConfig::default())?;

    let unit = feature.unit().map(|u| format!(" ({u})")).unwrap_or_default();
    println!("No.1 songs by {}{unit}, highest first:", feature.display_name());
    for s in rank_songs(number_one_songs(&catalog), feature, true) {
        println!("  {:>8.3}  {} - {}", raw_value(s, feature), s.title, s.artist);
    }

    for f in FeatureKey::ALL {
        println!("\ntop 5 {}:", f.display_name());
        for (i, s) in top_n(&catalog, f, 5).iter().enumerate() {
            println!("  {}. {:<28} {:>8.3}", i + 1, s.title, raw_value(s, f));
        }
    }
    Ok(())
}
