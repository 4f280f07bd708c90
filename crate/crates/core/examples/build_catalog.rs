//! Runs the whole pipeline on the bundled fixture and prints the report and
//! the five labeled clusters.
//!
//! ```bash
//! cargo run -p music-circles --example build_catalog [-- out.json]
//! ```

use music_circles::{fixtures, Catalog, KMeansConfig, LabelConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::build(&fixtures::inputs(), &KMeansConfig::default(), &LabelConfig::default())?;

    println!("{}\n", catalog.report);
    let summary = catalog.clustering.as_ref().expect("clustered");
    println!(
        "k-means: inertia {:.4} after {} iterations (seed {})",
        summary.inertia, summary.iterations_run, summary.seed_used
    );
    for c in &catalog.clusters {
        let v = c.centroid;
        println!(
            "  {} {:<22} {:>3} songs  ac {:.2} da {:.2} en {:.2} key {:.2} tempo {:.2} va {:.2}",
            c.id,
            c.name,
            c.size(),
            v.acousticness(),
            v.danceability(),
            v.energy(),
            v.key(),
            v.tempo(),
            v.valence()
        );
    }
    println!(
        "\n{} No.1 songs, {} mega-hits",
        catalog.number_ones.len(),
        catalog.mega_hits.len()
    );

    if let Some(path) = std::env::args().nth(1) {
        catalog.save(&path)?;
        println!("wrote {path}");
    }
    Ok(())
}
