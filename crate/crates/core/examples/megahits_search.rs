//! The mega-hit bubble data and a search over the song table.
//!
//! ```bash
//! cargo run -p music-circles --example megahits_search [-- query [sort] [cluster]]
//! ```

use music_circles::analytics::{mega_hits, search_songs, SortColumn};
use music_circles::{fixtures, Catalog, KMeansConfig, LabelConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::build(&fixtures::inputs(), &KMeansConfig::default(), &LabelConfig::default())?;
    let mut args = std::env::args().skip(1);
    let query = args.next().unwrap_or_else(|| "love".into());
    let column: SortColumn = args.next().as_deref().unwrap_or("weeks").parse()?;
    let scope: Option<usize> = args.next().map(|c| c.parse()).transpose()?;

    println!("mega-hits (peak <= 10, more than 50 weeks):");
    for hit in mega_hits(&catalog) {
        let cluster = hit
            .cluster_id
            .and_then(|c| catalog.cluster(c))
            .map_or("-", |c| c.name.as_str());
        println!(
            "  {} peak {:>2} {:>3} wks  {:<26} {}",
            hit.release_year, hit.peak_position, hit.weeks_on_chart, hit.title, cluster
        );
    }

    let hits = search_songs(&catalog, &query, column, true, scope);
    println!("\n{} songs matching {query:?}, by {column} descending:", hits.len());
    for s in hits {
        println!(
            "  {:<28} {:<22} peak {:>3}  {:>3} wks",
            s.title, s.artist, s.peak_position, s.weeks_on_chart
        );
    }
    Ok(())
}
