//! Derives a default four-question survey from a clustered catalog: each
//! question offers one long-charting song per cluster.
//!
//! ```bash
//! cargo run -p music-circles --example suggest_survey -- crates/core/fixtures/survey.json
//! ```

use music_circles::{fixtures, Catalog, KMeansConfig, LabelConfig, SurveyDefinition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::build(&fixtures::inputs(), &KMeansConfig::default(), &LabelConfig::default())?;
    let survey = SurveyDefinition::suggest(&catalog)?;
    survey.validate(&catalog)?;

    for q in &survey.questions {
        println!("{}", q.prompt);
        for o in &q.options {
            println!("  [{}] {} - {}", o.cluster_id, o.title, o.artist);
        }
    }

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, serde_json::to_string_pretty(&survey)? + "\n")?;
        println!("wrote {path}");
    }
    Ok(())
}
