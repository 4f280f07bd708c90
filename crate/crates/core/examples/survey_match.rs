//! Answers the shipped survey and prints the similarity to every cluster.
//! Pass four option indices (0-4), one per question.
//!
//! ```bash
//! cargo run -p music-circles --example survey_match [-- 3 3 0 3]
//! ```

use music_circles::taste::evaluate;
use music_circles::{fixtures, Catalog, KMeansConfig, LabelConfig, SurveyDefinition, SurveyResponse};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::build(&fixtures::inputs(), &KMeansConfig::default(), &LabelConfig::default())?;
    let survey = SurveyDefinition::load(fixtures::survey_json())?;

    let picks: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let picks = if picks.is_empty() { vec![3, 3, 0, 3] } else { picks };

    let mut chosen = Vec::new();
    for (q, pick) in survey.questions.iter().zip(&picks) {
        let option = q.options.get(*pick).ok_or("option index must be 0-4")?;
        println!("{}\n  -> {} - {}", q.prompt, option.title, option.artist);
        chosen.push(option.song_id.clone());
    }

    let result = evaluate(
        &SurveyResponse {
            chosen_song_ids: chosen,
        },
        &survey,
        &catalog,
    )?;
    println!();
    for c in &catalog.clusters {
        let mark = if c.id == result.assigned_cluster { "*" } else { " " };
        println!("{mark} {:<22} {:.4}", c.name, result.similarities[c.id]);
    }
    let yours = &catalog.clusters[result.assigned_cluster];
    println!("\nYour circle: {}. {}", yours.name, yours.fun_fact);
    Ok(())
}
