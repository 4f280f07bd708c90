//! Clusters five synthetic blobs in the 6-d feature cube and shows how each
//! restart and iteration behaves.
//!
//! ```bash
//! cargo run -p music-circles --example kmeans_blobs [-- seed]
//! ```

use music_circles::cluster::{kmeans, lloyd_run, KMeansConfig};
use music_circles::FeatureVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(42);
    let centers = [
        [0.1, 0.8, 0.3, 0.5, 0.5, 0.8],
        [0.1, 0.6, 0.9, 0.5, 0.4, 0.4],
        [0.2, 0.6, 0.6, 0.5, 0.9, 0.5],
        [0.9, 0.4, 0.3, 0.5, 0.3, 0.3],
        [0.2, 0.5, 0.5, 0.5, 0.4, 0.9],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<FeatureVector> = centers
        .iter()
        .flat_map(|c| (0..40).map(|_| *c).collect::<Vec<_>>())
        .map(|c| FeatureVector(c.map(|x: f64| (x + rng.random_range(-0.08..0.08)).clamp(0.0, 1.0))))
        .collect();

    let config = KMeansConfig {
        seed,
        ..KMeansConfig::default()
    };
    for restart in 0..config.restarts {
        let run = lloyd_run(&points, &config, restart)?;
        let trace: Vec<String> = run.inertia_trace.iter().map(|x| format!("{x:.3}")).collect();
        println!("restart {restart}: {}", trace.join(" -> "));
    }

    let fit = kmeans(&points, &config)?;
    println!("\nbest restart {} with inertia {:.4}", fit.best_restart, fit.inertia);
    for (j, c) in fit.centroids.iter().enumerate() {
        let size = fit.assignments.iter().filter(|&&a| a == j).count();
        let v: Vec<String> = c.0.iter().map(|x| format!("{x:.2}")).collect();
        println!("  cluster {j}: {size:>3} points  [{}]", v.join(", "));
    }
    Ok(())
}
