//! Lloyd's algorithm with k-means++ seeding.
//!
//! Every reduction runs in index order so a fixed `(points, config)` pair
//! gives bit-identical output on any platform. Restarts run on the rayon pool
//! but the best-inertia pick walks them in restart order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureVector, DIM};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct KMeansConfig {
    pub k: usize,
    pub seed: u64,
    pub max_iterations: usize,
    /// Convergence threshold on the summed Euclidean movement of all centroids.
    pub tolerance: f64,
    pub restarts: usize,
}

impl Default for KMeansConfig {
    fn default() -> Self {
        KMeansConfig {
            k: 5,
            seed: 42,
            max_iterations: 300,
            tolerance: 1e-6,
            restarts: 10,
        }
    }
}

impl KMeansConfig {
    pub fn with_k(k: usize) -> Self {
        KMeansConfig { k, ..Self::default() }
    }

    fn validate(&self, points: &[FeatureVector]) -> Result<()> {
        if self.k == 0 {
            return Err(Error::KMeansConfig("k must be positive".into()));
        }
        if self.max_iterations == 0 || self.restarts == 0 {
            return Err(Error::KMeansConfig(
                "max_iterations and restarts must be positive".into(),
            ));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::KMeansConfig("tolerance must be > 0".into()));
        }
        if points.len() < self.k {
            return Err(Error::TooFewPoints {
                points: points.len(),
                k: self.k,
            });
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(())
    }
}

/// One seeded Lloyd run.
#[derive(Debug, Clone, PartialEq)]
pub struct LloydRun {
    /// Means of the final assignment.
    pub centroids: Vec<FeatureVector>,
    pub assignments: Vec<usize>,
    pub inertia: f64,
    pub iterations: usize,
    /// Inertia after every assignment step, plus the final value when the
    /// closing pass changed anything.
    pub inertia_trace: Vec<f64>,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansFit {
    pub centroids: Vec<FeatureVector>,
    pub assignments: Vec<usize>,
    pub inertia: f64,
    pub iterations_run: usize,
    pub seed_used: u64,
    pub best_restart: usize,
}

pub fn kmeans(points: &[FeatureVector], config: &KMeansConfig) -> Result<KMeansFit> {
    config.validate(points)?;
    let runs: Vec<LloydRun> = (0..config.restarts)
        .into_par_iter()
        .map(|r| lloyd(points, config, r))
        .collect();

    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.inertia < runs[best].inertia {
            best = i;
        }
    }
    let run = runs.into_iter().nth(best).expect("restarts > 0");
    Ok(KMeansFit {
        centroids: run.centroids,
        assignments: run.assignments,
        inertia: run.inertia,
        iterations_run: run.iterations,
        seed_used: config.seed,
        best_restart: best,
    })
}

/// A single restart, seeded from `(config.seed, restart)`.
pub fn lloyd_run(points: &[FeatureVector], config: &KMeansConfig, restart: usize) -> Result<LloydRun> {
    config.validate(points)?;
    Ok(lloyd(points, config, restart))
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// k-means++: first center uniform, the rest drawn with probability
/// proportional to squared distance from the nearest chosen center.
pub fn kmeans_plus_plus<R: Rng>(points: &[FeatureVector], k: usize, rng: &mut R) -> Vec<FeatureVector> {
    let n = points.len();
    let mut chosen = vec![false; n];
    let first = rng.random_range(0..n);
    chosen[first] = true;
    let mut centers = vec![points[first]];
    let mut nearest: Vec<f64> = points.iter().map(|p| p.squared_distance(&points[first])).collect();

    while centers.len() < k {
        let total: f64 = nearest.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = None;
            for (i, d) in nearest.iter().enumerate() {
                if *d <= 0.0 {
                    continue;
                }
                acc += d;
                pick = Some(i);
                if acc > target {
                    break;
                }
            }
            pick.expect("total > 0 implies a positive weight")
        } else {
            // All remaining points coincide with a center.
            let free: Vec<usize> = (0..n).filter(|i| !chosen[*i]).collect();
            free[rng.random_range(0..free.len())]
        };
        chosen[pick] = true;
        centers.push(points[pick]);
        for (d, p) in nearest.iter_mut().zip(points) {
            *d = d.min(p.squared_distance(&points[pick]));
        }
    }
    centers
}

/// Nearest centroid per point (ties to the lowest index) and the resulting inertia.
pub fn assign(points: &[FeatureVector], centroids: &[FeatureVector]) -> (Vec<usize>, f64) {
    let mut inertia = 0.0;
    let assignments = points
        .iter()
        .map(|p| {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (j, c) in centroids.iter().enumerate() {
                let d = p.squared_distance(c);
                if d < best_d {
                    best_d = d;
                    best = j;
                }
            }
            inertia += best_d;
            best
        })
        .collect();
    (assignments, inertia)
}

pub fn inertia(points: &[FeatureVector], centroids: &[FeatureVector], assignments: &[usize]) -> f64 {
    points
        .iter()
        .zip(assignments)
        .map(|(p, &a)| p.squared_distance(&centroids[a]))
        .sum()
}

fn means(points: &[FeatureVector], assignments: &[usize], k: usize) -> (Vec<FeatureVector>, Vec<usize>) {
    let mut sums = vec![[0.0; DIM]; k];
    let mut counts = vec![0usize; k];
    for (p, &a) in points.iter().zip(assignments) {
        counts[a] += 1;
        for (s, c) in sums[a].iter_mut().zip(p.0.iter()) {
            *s += c;
        }
    }
    let centroids = sums
        .iter()
        .zip(&counts)
        .map(|(s, &n)| {
            if n == 0 {
                FeatureVector::ZERO
            } else {
                FeatureVector(s.map(|x| x / n as f64))
            }
        })
        .collect();
    (centroids, counts)
}

/// Recomputes means; every empty cluster takes over the point farthest from
/// its current centroid (drawn from clusters that can spare one).
fn update(points: &[FeatureVector], assignments: &mut [usize], k: usize) -> Vec<FeatureVector> {
    let (mut centroids, mut counts) = means(points, assignments, k);
    let mut reseeded = false;
    for empty in 0..k {
        if counts[empty] > 0 {
            continue;
        }
        let mut far = None;
        let mut far_d = f64::NEG_INFINITY;
        for (i, p) in points.iter().enumerate() {
            let a = assignments[i];
            if counts[a] < 2 {
                continue;
            }
            let d = p.squared_distance(&centroids[a]);
            if d > far_d {
                far_d = d;
                far = Some(i);
            }
        }
        let i = far.expect("points >= k leaves a cluster with two members");
        counts[assignments[i]] -= 1;
        counts[empty] += 1;
        assignments[i] = empty;
        centroids[empty] = points[i];
        reseeded = true;
    }
    if reseeded {
        centroids = means(points, assignments, k).0;
    }
    centroids
}

fn movement(a: &[FeatureVector], b: &[FeatureVector]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.squared_distance(y).sqrt()).sum()
}

fn lloyd(points: &[FeatureVector], config: &KMeansConfig, restart: usize) -> LloydRun {
    let k = config.k;
    let mut rng = restart_rng(config.seed, restart);
    let mut centroids = kmeans_plus_plus(points, k, &mut rng);
    let mut assignments: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    let mut settled = false;

    while iterations < config.max_iterations {
        iterations += 1;
        let (next, cost) = assign(points, &centroids);
        trace.push(cost);
        if next == assignments {
            converged = true;
            settled = true;
            break;
        }
        assignments = next;
        let updated = update(points, &mut assignments, k);
        let moved = movement(&centroids, &updated);
        centroids = updated;
        if moved <= config.tolerance {
            converged = true;
            break;
        }
    }

    // Closing pass: centroids become the means of a nearest-centroid assignment.
    if !settled {
        let (next, _) = assign(points, &centroids);
        if next != assignments {
            assignments = next;
            centroids = update(points, &mut assignments, k);
        }
    }
    let final_inertia = inertia(points, &centroids, &assignments);
    if trace.last() != Some(&final_inertia) {
        trace.push(final_inertia);
    }
    LloydRun {
        centroids,
        assignments,
        inertia: final_inertia,
        iterations,
        inertia_trace: trace,
        converged,
    }
}
