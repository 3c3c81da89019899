//! Particle swarm minimization with reproducible parallel evaluation.
//!
//! Every particle draws from its own ChaCha stream derived from the master
//! seed, objective values are computed in parallel, and all reductions run in
//! particle order. The result is therefore independent of the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SwarmConfig {
    pub swarm_size: usize,
    pub max_iterations: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Stop when the best value improved by less than `stall_tolerance`
    /// (relative to `max(1, |best|)`) over this many iterations.
    pub stall_iterations: usize,
    pub stall_tolerance: f64,
    pub seed: u64,
    /// Independent swarms; the best result is kept.
    pub restarts: usize,
}

impl Default for SwarmConfig {
    fn default() -> Self {
        Self {
            swarm_size: 100,
            max_iterations: 500,
            inertia: 0.7298,
            cognitive: 1.49618,
            social: 1.49618,
            stall_iterations: 50,
            stall_tolerance: 1e-10,
            seed: 0,
            restarts: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsoOutcome {
    pub position: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub stalled: bool,
}

fn particle_rng(seed: u64, particle: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(particle as u64 + 1);
    rng
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Minimizes `objective` over the box `bounds`. Non-finite objective values
/// count as `+∞`.
pub fn pso<F>(objective: F, bounds: &[(f64, f64)], config: &SwarmConfig) -> PsoOutcome
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let dims = bounds.len();
    let swarm = config.swarm_size.max(1);
    let range: Vec<f64> = bounds.iter().map(|(lo, hi)| hi - lo).collect();
    let mut rngs: Vec<ChaCha8Rng> = (0..swarm).map(|i| particle_rng(config.seed, i)).collect();

    let mut pos: Vec<Vec<f64>> = rngs
        .iter_mut()
        .map(|rng| bounds.iter().map(|&(lo, hi)| if hi > lo { rng.gen_range(lo..=hi) } else { lo }).collect())
        .collect();
    let mut vel: Vec<Vec<f64>> = rngs
        .iter_mut()
        .map(|rng| range.iter().map(|&r| if r > 0.0 { rng.gen_range(-r..=r) } else { 0.0 }).collect())
        .collect();

    let evaluate = |points: &[Vec<f64>]| -> Vec<f64> { points.par_iter().map(|x| sanitize(objective(x))).collect() };

    let mut values = evaluate(&pos);
    let mut evaluations = swarm;
    let mut best_pos = pos.clone();
    let mut best_val = values.clone();
    let mut g = argmin(&best_val);
    let mut history = vec![best_val[g]];
    let mut iterations = 0;
    let mut stalled = false;

    while iterations < config.max_iterations {
        iterations += 1;
        let leader = best_pos[g].clone();
        for (i, rng) in rngs.iter_mut().enumerate() {
            for j in 0..dims {
                let r1: f64 = rng.gen();
                let r2: f64 = rng.gen();
                let mut v = config.inertia * vel[i][j]
                    + config.cognitive * r1 * (best_pos[i][j] - pos[i][j])
                    + config.social * r2 * (leader[j] - pos[i][j]);
                v = v.clamp(-range[j], range[j]);
                let mut x = pos[i][j] + v;
                let (lo, hi) = bounds[j];
                if x < lo || x > hi {
                    x = x.clamp(lo, hi);
                    v = 0.0;
                }
                pos[i][j] = x;
                vel[i][j] = v;
            }
        }
        values = evaluate(&pos);
        evaluations += swarm;
        for i in 0..swarm {
            if values[i] < best_val[i] {
                best_val[i] = values[i];
                best_pos[i].clone_from(&pos[i]);
            }
        }
        g = argmin(&best_val);
        history.push(best_val[g]);
        if iterations >= config.stall_iterations {
            let old = history[iterations - config.stall_iterations];
            let now = best_val[g];
            if now.is_finite() && old - now <= config.stall_tolerance * now.abs().max(1.0) {
                stalled = true;
                break;
            }
        }
    }

    PsoOutcome { position: best_pos[g].clone(), value: best_val[g], iterations, evaluations, stalled }
}

/// Index of the smallest value, the first one on ties.
fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v < values[best] {
            best = i;
        }
    }
    best
}

/// Runs `config.restarts` swarms with consecutive seeds and keeps the best.
pub fn pso_restarts<F>(objective: F, bounds: &[(f64, f64)], config: &SwarmConfig) -> PsoOutcome
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let mut best: Option<PsoOutcome> = None;
    let mut evaluations = 0;
    for r in 0..config.restarts.max(1) {
        let run = pso(&objective, bounds, &SwarmConfig { seed: config.seed.wrapping_add(r as u64), ..config.clone() });
        evaluations += run.evaluations;
        if best.as_ref().is_none_or(|b| run.value < b.value) {
            best = Some(run);
        }
    }
    let mut best = best.expect("at least one restart");
    best.evaluations = evaluations;
    best
}
