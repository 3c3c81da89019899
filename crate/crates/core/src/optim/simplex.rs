//! Threshold comparison across the Pauli channel simplex.
//!
//! Error distributions `(q_1, q_2, q_3) = (sin²θ cos²ϕ, sin²θ sin²ϕ, cos²θ)`
//! are sampled on a grid of angles with spacing `δ = π / 2^e`, taking
//! `θ, ϕ ∈ {0, δ, ..., π/2 - δ}`. Along each ray `(1 - x, x q)` the code found
//! at the hashing threshold is re-evaluated to find its own threshold.

use serde::{Deserialize, Serialize};

use super::threshold::{threshold, CodeSource, POSITIVITY_CUT};
use super::{optimize_ci, Ansatz, SwarmConfig};
use crate::analytic::{hashing_threshold, pauli_antidegradable, ray_point};
use crate::channel::KrausChannel;
use crate::coherent::{coherent_information, Formula};
use crate::error::Result;

/// Rays have length one half.
const RAY_LENGTH: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimplexConfig {
    /// Grid spacing `π / 2^exponent`.
    pub exponent: u32,
    pub n_values: Vec<usize>,
    pub phis: Vec<f64>,
    pub swarm: SwarmConfig,
    pub tolerance: f64,
}

impl Default for SimplexConfig {
    fn default() -> Self {
        use std::f64::consts::PI;
        Self {
            exponent: 6,
            n_values: vec![5, 10, 15],
            phis: vec![PI / 8.0, PI / 4.0, PI / 2.0],
            swarm: SwarmConfig::default(),
            tolerance: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    pub theta_index: usize,
    pub phi_index: usize,
    pub q: [f64; 3],
    pub n: usize,
    pub code_phi: f64,
    pub hashing_threshold: Option<f64>,
    pub code_threshold: Option<f64>,
    /// Code threshold minus hashing threshold; positive means superadditivity.
    pub difference: Option<f64>,
    pub skipped: bool,
}

/// Grid rays as `(θ index, ϕ index, q)`.
pub fn simplex_rays(exponent: u32) -> Vec<(usize, usize, [f64; 3])> {
    let steps = 1usize << exponent.saturating_sub(1);
    let delta = std::f64::consts::PI / (1u64 << exponent) as f64;
    let mut rays = Vec::with_capacity(steps * steps);
    for ti in 0..steps {
        for pi in 0..steps {
            let (t, p) = (ti as f64 * delta, pi as f64 * delta);
            let (st, ct) = (t.sin().powi(2), t.cos().powi(2));
            let (cp, sp) = (p.cos().powi(2), p.sin().powi(2));
            let q = [st * cp, st * sp, ct];
            let total: f64 = q.iter().sum();
            rays.push((ti, pi, [q[0] / total, q[1] / total, q[2] / total]));
        }
    }
    rays
}

/// First antidegradable point along the ray, scanning in steps of `1e-3`.
fn antidegradable_start(q: [f64; 3]) -> Option<f64> {
    (1..=(RAY_LENGTH * 1000.0) as usize)
        .map(|i| i as f64 * 1e-3)
        .find(|&x| pauli_antidegradable(ray_point(q, x)).unwrap_or(false))
}

/// Hashing threshold, optimized code and code threshold for one ray.
pub fn simplex_point(q: [f64; 3], n: usize, phi: f64, swarm: &SwarmConfig, tol: f64) -> Result<(Option<f64>, Option<f64>)> {
    let Ok(x_hash) = hashing_threshold(q) else { return Ok((None, None)) };
    if x_hash > RAY_LENGTH {
        return Ok((None, None));
    }
    let ansatz = Ansatz::NonorthogonalPair { phi: Some(phi) };
    let channel = KrausChannel::pauli(ray_point(q, x_hash))?;
    let best = optimize_ci(&channel, n, &ansatz, swarm)?;
    let family = |x: f64| KrausChannel::pauli(ray_point(q, x));
    let source = CodeSource::Fixed(best.code.clone());
    let at_hash = best.ci.total;
    let bracket = if at_hash > POSITIVITY_CUT {
        (x_hash, antidegradable_start(q).unwrap_or(RAY_LENGTH))
    } else {
        (0.0, x_hash)
    };
    // a code with no positive coherent information anywhere has no threshold
    if bracket.0 == 0.0 {
        let ci0 = coherent_information(&family(0.0)?, &best.code, Formula::Auto)?.total;
        if ci0 <= POSITIVITY_CUT {
            return Ok((Some(x_hash), None));
        }
    }
    match threshold(&family, &source, n, bracket, tol) {
        Ok(t) => Ok((Some(x_hash), Some(t.threshold))),
        Err(crate::Error::NoBracket(msg)) => {
            log::warn!("no threshold bracket along {q:?}: {msg}");
            Ok((Some(x_hash), None))
        }
        Err(e) => Err(e),
    }
}

/// Runs [`simplex_point`] for every ray, copy count and code angle.
pub fn simplex_scan(config: &SimplexConfig) -> Result<Vec<SimplexPoint>> {
    let mut out = Vec::new();
    for (theta_index, phi_index, q) in simplex_rays(config.exponent) {
        for &n in &config.n_values {
            for &code_phi in &config.phis {
                let (hashing, code) = simplex_point(q, n, code_phi, &config.swarm, config.tolerance)?;
                let difference = hashing.zip(code).map(|(h, c)| c - h);
                out.push(SimplexPoint {
                    theta_index,
                    phi_index,
                    q,
                    n,
                    code_phi,
                    hashing_threshold: hashing,
                    code_threshold: code,
                    difference,
                    skipped: hashing.is_none(),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_size_and_nesting() {
        let fine = simplex_rays(6);
        assert_eq!(fine.len(), 32 * 32);
        let coarse = simplex_rays(5);
        assert_eq!(coarse.len(), 16 * 16);
        for (ti, pi, q) in coarse {
            let (_, _, qf) = fine.iter().find(|(a, b, _)| *a == 2 * ti && *b == 2 * pi).unwrap();
            for k in 0..3 {
                assert!((q[k] - qf[k]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn two_pauli_ray_is_on_the_grid() {
        let rays = simplex_rays(6);
        assert!(rays.iter().any(|(_, _, q)| (q[0] - 0.5).abs() < 1e-12 && q[1].abs() < 1e-12 && (q[2] - 0.5).abs() < 1e-12));
    }

    #[test]
    fn antidegradable_start_on_depolarizing_ray() {
        let x = antidegradable_start([1.0 / 3.0; 3]).unwrap();
        assert!((x - 0.25).abs() < 1.5e-3);
    }
}
