//! Coherent information of pure codes from output and reference-output
//! blocks.
//!
//! With the reference purifying the ensemble, `ρ_RB = Σ_ij √(x_i x_j)
//! |i⟩⟨j| ⊗ σ_ij^{⊗n}` with `σ_ij = N(|ψ_i⟩⟨ψ_j|)`. Each diagram contributes a
//! `k × k` block matrix of irrep matrices, so the environment dimension never
//! enters.

use crate::channel::KrausChannel;
use crate::error::Result;
use crate::linalg::{outer, real, CMat};
use crate::rep::{irrep_context, partitions_of};
use crate::state::CodeEnsemble;

use super::blocks::{block_weight, clipped_spectrum, normalized_entropy, per_lambda, skipped_budget, WEIGHT_CUT};
use super::breakdown::{CIBreakdown, Formula, LambdaTerm};
use super::check_input_dim;

/// `I_c = Σ_λ c_λ (S(σ_λ) - S(ω_λ))` for a pure code.
pub fn ci_purified(channel: &KrausChannel, code: &CodeEnsemble) -> Result<CIBreakdown> {
    check_input_dim(channel, code)?;
    let vectors = code.pure_vectors()?;
    let weights = code.weights();
    let k = vectors.len();
    let d_b = channel.d_out();
    let mut sigma = vec![Vec::with_capacity(k); k];
    for (i, vi) in vectors.iter().enumerate() {
        for vj in &vectors {
            sigma[i].push(channel.apply(&outer(vi, vj))?);
        }
    }
    let spectra: Vec<Vec<f64>> = (0..k).map(|i| clipped_spectrum(&sigma[i][i])).collect();

    let lambdas = partitions_of(code.n(), d_b);
    let rows = per_lambda(&lambdas, |lambda| {
        let c = block_weight(lambda, &weights, &spectra);
        if c < WEIGHT_CUT {
            return Ok((c, 0.0, skipped_budget(lambda, d_b, c)));
        }
        let ctx = irrep_context(lambda, d_b)?;
        let m = ctx.dim();
        let mut diag = CMat::zeros(m, m);
        let mut joint = CMat::zeros(k * m, k * m);
        for i in 0..k {
            for j in i..k {
                if weights[i] == 0.0 || weights[j] == 0.0 {
                    continue;
                }
                let q = ctx.eval(&sigma[i][j])? * real((weights[i] * weights[j]).sqrt());
                if i == j {
                    diag += &q;
                } else {
                    joint.view_mut((j * m, i * m), (m, m)).copy_from(&q.adjoint());
                }
                joint.view_mut((i * m, j * m), (m, m)).copy_from(&q);
            }
        }
        match (normalized_entropy(&diag)?, normalized_entropy(&joint)?) {
            (Some(s_b), Some(s_rb)) => Ok((c, c * (s_b - s_rb), 0.0)),
            _ => Ok((c, 0.0, skipped_budget(lambda, d_b, c))),
        }
    })?;

    let mut total = 0.0;
    let mut budget = 0.0;
    let terms = lambdas
        .into_iter()
        .zip(rows)
        .map(|(lambda, (weight, contribution, skipped))| {
            total += contribution;
            budget += skipped;
            LambdaTerm { lambda, weight, env_weight: None, contribution }
        })
        .collect();
    Ok(CIBreakdown { formula: Formula::Purified, n: code.n(), total, error_budget: budget, terms })
}
