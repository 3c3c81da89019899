//! Coherent information of pure codes from output and environment blocks.
//!
//! For pure inputs the output and environment blocks of each diagram carry
//! the same weight, so the entropy difference reduces to a single sum over
//! diagrams with at most `d_B` rows.

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{outer, real, CMat};
use crate::rep::{irrep_context, partitions_of};
use crate::state::CodeEnsemble;

use super::blocks::{block_weight, clipped_spectrum, normalized_entropy, per_lambda, skipped_budget, WEIGHT_CUT};
use super::breakdown::{CIBreakdown, Formula, LambdaTerm};
use super::check_input_dim;

/// `I_c = Σ_λ c_λ (S(σ^N_λ) - S(σ^{N^c}_λ))`. Requires a pure code and an
/// environment at least as large as the output.
pub fn ci_pure(channel: &KrausChannel, code: &CodeEnsemble) -> Result<CIBreakdown> {
    check_input_dim(channel, code)?;
    let (d_b, d_e) = (channel.d_out(), channel.d_env());
    if d_b > d_e {
        return Err(Error::EnvironmentTooSmall { d_out: d_b, d_env: d_e });
    }
    let vectors = code.pure_vectors()?;
    let comp = channel.complementary();
    let weights = code.weights();
    let mut tau = Vec::with_capacity(code.k());
    let mut omega = Vec::with_capacity(code.k());
    for v in &vectors {
        let rho = outer(v, v);
        tau.push(channel.apply(&rho)?);
        omega.push(comp.apply(&rho)?);
    }
    let spectra: Vec<Vec<f64>> = tau.iter().map(clipped_spectrum).collect();

    let mix = |d: usize, lambda: &crate::rep::Partition, outputs: &[CMat]| -> Result<CMat> {
        let ctx = irrep_context(lambda, d)?;
        let mut block = CMat::zeros(ctx.dim(), ctx.dim());
        for (&x, out) in weights.iter().zip(outputs) {
            block += ctx.eval(out)? * real(x);
        }
        Ok(block)
    };

    let lambdas = partitions_of(code.n(), d_b);
    let rows = per_lambda(&lambdas, |lambda| {
        let c = block_weight(lambda, &weights, &spectra);
        if c < WEIGHT_CUT {
            return Ok((c, 0.0, skipped_budget(lambda, d_e, c)));
        }
        match (normalized_entropy(&mix(d_b, lambda, &tau)?)?, normalized_entropy(&mix(d_e, lambda, &omega)?)?) {
            (Some(s_b), Some(s_e)) => Ok((c, c * (s_b - s_e), 0.0)),
            _ => Ok((c, 0.0, skipped_budget(lambda, d_e, c))),
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
            LambdaTerm { lambda, weight, env_weight: Some(weight), contribution }
        })
        .collect();
    Ok(CIBreakdown { formula: Formula::Pure, n: code.n(), total, error_budget: budget, terms })
}
