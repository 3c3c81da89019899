//! Coherent information of arbitrary codes from output and environment
//! blocks.

use crate::channel::KrausChannel;
use crate::error::Result;
use crate::linalg::CMat;
use crate::rep::{irrep_context, partitions_of, Partition};
use crate::state::CodeEnsemble;

use super::blocks::{block_weight, clipped_spectrum, entropy_share, normalized_entropy, per_lambda, skipped_budget, WEIGHT_CUT};
use super::breakdown::{CIBreakdown, Formula, LambdaTerm};
use super::check_input_dim;

struct Side {
    weight: f64,
    share: f64,
    budget: f64,
}

fn side(lambda: &Partition, d: usize, weights: &[f64], outputs: &[CMat], spectra: &[Vec<f64>]) -> Result<Option<Side>> {
    if lambda.rows() > d {
        return Ok(None);
    }
    let c = block_weight(lambda, weights, spectra);
    if c < WEIGHT_CUT {
        return Ok(Some(Side { weight: c, share: 0.0, budget: skipped_budget(lambda, d, c) }));
    }
    let ctx = irrep_context(lambda, d)?;
    let mut block = CMat::zeros(ctx.dim(), ctx.dim());
    for (&x, out) in weights.iter().zip(outputs) {
        block += ctx.eval(out)? * crate::linalg::real(x);
    }
    match normalized_entropy(&block)? {
        Some(s) => Ok(Some(Side { weight: c, share: entropy_share(lambda, c, s), budget: 0.0 })),
        None => Ok(Some(Side { weight: c, share: 0.0, budget: skipped_budget(lambda, d, c) })),
    }
}

/// `I_c = S(B^n) - S(E^n)` with both entropies expanded over Young diagrams.
pub fn ci_mixed(channel: &KrausChannel, code: &CodeEnsemble) -> Result<CIBreakdown> {
    check_input_dim(channel, code)?;
    let comp = channel.complementary();
    let weights = code.weights();
    let mut tau = Vec::with_capacity(code.k());
    let mut omega = Vec::with_capacity(code.k());
    for c in code.components() {
        tau.push(channel.apply(c.state.matrix())?);
        omega.push(comp.apply(c.state.matrix())?);
    }
    let tau_spec: Vec<Vec<f64>> = tau.iter().map(clipped_spectrum).collect();
    let omega_spec: Vec<Vec<f64>> = omega.iter().map(clipped_spectrum).collect();
    let (d_b, d_e) = (channel.d_out(), channel.d_env());

    let lambdas = partitions_of(code.n(), d_b.max(d_e));
    let rows = per_lambda(&lambdas, |lambda| {
        let b = side(lambda, d_b, &weights, &tau, &tau_spec)?;
        let e = side(lambda, d_e, &weights, &omega, &omega_spec)?;
        Ok((b, e))
    })?;

    let mut total = 0.0;
    let mut budget = 0.0;
    let mut terms = Vec::with_capacity(lambdas.len());
    for (lambda, (b, e)) in lambdas.into_iter().zip(rows) {
        let b_share = b.as_ref().map_or(0.0, |s| s.share);
        let e_share = e.as_ref().map_or(0.0, |s| s.share);
        budget += b.as_ref().map_or(0.0, |s| s.budget) + e.as_ref().map_or(0.0, |s| s.budget);
        let contribution = b_share - e_share;
        total += contribution;
        terms.push(LambdaTerm {
            lambda,
            weight: b.as_ref().map_or(0.0, |s| s.weight),
            env_weight: Some(e.as_ref().map_or(0.0, |s| s.weight)),
            contribution,
        });
    }
    Ok(CIBreakdown { formula: Formula::Mixed, n: code.n(), total, error_budget: budget, terms })
}
