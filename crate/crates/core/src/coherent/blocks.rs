//! Pieces shared by the block-decomposed evaluators.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, trace, CMat};
use crate::rep::{log2_dim_gl_irrep, log2_dim_sym_irrep, schur_poly_real, Partition};

use super::entropy::von_neumann_entropy;

/// Blocks with weight below this are skipped and charged to the error budget.
pub const WEIGHT_CUT: f64 = 1e-15;

/// Eigenvalues with roundoff negatives clipped to zero.
pub fn clipped_spectrum(m: &CMat) -> Vec<f64> {
    eigvalsh(m).into_iter().map(|v| v.max(0.0)).collect()
}

/// `c_λ = dim S_λ Σ_i x_i s_λ(spec_i)`.
pub fn block_weight(lambda: &Partition, weights: &[f64], spectra: &[Vec<f64>]) -> f64 {
    let char_sum: f64 = weights.iter().zip(spectra).map(|(&x, s)| x * schur_poly_real(lambda, s)).sum();
    log2_dim_sym_irrep(lambda).exp2() * char_sum
}

/// Entropy of `m / tr(m)`, or `None` when the block evaluates to zero. That
/// happens when `c_λ` sits barely above the cut on roundoff alone.
pub fn normalized_entropy(m: &CMat) -> Result<Option<f64>> {
    let t = trace(m).re;
    if t.is_nan() {
        return Err(Error::InvalidState("block trace is NaN".into()));
    }
    if t <= 0.0 {
        return Ok(None);
    }
    von_neumann_entropy(&(m / crate::linalg::real(t))).map(Some)
}

/// Budget charged for dropping a block of weight `c`.
pub fn skipped_budget(lambda: &Partition, d: usize, c: f64) -> f64 {
    if c <= 0.0 {
        return 0.0;
    }
    c * (log2_dim_gl_irrep(lambda, d) + log2_dim_sym_irrep(lambda)) - c * c.log2()
}

/// `c (-log c + S + log dim S_λ)`: the share of one block in the entropy of a
/// block-diagonal state.
pub fn entropy_share(lambda: &Partition, c: f64, block_entropy: f64) -> f64 {
    c * (-c.log2() + block_entropy + log2_dim_sym_irrep(lambda))
}

/// Evaluates `f` on every diagram in parallel, keeping input order.
pub fn per_lambda<T: Send>(lambdas: &[Partition], f: impl Fn(&Partition) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    lambdas.par_iter().map(f).collect()
}
