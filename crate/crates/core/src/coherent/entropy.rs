//! Von Neumann and Shannon entropies in bits.

use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, CMat, EIGEN_FLOOR};
use crate::state::DensityMatrix;

/// `-Σ p log2 p` over the strictly positive entries.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&v| v > 0.0).map(|&v| -v * v.log2()).sum()
}

/// Entropy of a spectrum. Eigenvalues in `[-1e-10, 0)` are roundoff and
/// clipped to zero; anything more negative is an error.
pub fn entropy_from_eigenvalues(w: &[f64]) -> Result<f64> {
    if let Some(&low) = w.iter().find(|&&v| v < -EIGEN_FLOOR) {
        return Err(Error::NegativeEigenvalue(low));
    }
    Ok(shannon_entropy(w))
}

/// Entropy of a Hermitian matrix of unit trace.
pub fn von_neumann_entropy(m: &CMat) -> Result<f64> {
    entropy_from_eigenvalues(&eigvalsh(m))
}

pub fn entropy(rho: &DensityMatrix) -> f64 {
    shannon_entropy(&rho.eigenvalues())
}
