//! Maps from unconstrained real parameter vectors to code ensembles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, real, trace, CMat, CVec};
use crate::state::{bloch_pure_vector, CodeEnsemble, DensityMatrix};

/// How each component state is parametrized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Qubit states from `r = s / (1 + |s|)`, three reals per state.
    Bloch,
    /// Pure qubit states along the direction of `s`, three reals per state.
    PureBloch,
    /// `ρ = M†M / tr(M†M)` for a complex `d × d` matrix `M`, `2d²` reals per
    /// state.
    Mtm,
    /// Normalized complex vectors, `2d` reals per state.
    PureVector,
    /// A pure state `Ψ` on `k` blocks of `C^d ⊗ C^d`; block norms give the
    /// weights and partial traces give the states. `2kd²` reals, no separate
    /// weights.
    Measurement,
}

impl Scheme {
    pub fn is_pure(self) -> bool {
        matches!(self, Scheme::PureBloch | Scheme::PureVector)
    }

    fn per_state(self, d: usize) -> usize {
        match self {
            Scheme::Bloch | Scheme::PureBloch => 3,
            Scheme::Mtm | Scheme::Measurement => 2 * d * d,
            Scheme::PureVector => 2 * d,
        }
    }

    fn has_weights(self) -> bool {
        self != Scheme::Measurement
    }

    /// Length of the parameter vector for `k` states of dimension `d`.
    pub fn len(self, k: usize, d: usize) -> usize {
        k * self.per_state(d) + if self.has_weights() { k } else { 0 }
    }

    /// Search box used by the optimizer.
    pub fn bounds(self, k: usize, d: usize) -> Vec<(f64, f64)> {
        let mut b = Vec::with_capacity(self.len(k, d));
        if self.has_weights() {
            b.extend(std::iter::repeat_n((0.0, 1.0), k));
        }
        let state_box = match self {
            Scheme::Bloch => (-BLOCH_BOUND, BLOCH_BOUND),
            _ => (-1.0, 1.0),
        };
        b.extend(std::iter::repeat_n(state_box, k * self.per_state(d)));
        b
    }
}

/// Half-width of the search box for raw Bloch parameters; `|r|` reaches about
/// 0.97 at the corners.
pub const BLOCH_BOUND: f64 = 20.0;

/// Probabilities below this are dropped by the measurement decoder.
const MIN_PROBABILITY: f64 = 1e-14;

/// `|w_i| / Σ|w_j|`, uniform when all are zero.
pub fn normalize_weights(raw: &[f64]) -> Vec<f64> {
    let total: f64 = raw.iter().map(|w| w.abs()).sum();
    if total > 0.0 {
        raw.iter().map(|w| w.abs() / total).collect()
    } else {
        vec![1.0 / raw.len() as f64; raw.len()]
    }
}

fn complex_pairs(x: &[f64]) -> Vec<Complex64> {
    x.chunks_exact(2).map(|p| c(p[0], p[1])).collect()
}

/// Turns the parameter vector `x` into a code ensemble of `k` states on `d`
/// dimensions and `n` copies.
pub fn decode(scheme: Scheme, x: &[f64], k: usize, d: usize, n: usize) -> Result<CodeEnsemble> {
    let expected = scheme.len(k, d);
    if x.len() != expected {
        return Err(Error::Decode(format!("expected {expected} parameters, got {}", x.len())));
    }
    if matches!(scheme, Scheme::Bloch | Scheme::PureBloch) && d != 2 {
        return Err(Error::Decode("Bloch parametrizations need qubits".into()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Decode("non-finite parameter".into()));
    }
    if scheme == Scheme::Measurement {
        return decode_measurement(x, k, d, n);
    }
    let weights = normalize_weights(&x[..k]);
    let body = &x[k..];
    let per = scheme.per_state(d);
    match scheme {
        Scheme::Bloch => {
            let comps = body
                .chunks_exact(per)
                .zip(&weights)
                .map(|(s, &w)| {
                    let norm = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
                    let scale = 1.0 / (1.0 + norm);
                    Ok((w, DensityMatrix::from_bloch([s[0] * scale, s[1] * scale, s[2] * scale])?))
                })
                .collect::<Result<Vec<_>>>()?;
            CodeEnsemble::new(n, comps)
        }
        Scheme::PureBloch => {
            let comps = body
                .chunks_exact(per)
                .zip(&weights)
                .map(|(s, &w)| Ok((w, bloch_pure_vector([s[0], s[1], s[2]]).map_err(|e| Error::Decode(e.to_string()))?)))
                .collect::<Result<Vec<_>>>()?;
            CodeEnsemble::from_pure(n, comps)
        }
        Scheme::PureVector => {
            let comps = body
                .chunks_exact(per)
                .zip(&weights)
                .map(|(s, &w)| {
                    let v = CVec::from_vec(complex_pairs(s));
                    let norm = v.norm();
                    if !(norm > 1e-12) {
                        return Err(Error::Decode("zero state vector".into()));
                    }
                    Ok((w, v / real(norm)))
                })
                .collect::<Result<Vec<_>>>()?;
            CodeEnsemble::from_pure(n, comps)
        }
        Scheme::Mtm => {
            let comps = body
                .chunks_exact(per)
                .zip(&weights)
                .map(|(s, &w)| {
                    let m = CMat::from_row_slice(d, d, &complex_pairs(s));
                    let rho = m.adjoint() * m;
                    let t = trace(&rho).re;
                    if !(t > 1e-14) {
                        return Err(Error::Decode("M†M has vanishing trace".into()));
                    }
                    Ok((w, DensityMatrix::new(hermitize(rho / real(t)))?))
                })
                .collect::<Result<Vec<_>>>()?;
            CodeEnsemble::new(n, comps)
        }
        Scheme::Measurement => unreachable!("handled above"),
    }
}

fn hermitize(m: CMat) -> CMat {
    (&m + m.adjoint()).scale(0.5)
}

fn decode_measurement(x: &[f64], k: usize, d: usize, n: usize) -> Result<CodeEnsemble> {
    let psi = CVec::from_vec(complex_pairs(x));
    let norm = psi.norm();
    if !(norm > 1e-12) {
        return Err(Error::Decode("zero measurement state".into()));
    }
    let psi = psi / real(norm);
    let block = d * d;
    let mut comps = Vec::with_capacity(k);
    for j in 0..k {
        let phi = psi.rows(j * block, block);
        let p = phi.norm_squared();
        if p < MIN_PROBABILITY {
            log::debug!("dropping measurement outcome {j} with probability {p:e}");
            continue;
        }
        // rows index the kept factor, columns the traced-out one
        let m = CMat::from_fn(d, d, |a1, a2| phi[a1 * d + a2]) / real(p.sqrt());
        comps.push((p, hermitize(&m * m.adjoint())));
    }
    let total: f64 = comps.iter().map(|(p, _)| p).sum();
    let comps = comps
        .into_iter()
        .map(|(p, rho)| Ok((p / total, DensityMatrix::new(rho)?)))
        .collect::<Result<Vec<_>>>()?;
    CodeEnsemble::new(n, comps)
}
