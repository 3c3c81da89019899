//! Code families searched by the optimizer.

use serde::{Deserialize, Serialize};

use super::decode::{decode, Scheme};
use crate::channel::paulis;
use crate::coherent::Formula;
use crate::error::{Error, Result};
use crate::linalg::{c, expm_hermitian, real, CMat, CVec};
use crate::state::CodeEnsemble;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Ansatz {
    /// `k` free states with free weights.
    FreeKState { k: usize, scheme: Scheme },
    /// `½ (U|0⟩⟨0|U†)^{⊗n} + ½ (U|ψ⟩⟨ψ|U†)^{⊗n}` with
    /// `|ψ⟩ = cos φ |0⟩ + e^{iθ} sin φ |1⟩` and `U = exp(i(a·σ + b I))`.
    /// `φ` is optimized when not fixed.
    NonorthogonalPair { phi: Option<f64> },
}

impl Ansatz {
    pub fn dims(&self, d: usize) -> usize {
        match self {
            Ansatz::FreeKState { k, scheme } => scheme.len(*k, d),
            Ansatz::NonorthogonalPair { phi } => 5 + usize::from(phi.is_none()),
        }
    }

    pub fn bounds(&self, d: usize) -> Vec<(f64, f64)> {
        use std::f64::consts::{FRAC_PI_2, PI};
        match self {
            Ansatz::FreeKState { k, scheme } => scheme.bounds(*k, d),
            Ansatz::NonorthogonalPair { phi } => {
                let mut b = vec![(-PI, PI); 5];
                if phi.is_none() {
                    b.push((0.0, FRAC_PI_2));
                }
                b
            }
        }
    }

    /// Evaluator used for codes of this family.
    pub fn formula(&self) -> Formula {
        match self {
            Ansatz::FreeKState { scheme, .. } if !scheme.is_pure() => Formula::Mixed,
            _ => Formula::Purified,
        }
    }

    pub fn decode(&self, x: &[f64], d: usize, n: usize) -> Result<CodeEnsemble> {
        match self {
            Ansatz::FreeKState { k, scheme } => decode(*scheme, x, *k, d, n),
            Ansatz::NonorthogonalPair { phi } => {
                if d != 2 {
                    return Err(Error::Decode("the non-orthogonal pair ansatz is for qubits".into()));
                }
                if x.len() != self.dims(d) {
                    return Err(Error::Decode(format!("expected {} parameters, got {}", self.dims(d), x.len())));
                }
                let angle = phi.unwrap_or_else(|| x[5]);
                nonorthogonal_pair(n, [x[0], x[1], x[2]], x[3], x[4], angle)
            }
        }
    }
}

/// `exp(i(a·σ + b I))`.
pub fn ansatz_unitary(a: [f64; 3], b: f64) -> CMat {
    let s = paulis();
    let h = &s[1] * real(a[0]) + &s[2] * real(a[1]) + &s[3] * real(a[2]) + &s[0] * real(b);
    // exp(i h) = exp(-i (-h))
    expm_hermitian(&(-h))
}

/// The code `½ (U|0⟩)^{⊗n} + ½ (U|ψ⟩)^{⊗n}` with
/// `|ψ⟩ = cos φ |0⟩ + e^{iθ} sin φ |1⟩`.
pub fn nonorthogonal_pair(n: usize, a: [f64; 3], b: f64, theta: f64, phi: f64) -> Result<CodeEnsemble> {
    let u = ansatz_unitary(a, b);
    let zero = CVec::from_vec(vec![real(1.0), real(0.0)]);
    let psi = CVec::from_vec(vec![real(phi.cos()), c(theta.cos(), theta.sin()) * phi.sin()]);
    CodeEnsemble::from_pure(n, vec![(0.5, &u * zero), (0.5, &u * psi)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn unitary_is_unitary() {
        let u = ansatz_unitary([0.3, -1.2, 0.5], 0.7);
        assert!(max_abs(&(&u * u.adjoint() - CMat::identity(2, 2))) < 1e-14);
        // a = (π/2, 0, 0) gives i X
        let u = ansatz_unitary([std::f64::consts::FRAC_PI_2, 0.0, 0.0], 0.0);
        assert!((u[(0, 1)] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn pair_overlap_is_cos_phi() {
        let code = nonorthogonal_pair(3, [0.4, 0.1, -0.9], 0.2, 1.1, 0.6).unwrap();
        let v = code.pure_vectors().unwrap();
        let overlap = v[0].dotc(&v[1]).norm();
        assert!((overlap - 0.6f64.cos()).abs() < 1e-14);
    }

    #[test]
    fn dims_and_formula() {
        let free = Ansatz::FreeKState { k: 2, scheme: Scheme::Bloch };
        assert_eq!(free.dims(2), 8);
        assert_eq!(free.formula(), Formula::Mixed);
        let pair = Ansatz::NonorthogonalPair { phi: Some(0.5) };
        assert_eq!(pair.dims(2), 5);
        assert_eq!(pair.bounds(2).len(), 5);
        assert_eq!(pair.formula(), Formula::Purified);
        assert_eq!(Ansatz::NonorthogonalPair { phi: None }.dims(2), 6);
    }

    #[test]
    fn serde_tags() {
        let a: Ansatz = serde_json::from_str(r#"{"kind":"free_k_state","k":2,"scheme":"pure_bloch"}"#).unwrap();
        assert_eq!(a, Ansatz::FreeKState { k: 2, scheme: Scheme::PureBloch });
        let b: Ansatz = serde_json::from_str(r#"{"kind":"nonorthogonal_pair","phi":null}"#).unwrap();
        assert_eq!(b, Ansatz::NonorthogonalPair { phi: None });
    }
}
