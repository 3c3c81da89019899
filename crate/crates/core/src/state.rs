//! Density matrices and permutation-invariant code ensembles.

use log::debug;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, expect_square, hermitian_deviation, hermitian_part, outer, real, trace, CMat, CVec};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;
const WEIGHT_TOL: f64 = 1e-12;

/// Components whose largest eigenvalue reaches `1 - PURITY_TOL` are treated as
/// pure and projected onto their top eigenvector on the pure-state paths.
pub const PURITY_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    m: CMat,
}

impl DensityMatrix {
    /// Validates hermiticity, unit trace and positivity.
    pub fn new(m: CMat) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::ShapeMismatch { expected: "non-empty square matrix".into(), got: format!("{}x{}", m.nrows(), m.ncols()) });
        }
        let dev = hermitian_deviation(&m);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = trace(&m);
        if (tr - real(1.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let m = hermitian_part(&m);
        let (w, _) = eigh(&m);
        if let Some(&low) = w.iter().find(|&&v| v < -PSD_TOL) {
            return Err(Error::NegativeEigenvalue(low));
        }
        Ok(Self { m })
    }

    /// `|ψ⟩⟨ψ|` for a unit vector.
    pub fn pure(psi: &CVec) -> Result<Self> {
        let norm = psi.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!("state vector has norm {norm}")));
        }
        Ok(Self { m: outer(psi, psi) })
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self { m: CMat::identity(d, d) / real(d as f64) }
    }

    /// Qubit state `(I + r·σ)/2`; requires `|r| <= 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let len = bloch_length(r);
        if len > 1.0 + 1e-12 {
            return Err(Error::InvalidState(format!("Bloch vector length {len} exceeds 1")));
        }
        let m = CMat::from_row_slice(
            2,
            2,
            &[real((1.0 + r[2]) / 2.0), Complex64::new(r[0], -r[1]) / 2.0, Complex64::new(r[0], r[1]) / 2.0, real((1.0 - r[2]) / 2.0)],
        );
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut w = eigh(&self.m).0;
        w.sort_by(f64::total_cmp);
        w
    }

    /// Largest eigenvalue with a unit eigenvector.
    pub fn top_eigenpair(&self) -> (f64, CVec) {
        let (w, v) = eigh(&self.m);
        let (idx, &val) = w.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("non-empty");
        (val, v.column(idx).into_owned())
    }

    /// Bloch vector of a qubit state.
    pub fn bloch(&self) -> Result<[f64; 3]> {
        expect_square(&self.m, 2, "qubit state")?;
        let off = self.m[(1, 0)];
        Ok([2.0 * off.re, 2.0 * off.im, (self.m[(0, 0)] - self.m[(1, 1)]).re])
    }
}

pub fn bloch_length(r: [f64; 3]) -> f64 {
    (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt()
}

/// Pure qubit state along the direction of `r` (its length is ignored):
/// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
pub fn bloch_pure_vector(r: [f64; 3]) -> Result<CVec> {
    let len = bloch_length(r);
    if !(len > 0.0) || !len.is_finite() {
        return Err(Error::InvalidState("zero Bloch vector has no direction".into()));
    }
    let theta = (r[2] / len).clamp(-1.0, 1.0).acos();
    let phi = r[1].atan2(r[0]);
    Ok(CVec::from_vec(vec![real((theta / 2.0).cos()), Complex64::from_polar((theta / 2.0).sin(), phi)]))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub weight: f64,
    pub state: DensityMatrix,
    /// Present when the state is pure up to [`PURITY_TOL`].
    pub vector: Option<CVec>,
}

/// `ρ_(n) = Σ_i x_i ρ_i^{⊗n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeEnsemble {
    n: usize,
    d: usize,
    components: Vec<Component>,
}

impl CodeEnsemble {
    pub fn new(n: usize, components: Vec<(f64, DensityMatrix)>) -> Result<Self> {
        let components = components
            .into_iter()
            .map(|(weight, state)| {
                let (top, v) = state.top_eigenpair();
                let vector = (top >= 1.0 - PURITY_TOL).then(|| {
                    if top < 1.0 - 1e-14 {
                        debug!("projecting near-pure component (distance {:e})", 1.0 - top);
                    }
                    v
                });
                Component { weight, state, vector }
            })
            .collect();
        Self::validated(n, components)
    }

    /// Ensemble of pure states given by unit vectors.
    pub fn from_pure(n: usize, components: Vec<(f64, CVec)>) -> Result<Self> {
        let components = components
            .into_iter()
            .map(|(weight, v)| Ok(Component { weight, state: DensityMatrix::pure(&v)?, vector: Some(v) }))
            .collect::<Result<Vec<_>>>()?;
        Self::validated(n, components)
    }

    fn validated(n: usize, components: Vec<Component>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidEnsemble("n must be at least 1".into()));
        }
        let d = components.first().ok_or_else(|| Error::InvalidEnsemble("no components".into()))?.state.dim();
        if components.iter().any(|c| c.state.dim() != d) {
            return Err(Error::InvalidEnsemble("components have different dimensions".into()));
        }
        let weights: Vec<f64> = components.iter().map(|c| c.weight).collect();
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|&w| !(w >= 0.0)) || (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidDistribution(weights));
        }
        Ok(Self { n, d, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Single-copy dimension.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn weights(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.weight).collect()
    }

    /// The same states on a different number of copies.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::validated(n, self.components.clone())
    }

    pub fn is_pure(&self) -> bool {
        self.components.iter().all(|c| c.vector.is_some())
    }

    /// Unit vectors of all components, or the first component that is not pure.
    pub fn pure_vectors(&self) -> Result<Vec<CVec>> {
        self.components
            .iter()
            .enumerate()
            .map(|(index, c)| {
                c.vector.clone().ok_or_else(|| Error::NotPure { index, largest: c.state.top_eigenpair().0 })
            })
            .collect()
    }

    /// For two-component codes, replaces weights within `tol` of 1/2 by
    /// exactly 1/2.
    pub fn snap_half(&self, tol: f64) -> Self {
        let mut out = self.clone();
        if out.k() == 2 && (out.components[0].weight - 0.5).abs() <= tol {
            out.components[0].weight = 0.5;
            out.components[1].weight = 0.5;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn bloch_round_trip() {
        let r = [0.3, -0.2, 0.5];
        let rho = DensityMatrix::from_bloch(r).unwrap();
        let back = rho.bloch().unwrap();
        for i in 0..3 {
            assert!((back[i] - r[i]).abs() < 1e-15);
        }
        assert!(DensityMatrix::from_bloch([1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn pure_vector_has_requested_bloch_direction() {
        let r = [0.3, -0.4, 0.5];
        let v = bloch_pure_vector(r).unwrap();
        let rho = DensityMatrix::pure(&v).unwrap();
        let b = rho.bloch().unwrap();
        let len = bloch_length(r);
        for i in 0..3 {
            assert!((b[i] - r[i] / len).abs() < 1e-14);
        }
    }

    #[test]
    fn ensemble_validation() {
        let a = DensityMatrix::maximally_mixed(2);
        assert!(CodeEnsemble::new(3, vec![(0.5, a.clone()), (0.6, a.clone())]).is_err());
        assert!(CodeEnsemble::new(0, vec![(1.0, a.clone())]).is_err());
        assert!(CodeEnsemble::new(3, vec![(1.0, a.clone()), (0.0, DensityMatrix::maximally_mixed(3))]).is_err());
        let code = CodeEnsemble::new(3, vec![(1.0, a)]).unwrap();
        assert!(!code.is_pure());
        assert!(matches!(code.pure_vectors(), Err(Error::NotPure { .. })));
    }

    #[test]
    fn near_pure_components_are_projected() {
        let rho = DensityMatrix::from_bloch([0.0, 0.0, 1.0 - 1e-10]).unwrap();
        let code = CodeEnsemble::new(2, vec![(1.0, rho)]).unwrap();
        let v = &code.pure_vectors().unwrap()[0];
        assert!((v[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_states() {
        let mut m = CMat::identity(2, 2) / real(2.0);
        m[(0, 1)] = real(0.1);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian(_))));
        let m = CMat::from_diagonal(&CVec::from_vec(vec![real(1.5), real(-0.5)]));
        assert!(matches!(DensityMatrix::new(m), Err(Error::NegativeEigenvalue(_))));
        let ok = DensityMatrix::new(CMat::identity(2, 2) / real(2.0)).unwrap();
        assert!(max_abs(&(ok.matrix() - DensityMatrix::maximally_mixed(2).matrix())) < 1e-16);
    }

    #[test]
    fn snapping() {
        let a = DensityMatrix::from_bloch([0.0, 0.0, 1.0]).unwrap();
        let b = DensityMatrix::from_bloch([1.0, 0.0, 0.0]).unwrap();
        let code = CodeEnsemble::new(2, vec![(0.5004, a), (0.4996, b)]).unwrap();
        assert_eq!(code.snap_half(1e-3).weights(), vec![0.5, 0.5]);
        assert_eq!(code.snap_half(1e-4).weights(), vec![0.5004, 0.4996]);
    }
}
