//! Numeric irrep matrices `q_λ(A)` of `GL(d)` for arbitrary square `A`.
//!
//! For `d = 2` with moderate degree, or positive semidefinite input, the
//! explicit polynomial formula is used. Otherwise `A` is factored into unitary
//! and diagonal pieces. Diagonal matrices act by `∏_k σ_k^{w_k}` on each weight
//! vector and unitaries are exponentiated from the Lie algebra,
//! `q_λ(e^L) = e^{φ_λ(L)}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use super::gl2::gl2_irrep;
use super::lie::LieGenerators;
use super::partition::Partition;
use crate::error::{Error, Result};
use crate::linalg::{eigh, expect_square, expm_hermitian, hermitian_deviation, max_abs, powi, unitary_log, CMat};

/// Above this degree the explicit `GL(2)` formula is only trusted for positive
/// semidefinite input; general input loses precision to cancellation.
pub const GL2_EXPLICIT_MAX_DEGREE: usize = 16;

/// Reusable evaluator of `q_λ` for fixed `λ` and `d`.
#[derive(Clone, Debug)]
pub struct GlIrrep {
    lambda: Partition,
    d: usize,
    gens: LieGenerators,
    /// weight vector of each basis pattern
    weights: Vec<Vec<usize>>,
}

impl GlIrrep {
    pub fn new(lambda: &Partition, d: usize) -> Result<Self> {
        if lambda.rows() > d {
            return Err(Error::TooManyRows { parts: lambda.parts().to_vec(), d });
        }
        let gens = LieGenerators::new(lambda, d)?;
        let weights = gens.patterns().iter().map(|p| p.weights()).collect();
        Ok(Self { lambda: lambda.clone(), d, gens, weights })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn generators(&self) -> &LieGenerators {
        &self.gens
    }

    /// `q_λ(A)`.
    pub fn eval(&self, a: &CMat) -> Result<CMat> {
        expect_square(a, self.d, "irrep argument")?;
        let d = self.d;
        if d == 1 {
            return Ok(CMat::from_element(1, 1, powi(a[(0, 0)], self.lambda.size())));
        }
        let scale = max_abs(a).max(1e-300);
        let hermitian = hermitian_deviation(a) <= 1e-13 * scale;
        if d == 2 {
            let degree = self.lambda.part(0) - self.lambda.part(1);
            let psd_like = hermitian && a[(0, 0)].re >= 0.0 && a[(1, 1)].re >= 0.0;
            if psd_like || degree <= GL2_EXPLICIT_MAX_DEGREE {
                return gl2_irrep(&self.lambda, a);
            }
        }
        self.eval_lie(a)
    }

    /// `q_λ(A)` through the Lie algebra generators only: an eigendecomposition
    /// for Hermitian `A`, otherwise `A = U Σ V†` with `q_λ(U)`, `q_λ(V†)` from
    /// matrix logarithms. [`GlIrrep::eval`] prefers closed forms when it can.
    pub fn eval_lie(&self, a: &CMat) -> Result<CMat> {
        expect_square(a, self.d, "irrep argument")?;
        let scale = max_abs(a).max(1e-300);
        if hermitian_deviation(a) <= 1e-13 * scale {
            let (w, v) = eigh(a);
            let diag: Vec<Complex64> = w.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            let qv = self.eval_unitary(&v);
            return Ok(self.sandwich(&qv, &diag, &qv.adjoint()));
        }
        let svd = a.clone().svd(true, true);
        let u = svd.u.expect("requested U");
        let v_t = svd.v_t.expect("requested V^T");
        let diag: Vec<Complex64> = svd.singular_values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Ok(self.sandwich(&self.eval_unitary(&u), &diag, &self.eval_unitary(&v_t)))
    }

    /// Diagonal of `q_λ(diag(x))`.
    pub fn eval_diagonal(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.weights.iter().map(|w| w.iter().zip(x).map(|(&k, &z)| powi(z, k)).product()).collect()
    }

    /// `q_λ(U)` for unitary `U`, via `exp(φ_λ(log U))`.
    pub fn eval_unitary(&self, u: &CMat) -> CMat {
        let log = unitary_log(u);
        let generator = self.gens.represent(&log);
        // exp(G) = exp(-i H) with H = iG Hermitian
        expm_hermitian(&generator.map(|z| z * Complex64::new(0.0, 1.0)))
    }

    fn sandwich(&self, left: &CMat, diag: &[Complex64], right: &CMat) -> CMat {
        let dvals = self.eval_diagonal(diag);
        let scaled = CMat::from_fn(left.nrows(), left.ncols(), |i, j| left[(i, j)] * dvals[j]);
        scaled * right
    }
}

/// `q_λ(A)` for `A` in `d × d` complex matrices.
pub fn gl_irrep(lambda: &Partition, d: usize, a: &CMat) -> Result<CMat> {
    irrep_context(lambda, d)?.eval(a)
}

type IrrepCache = Mutex<HashMap<(Partition, usize), Arc<GlIrrep>>>;

/// Shared evaluator for `(λ, d)`, built once per process.
pub fn irrep_context(lambda: &Partition, d: usize) -> Result<Arc<GlIrrep>> {
    static CACHE: OnceLock<IrrepCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (lambda.clone(), d);
    if let Some(hit) = cache.lock().expect("irrep cache poisoned").get(&key) {
        return Ok(Arc::clone(hit));
    }
    // build outside the lock; a concurrent duplicate build is harmless
    let built = Arc::new(GlIrrep::new(lambda, d)?);
    let mut guard = cache.lock().expect("irrep cache poisoned");
    Ok(Arc::clone(guard.entry(key).or_insert(built)))
}
