//! Lie algebra generators `E_{ij}` of `gl(d)` acting on `V_λ^d` in the
//! orthonormal Gelfand-Tsetlin basis.
//!
//! Raising and lowering operators follow the classical action formulas on the
//! unnormalised basis `ξ_Λ`; dividing by the pattern norms gives real matrices
//! with `E_{ji} = E_{ij}^T`. The remaining off-diagonal generators come from
//! commutators.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::gt::{gt_patterns, pattern_index, GtPattern};
use super::partition::Partition;
use crate::error::Result;
use crate::linalg::{ln_factorial, CMat};

/// Sparse real matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOp {
    dim: usize,
    cols: Vec<Vec<(usize, f64)>>,
}

impl SparseOp {
    fn zeros(dim: usize) -> Self {
        Self { dim, cols: vec![Vec::new(); dim] }
    }

    fn diagonal(values: &[f64]) -> Self {
        let cols = values.iter().enumerate().map(|(i, &v)| if v != 0.0 { vec![(i, v)] } else { Vec::new() }).collect();
        Self { dim: values.len(), cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Non-zero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.cols.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |&(i, v)| (i, j, v)))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, j, v) in self.entries() {
            m[(i, j)] += v;
        }
        m
    }

    fn product(&self, other: &SparseOp) -> SparseOp {
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
                for &(k, b) in col {
                    for &(i, a) in &self.cols[k] {
                        *acc.entry(i).or_insert(0.0) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| *v != 0.0).collect()
            })
            .collect();
        SparseOp { dim: self.dim, cols }
    }

    fn commutator(&self, other: &SparseOp) -> SparseOp {
        let ab = self.product(other);
        let ba = other.product(self);
        let cols = ab
            .cols
            .into_iter()
            .zip(ba.cols)
            .map(|(x, y)| {
                let mut acc: BTreeMap<usize, f64> = x.into_iter().collect();
                for (i, v) in y {
                    *acc.entry(i).or_insert(0.0) -= v;
                }
                acc.into_iter().filter(|(_, v)| v.abs() > 1e-13).collect()
            })
            .collect();
        SparseOp { dim: self.dim, cols }
    }
}

/// All `d²` generators of `gl(d)` on `V_λ^d`.
#[derive(Clone, Debug)]
pub struct LieGenerators {
    lambda: Partition,
    d: usize,
    patterns: Vec<GtPattern>,
    /// `ops[i * d + j]` is `E_{i+1, j+1}`.
    ops: Vec<SparseOp>,
}

fn l(p: &GtPattern, k: usize, i: usize) -> i64 {
    p.entry(k, i) as i64 - i as i64 + 1
}

/// `ln ⟨ξ_Λ, ξ_Λ⟩` for the unnormalised GT basis vector.
fn ln_norm_squared(p: &GtPattern) -> f64 {
    let lf = |x: i64| {
        debug_assert!(x >= 0);
        ln_factorial(x as usize)
    };
    let mut acc = 0.0;
    for k in 2..=p.depth() {
        for i in 1..k {
            for j in i..k {
                acc += lf(l(p, k, i) - l(p, k - 1, j)) - lf(l(p, k - 1, i) - l(p, k - 1, j));
            }
        }
        for i in 1..=k {
            for j in i + 1..=k {
                acc += lf(l(p, k, i) - l(p, k, j) - 1) - lf(l(p, k - 1, i) - l(p, k, j) - 1);
            }
        }
    }
    acc
}

impl LieGenerators {
    pub fn new(lambda: &Partition, d: usize) -> Result<Self> {
        let patterns = gt_patterns(lambda, d)?;
        let index = pattern_index(&patterns);
        let dim = patterns.len();
        let half_ln_norm: Vec<f64> = patterns.iter().map(|p| 0.5 * ln_norm_squared(p)).collect();
        let mut ops = vec![SparseOp::zeros(dim); d * d];

        for k in 1..=d {
            let w: Vec<f64> = patterns.iter().map(|p| p.weight(k) as f64).collect();
            ops[(k - 1) * d + (k - 1)] = SparseOp::diagonal(&w);
        }

        for k in 1..d {
            let mut raise = SparseOp::zeros(dim);
            let mut lower = SparseOp::zeros(dim);
            for (col, p) in patterns.iter().enumerate() {
                for i in 1..=k {
                    let lki = l(p, k, i);
                    let mut den = 1.0;
                    for j in (1..=k).filter(|&j| j != i) {
                        den *= (lki - l(p, k, j)) as f64;
                    }
                    if let Some(up) = p.shifted(k, i, 1) {
                        let mut num = 1.0;
                        for j in 1..=k + 1 {
                            num *= (lki - l(p, k + 1, j)) as f64;
                        }
                        let row = index[&up];
                        let scale = (half_ln_norm[row] - half_ln_norm[col]).exp();
                        raise.cols[col].push((row, -num / den * scale));
                    }
                    if let Some(down) = p.shifted(k, i, -1) {
                        let mut num = 1.0;
                        for j in 1..k {
                            num *= (lki - l(p, k - 1, j)) as f64;
                        }
                        let row = index[&down];
                        let scale = (half_ln_norm[row] - half_ln_norm[col]).exp();
                        lower.cols[col].push((row, num / den * scale));
                    }
                }
            }
            for op in [&mut raise, &mut lower] {
                for col in &mut op.cols {
                    col.sort_by_key(|&(r, _)| r);
                }
            }
            ops[(k - 1) * d + k] = raise;
            ops[k * d + (k - 1)] = lower;
        }

        for gap in 2..d {
            for i in 0..d - gap {
                let j = i + gap;
                ops[i * d + j] = ops[i * d + (j - 1)].commutator(&ops[(j - 1) * d + j]);
                ops[j * d + i] = ops[j * d + (j - 1)].commutator(&ops[(j - 1) * d + i]);
            }
        }

        Ok(Self { lambda: lambda.clone(), d, patterns, ops })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.patterns.len()
    }

    pub fn patterns(&self) -> &[GtPattern] {
        &self.patterns
    }

    /// `E_{i+1, j+1}` (indices are 0-based).
    pub fn generator(&self, i: usize, j: usize) -> &SparseOp {
        &self.ops[i * self.d + j]
    }

    /// `φ_λ(X) = Σ_ij X_ij E_ij`, the Lie algebra representation of `X`.
    pub fn represent(&self, x: &CMat) -> CMat {
        let mut out = CMat::zeros(self.dim(), self.dim());
        for i in 0..self.d {
            for j in 0..self.d {
                let coeff: Complex64 = x[(i, j)];
                if coeff == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (r, c, v) in self.generator(i, j).entries() {
                    out[(r, c)] += coeff * v;
                }
            }
        }
        out
    }
}
