//! Schur polynomials `s_λ(x_1, ..., x_d)`, the characters of `GL(d)` irreps.

use std::collections::HashMap;

use num_complex::Complex64;

use super::gt::gt_patterns;
use super::partition::{dim_gl_irrep, Partition};
use crate::linalg::{power_table, real, CMat};

/// Below this many basis states the polynomial is summed term by term over
/// semistandard tableaux.
const ENUMERATION_LIMIT: u128 = 10_000;

/// `s_λ(x)`. Zero when `λ` has more rows than variables.
pub fn schur_poly(lambda: &Partition, x: &[Complex64]) -> Complex64 {
    let d = x.len();
    if lambda.rows() > d {
        return real(0.0);
    }
    if dim_gl_irrep(lambda, d) <= ENUMERATION_LIMIT {
        schur_poly_tableaux(lambda, x)
    } else {
        schur_poly_branching(lambda, x)
    }
}

/// `s_λ` of real arguments, typically eigenvalues of a density matrix.
pub fn schur_poly_real(lambda: &Partition, x: &[f64]) -> f64 {
    let xs: Vec<Complex64> = x.iter().map(|&v| real(v)).collect();
    schur_poly(lambda, &xs).re
}

/// Sum of `x^w` over Gelfand-Tsetlin patterns, i.e. over semistandard
/// tableaux with entries in `1..=d`.
pub fn schur_poly_tableaux(lambda: &Partition, x: &[Complex64]) -> Complex64 {
    let d = x.len();
    let Ok(patterns) = gt_patterns(lambda, d) else { return real(0.0) };
    let n = lambda.size();
    let powers: Vec<Vec<Complex64>> = x.iter().map(|&v| power_table(v, n)).collect();
    patterns
        .iter()
        .map(|p| (1..=d).map(|k| powers[k - 1][p.weight(k)]).product::<Complex64>())
        .sum()
}

/// Branching rule `s_λ(x_1..x_d) = Σ_{μ ≺ λ} s_μ(x_1..x_{d-1}) x_d^{|λ|-|μ|}`,
/// memoized over intermediate diagrams. Uses no division, so it stays accurate
/// for repeated or widely spread arguments.
pub fn schur_poly_branching(lambda: &Partition, x: &[Complex64]) -> Complex64 {
    let d = x.len();
    let Ok(top) = lambda.padded(d) else { return real(0.0) };
    let n = lambda.size();
    let powers: Vec<Vec<Complex64>> = x.iter().map(|&v| power_table(v, n)).collect();
    let mut memo: HashMap<Vec<usize>, Complex64> = HashMap::new();
    branch(&top, &powers, &mut memo)
}

fn branch(row: &[usize], powers: &[Vec<Complex64>], memo: &mut HashMap<Vec<usize>, Complex64>) -> Complex64 {
    let k = row.len();
    if k == 1 {
        return powers[0][row[0]];
    }
    if let Some(&v) = memo.get(row) {
        return v;
    }
    let total: usize = row.iter().sum();
    let mut acc = real(0.0);
    let mut lower = vec![0usize; k - 1];
    interlacing(row, 0, &mut lower, &mut |mu| {
        let size: usize = mu.iter().sum();
        acc += branch(mu, powers, memo) * powers[k - 1][total - size];
    });
    memo.insert(row.to_vec(), acc);
    acc
}

fn interlacing(upper: &[usize], i: usize, lower: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if i == lower.len() {
        visit(lower);
        return;
    }
    for v in upper[i + 1]..=upper[i] {
        lower[i] = v;
        interlacing(upper, i + 1, lower, visit);
    }
}

/// Bialternant formula `det(x_i^{λ_j+d-j}) / det(x_i^{d-j})`.
///
/// Returns `None` when two arguments (nearly) coincide, where the quotient is
/// numerically meaningless.
pub fn schur_poly_bialternant(lambda: &Partition, x: &[Complex64]) -> Option<Complex64> {
    let d = x.len();
    let Ok(l) = lambda.padded(d) else { return Some(real(0.0)) };
    if d == 0 {
        return Some(real(1.0));
    }
    let scale = x.iter().fold(0.0f64, |a, z| a.max(z.norm())).max(1e-300);
    for i in 0..d {
        for j in i + 1..d {
            if (x[i] - x[j]).norm() < 1e-8 * scale {
                return None;
            }
        }
    }
    let num = CMat::from_fn(d, d, |i, j| crate::linalg::powi(x[i], l[j] + d - 1 - j));
    let den = CMat::from_fn(d, d, |i, j| crate::linalg::powi(x[i], d - 1 - j));
    Some(num.determinant() / den.determinant())
}
