//! Dense complex linear algebra helpers on top of nalgebra.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Eigenvalues below `-EIGEN_FLOOR` are treated as a genuine error rather than
/// roundoff when computing entropies.
pub const EIGEN_FLOOR: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

/// Largest entry of `|m - m†|`.
pub fn hermitian_deviation(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest absolute entry.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `(m + m†)/2`.
pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

pub fn trace(m: &CMat) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Eigen-decomposition of a Hermitian matrix. The input is symmetrized first,
/// so small deviations from hermiticity are tolerated.
pub fn eigh(m: &CMat) -> (Vec<f64>, CMat) {
    if m.nrows() == 0 {
        return (Vec::new(), m.clone());
    }
    let eig = hermitian_part(m).symmetric_eigen();
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

pub fn eigvalsh(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    hermitian_part(m).symmetric_eigenvalues().iter().copied().collect()
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// `a^{⊗n}`; the empty tensor power is the 1×1 identity.
pub fn kron_power(a: &CMat, n: usize) -> CMat {
    let mut out = identity(1);
    for _ in 0..n {
        out = kron(&out, a);
    }
    out
}

pub fn outer(u: &CVec, v: &CVec) -> CMat {
    u * v.adjoint()
}

/// Logarithm of a unitary matrix, `L` with `exp(L) = u`, skew-Hermitian up to
/// roundoff. Uses the complex Schur form, which is diagonal for normal input.
pub fn unitary_log(u: &CMat) -> CMat {
    let d = u.nrows();
    if d == 1 {
        let z = u[(0, 0)];
        return CMat::from_element(1, 1, c(0.0, z.arg()));
    }
    let (q, t) = u.clone().schur().unpack();
    let mut diag = CMat::zeros(d, d);
    for i in 0..d {
        diag[(i, i)] = c(0.0, t[(i, i)].arg());
    }
    let l = &q * diag * q.adjoint();
    // project onto skew-Hermitian matrices to remove roundoff
    (&l - l.adjoint()).scale(0.5)
}

/// `exp(-i h)` for Hermitian `h`.
pub fn expm_hermitian(h: &CMat) -> CMat {
    let (w, v) = eigh(h);
    let phases = DVector::from_iterator(w.len(), w.iter().map(|x| Complex64::from_polar(1.0, -x)));
    let scaled = CMat::from_fn(v.nrows(), v.ncols(), |i, j| v[(i, j)] * phases[j]);
    scaled * v.adjoint()
}

const LN_FACTORIAL_TABLE: usize = 4096;

fn ln_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACTORIAL_TABLE);
        let mut acc = 0.0f64;
        t.push(0.0);
        for k in 1..LN_FACTORIAL_TABLE {
            acc += (k as f64).ln();
            t.push(acc);
        }
        t
    })
}

/// `ln(k!)`.
pub fn ln_factorial(k: usize) -> f64 {
    let table = ln_factorial_table();
    if k < table.len() {
        return table[k];
    }
    let mut acc = table[table.len() - 1];
    for j in table.len()..=k {
        acc += (j as f64).ln();
    }
    acc
}

/// `ln C(n, k)`, `-inf` when `k > n`.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// `z^k` with the convention `0^0 = 1`.
pub fn powi(z: Complex64, k: usize) -> Complex64 {
    if k == 0 {
        return real(1.0);
    }
    let mut base = z;
    let mut exp = k;
    let mut acc = real(1.0);
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

/// Table `[1, z, z^2, ..., z^max]`.
pub fn power_table(z: Complex64, max: usize) -> Vec<Complex64> {
    let mut t = Vec::with_capacity(max + 1);
    let mut acc = real(1.0);
    t.push(acc);
    for _ in 0..max {
        acc *= z;
        t.push(acc);
    }
    t
}

/// Checks that `m` is square with the given side length.
pub fn expect_square(m: &CMat, d: usize, what: &str) -> Result<()> {
    if m.nrows() != d || m.ncols() != d {
        return Err(Error::ShapeMismatch {
            expected: format!("{what} of size {d}x{d}"),
            got: format!("{}x{}", m.nrows(), m.ncols()),
        });
    }
    Ok(())
}
