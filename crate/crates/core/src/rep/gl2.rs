//! Explicit matrix elements of `GL(2)` irreps.
//!
//! `V_λ^2` with `λ = (λ_1, λ_2)` is realised on homogeneous polynomials of
//! degree `m = λ_1 - λ_2` twisted by `det^{λ_2}`. In the orthonormal monomial
//! basis `e_k ∝ x_1^k x_2^{m-k}`, listed for `k = m, m-1, ..., 0`,
//!
//! `[S_m(A)]_{k,j} = sqrt(k!(m-k)!/(j!(m-j)!)) Σ_p C(j,p) C(m-j,k-p) a^p c^{j-p} b^{k-p} d^{m-j-k+p}`.
//!
//! The ordering and phases coincide with the Gelfand-Tsetlin basis used for
//! general `d`.

use num_complex::Complex64;

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::linalg::{expect_square, ln_binomial, ln_factorial, power_table, powi, CMat};

/// `q_λ(A)` for a 2×2 matrix `A` and `λ` with at most two rows.
pub fn gl2_irrep(lambda: &Partition, a: &CMat) -> Result<CMat> {
    expect_square(a, 2, "GL(2) argument")?;
    if lambda.rows() > 2 {
        return Err(Error::TooManyRows { parts: lambda.parts().to_vec(), d: 2 });
    }
    let (l1, l2) = (lambda.part(0), lambda.part(1));
    let m = l1 - l2;
    let s = symmetric_power(m, a);
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    Ok(s * powi(det, l2))
}

/// `S_m(A)` in the basis `e_m, ..., e_0`.
pub fn symmetric_power(m: usize, a: &CMat) -> CMat {
    let pa = power_table(a[(0, 0)], m);
    let pb = power_table(a[(0, 1)], m);
    let pc = power_table(a[(1, 0)], m);
    let pd = power_table(a[(1, 1)], m);
    let half_ln_norm: Vec<f64> = (0..=m).map(|k| 0.5 * (ln_factorial(k) + ln_factorial(m - k))).collect();
    CMat::from_fn(m + 1, m + 1, |row, col| {
        let k = m - row;
        let j = m - col;
        let lo = (k + j).saturating_sub(m);
        let hi = k.min(j);
        let mut acc = Complex64::new(0.0, 0.0);
        for p in lo..=hi {
            let coeff = (half_ln_norm[k] - half_ln_norm[j] + ln_binomial(j, p) + ln_binomial(m - j, k - p)).exp();
            acc += pa[p] * pc[j - p] * pb[k - p] * pd[m + p - j - k] * coeff;
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs, trace};
    use crate::rep::schur::schur_poly;

    fn mat(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> CMat {
        CMat::from_row_slice(2, 2, &[a, b, cc, d])
    }

    fn sample(seed: u64) -> CMat {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        CMat::from_fn(2, 2, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
    }

    #[test]
    fn symmetric_square_by_hand() {
        let a = mat(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0));
        let s = symmetric_power(2, &a);
        // e_2 = x1^2, e_1 = sqrt2 x1 x2, e_0 = x2^2 with x1 -> a x1 + c x2, x2 -> b x1 + d x2
        let r2 = 2f64.sqrt();
        let expected = CMat::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.0),
                c(r2 * 2.0, 0.0),
                c(4.0, 0.0),
                c(r2 * 3.0, 0.0),
                c(4.0 + 6.0, 0.0),
                c(r2 * 8.0, 0.0),
                c(9.0, 0.0),
                c(r2 * 12.0, 0.0),
                c(16.0, 0.0),
            ],
        );
        assert!(max_abs(&(s - expected)) < 1e-12);
    }

    #[test]
    fn is_a_homomorphism() {
        let lambda = Partition::new(vec![5, 2]).unwrap();
        for seed in 0..10 {
            let a = sample(seed);
            let b = sample(seed + 100);
            let lhs = gl2_irrep(&lambda, &(&a * &b)).unwrap();
            let rhs = gl2_irrep(&lambda, &a).unwrap() * gl2_irrep(&lambda, &b).unwrap();
            assert!(max_abs(&(lhs - rhs)) < 1e-12);
        }
    }

    #[test]
    fn trace_is_schur_polynomial() {
        let a = sample(7);
        let eig = a.clone().eigenvalues().map(|v| vec![v[0], v[1]]);
        let eig = eig.unwrap_or_else(|| {
            // complex eigenvalues from the characteristic polynomial
            let tr = a[(0, 0)] + a[(1, 1)];
            let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
            let disc = (tr * tr - det * 4.0).sqrt();
            vec![(tr + disc) / 2.0, (tr - disc) / 2.0]
        });
        for parts in [vec![3], vec![4, 1], vec![2, 2]] {
            let lambda = Partition::new(parts).unwrap();
            let q = gl2_irrep(&lambda, &a).unwrap();
            assert!((trace(&q) - schur_poly(&lambda, &eig)).norm() < 1e-12);
        }
    }

    #[test]
    fn symmetric_power_is_restriction_of_tensor_power() {
        // for m = 1 the representation is the defining one
        let a = sample(3);
        assert!(max_abs(&(symmetric_power(1, &a) - &a)) < 1e-14);
        // trace of S_2 equals (tr(A)^2 + tr(A^2)) / 2
        let s2 = symmetric_power(2, &a);
        let t = trace(&a);
        let t2 = trace(&(&a * &a));
        assert!((trace(&s2) - (t * t + t2) / 2.0).norm() < 1e-12);
    }

    #[test]
    fn rejects_three_rows() {
        let lambda = Partition::new(vec![1, 1, 1]).unwrap();
        assert!(gl2_irrep(&lambda, &sample(0)).is_err());
    }
}
