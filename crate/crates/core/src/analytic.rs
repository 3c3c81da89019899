//! Closed-form coherent information of weighted repetition codes and
//! single-letter Pauli channel quantities.
//!
//! The weighted repetition code on `n` inputs is
//! `x |0⟩⟨0|^{⊗n} + (1 - x) |1⟩⟨1|^{⊗n}`. All entropies are in bits.

use crate::coherent::shannon_entropy;
use crate::error::{Error, Result};
use crate::linalg::ln_binomial;

fn xlog2x(v: f64) -> f64 {
    if v > 0.0 {
        v * v.log2()
    } else {
        0.0
    }
}

fn check_weight(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ParameterRange { name: "x", value: x });
    }
    Ok(())
}

fn check_pauli(p: [f64; 4]) -> Result<()> {
    let total: f64 = p.iter().sum();
    if p.iter().any(|&v| !(v >= 0.0)) || (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidDistribution(p.to_vec()));
    }
    Ok(())
}

/// Eigenvalues of the 2×2 block with trace `t` and determinant `det`, the
/// smaller one computed as `det / η₊` to avoid cancellation.
fn block_eigenvalues(t: f64, det: f64) -> (f64, f64) {
    let mut disc = t * t - 4.0 * det;
    if disc < 0.0 {
        debug_assert!(disc > -1e-14 * t.max(1.0), "negative discriminant {disc}");
        disc = 0.0;
    }
    let plus = (t + disc.sqrt()) / 2.0;
    let minus = if plus > 0.0 { (det / plus).max(0.0) } else { 0.0 };
    (plus, minus)
}

/// Coherent information of `N_p^{⊗n}` on the weighted repetition code, for a
/// Pauli channel with probabilities `p = (p_I, p_X, p_Y, p_Z)`.
pub fn pauli_repcode_ci(p: [f64; 4], n: usize, x: f64) -> Result<f64> {
    check_pauli(p)?;
    check_weight(x)?;
    let flip = p[1] + p[2];
    let keep = p[0] + p[3];
    let flip_coherent = p[1] - p[2];
    let keep_coherent = p[0] - p[3];
    let mut total = 0.0;
    for w in 0..=n {
        let mult = ln_binomial(n, w).exp();
        let a_w = keep.powi((n - w) as i32) * flip.powi(w as i32);
        let a_rev = keep.powi(w as i32) * flip.powi((n - w) as i32);
        let b_w = keep_coherent.powi((n - w) as i32) * flip_coherent.powi(w as i32);
        let y1 = x * a_w + (1.0 - x) * a_rev;
        let (plus, minus) = block_eigenvalues(a_w, x * (1.0 - x) * (a_w * a_w - b_w * b_w));
        total += mult * (-xlog2x(y1) + xlog2x(plus) + xlog2x(minus));
    }
    Ok(total)
}

/// Coherent information of the damping-dephasing channel `F_{p,g}^{⊗n}` on the
/// weighted repetition code.
pub fn dampdeph_repcode_ci(p: f64, g: f64, n: usize, x: f64) -> Result<f64> {
    for (name, v) in [("p", p), ("g", g)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::ParameterRange { name, value: v });
        }
    }
    check_weight(x)?;
    let nn = n as i32;
    let survive = (1.0 - g).powi(nn);
    let decay = g.powi(nn);
    let coherence = ((1.0 - 2.0 * p).powi(2) * (1.0 - g)).powi(nn);
    let t = x + (1.0 - x) * survive;
    let det = x * (1.0 - x) * (survive - coherence);
    let (plus, minus) = block_eigenvalues(t, det);
    Ok(-xlog2x(x + (1.0 - x) * decay) - xlog2x((1.0 - x) * survive)
        + xlog2x((1.0 - x) * decay)
        + xlog2x(plus)
        + xlog2x(minus))
}

/// Single-letter coherent information of a Pauli channel on the maximally
/// mixed input, `1 - H(p)`.
pub fn hashing_bound(p: [f64; 4]) -> Result<f64> {
    check_pauli(p)?;
    Ok(1.0 - shannon_entropy(&p))
}

/// Whether the Pauli channel is antidegradable, i.e.
/// `1 >= 2 Σ p_i² - 8 √(p_0 p_1 p_2 p_3)`.
pub fn pauli_antidegradable(p: [f64; 4]) -> Result<bool> {
    check_pauli(p)?;
    let squares: f64 = p.iter().map(|v| v * v).sum();
    Ok(1.0 + 1e-12 >= 2.0 * squares - 8.0 * (p[0] * p[1] * p[2] * p[3]).sqrt())
}

/// Point at distance `x` along the ray with error distribution `q`:
/// `(1 - x, x q_1, x q_2, x q_3)`.
pub fn ray_point(q: [f64; 3], x: f64) -> [f64; 4] {
    [1.0 - x, x * q[0], x * q[1], x * q[2]]
}

fn check_ray(q: [f64; 3]) -> Result<()> {
    let total: f64 = q.iter().sum();
    if q.iter().any(|&v| !(v >= 0.0)) || (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidDistribution(q.to_vec()));
    }
    Ok(())
}

/// Smallest `x` in `(0, 1]` where the hashing bound along the ray `q` reaches
/// zero, to within `1e-12`.
pub fn hashing_threshold(q: [f64; 3]) -> Result<f64> {
    check_ray(q)?;
    let f = |x: f64| 1.0 - shannon_entropy(&ray_point(q, x));
    const STEP: f64 = 1e-3;
    const CUT: f64 = 1e-13;
    let mut lo = 0.0;
    let mut hi = None;
    let steps = (1.0 / STEP).round() as usize;
    for i in 1..=steps {
        let x = i as f64 * STEP;
        if f(x) <= CUT {
            hi = Some(x);
            break;
        }
        lo = x;
    }
    let mut hi = hi.ok_or_else(|| Error::NoBracket(format!("hashing bound stays positive along ray {q:?}")))?;
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > CUT {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Best weighted repetition code over `x ∈ [0, 1]` and copy counts
/// `1..=max_copies`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepcodeOptimum {
    /// Coherent information per channel use.
    pub rate: f64,
    pub copies: usize,
    pub x: f64,
}

/// Maximizes `ci(n, x) / n` for a closed form such as [`pauli_repcode_ci`] or
/// [`dampdeph_repcode_ci`]. Each `n` gets a grid over `x` followed by a
/// golden-section refinement around the best grid point.
pub fn best_repcode_rate(ci: impl Fn(usize, f64) -> Result<f64>, max_copies: usize) -> Result<RepcodeOptimum> {
    const GRID: usize = 200;
    let mut best = RepcodeOptimum { rate: f64::NEG_INFINITY, copies: 1, x: 0.0 };
    for n in 1..=max_copies.max(1) {
        let f = |x: f64| ci(n, x).map(|v| v / n as f64);
        let mut arg = 0;
        let mut top = f64::NEG_INFINITY;
        for i in 0..=GRID {
            let v = f(i as f64 / GRID as f64)?;
            if v > top {
                top = v;
                arg = i;
            }
        }
        let (mut a, mut b) = (arg.saturating_sub(1) as f64 / GRID as f64, (arg + 1).min(GRID) as f64 / GRID as f64);
        let ratio = (5f64.sqrt() - 1.0) / 2.0;
        while b - a > 1e-12 {
            let (c, d) = (b - ratio * (b - a), a + ratio * (b - a));
            if f(c)? >= f(d)? {
                b = d;
            } else {
                a = c;
            }
        }
        let x = 0.5 * (a + b);
        let (rate, x) = if f(x)? >= top { (f(x)?, x) } else { (top, arg as f64 / GRID as f64) };
        if rate > best.rate {
            best = RepcodeOptimum { rate, copies: n, x };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(p: f64) -> f64 {
        shannon_entropy(&[p, 1.0 - p])
    }

    #[test]
    fn single_copy_unweighted_is_hashing_bound() {
        for p in [[0.7, 0.1, 0.05, 0.15], [0.9, 0.0, 0.0, 0.1], [0.25, 0.25, 0.25, 0.25]] {
            let ci = pauli_repcode_ci(p, 1, 0.5).unwrap();
            assert!((ci - hashing_bound(p).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn bit_flip_repetition_code_is_perfect_against_phase_flips() {
        // |0..0⟩, |1..1⟩ are invariant under Z errors up to a phase that
        // only dephases the code; I_c = H(x) - H(block) reduces accordingly
        let p = 0.2;
        let x = 0.5;
        for n in 1..5 {
            let ci = pauli_repcode_ci([1.0 - p, 0.0, 0.0, p], n, x).unwrap();
            // dephasing of the logical qubit with probability of odd Z count
            let odd = (1.0 - (1.0 - 2.0 * p).powi(n as i32)) / 2.0;
            assert!((ci - (1.0 - h(odd))).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn damping_dephasing_reduces_to_dephasing() {
        // g = 0: pure dephasing, repetition code behaves like one dephasing use
        let p = 0.15;
        for n in 1..5 {
            let ci = dampdeph_repcode_ci(p, 0.0, n, 0.5).unwrap();
            let odd = (1.0 - (1.0 - 2.0 * p).powi(2 * n as i32).sqrt()) / 2.0;
            assert!((ci - (1.0 - h(odd))).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn damping_dephasing_single_copy() {
        // one use, x-weighted diagonal input: I_c = S(B) - S(E) computed by hand
        let (p, g, x) = (0.1, 0.3, 0.6);
        let ci = dampdeph_repcode_ci(p, g, 1, x).unwrap();
        let b = [x + (1.0 - x) * g, (1.0 - x) * (1.0 - g)];
        let t = x + (1.0 - x) * (1.0 - g);
        let c2 = (1.0 - 2.0 * p).powi(2) * (1.0 - g);
        let det = x * (1.0 - x) * ((1.0 - g) - c2);
        let disc = (t * t - 4.0 * det).sqrt();
        let rb = [(t + disc) / 2.0, (t - disc) / 2.0, (1.0 - x) * g];
        assert!((ci - (shannon_entropy(&b) - shannon_entropy(&rb))).abs() < 1e-12);
    }

    #[test]
    fn antidegradability_boundary() {
        assert!(pauli_antidegradable([0.25; 4]).unwrap());
        assert!(!pauli_antidegradable([1.0, 0.0, 0.0, 0.0]).unwrap());
        // depolarizing channel becomes antidegradable at p = 1/4
        let dep = |p: f64| [1.0 - p, p / 3.0, p / 3.0, p / 3.0];
        assert!(pauli_antidegradable(dep(0.25)).unwrap());
        assert!(!pauli_antidegradable(dep(0.24)).unwrap());
    }

    #[test]
    fn thresholds_on_known_rays() {
        // dephasing: 1 - h(x) = 0 at x = 1/2
        let z = hashing_threshold([0.0, 0.0, 1.0]).unwrap();
        assert!((z - 0.5).abs() < 1e-6);
        // depolarizing, solved independently by bisection on 1 - H
        let dep = hashing_threshold([1.0 / 3.0; 3]).unwrap();
        let mut lo = 0.1f64;
        let mut hi = 0.3f64;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let v = 1.0 - h(mid) - mid * 3f64.log2();
            if v > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        assert!((dep - lo).abs() < 1e-10);
        assert!((dep - 0.18929).abs() < 1e-5);
        // two-Pauli ray: 1 - h(x) - x = 0, just below 0.2271
        let two = hashing_threshold([0.5, 0.0, 0.5]).unwrap();
        assert!(two < 0.2271 && two > 0.2269, "{two}");
    }

    #[test]
    fn best_repetition_rate_on_dephasing_is_single_letter() {
        // a degradable channel gains nothing from repetition: n = 1, x = 1/2
        let p = [0.9, 0.0, 0.0, 0.1];
        let best = best_repcode_rate(|n, x| pauli_repcode_ci(p, n, x), 6).unwrap();
        assert_eq!(best.copies, 1);
        assert!((best.x - 0.5).abs() < 1e-6);
        assert!((best.rate - hashing_bound(p).unwrap()).abs() < 1e-12);
    }
}
