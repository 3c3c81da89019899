//! Brute-force coherent information from explicit tensor products. Used as a
//! ground-truth oracle for small sizes.

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{kron_power, real, CMat, CVec};
use crate::state::CodeEnsemble;

use super::blocks::clipped_spectrum;
use super::check_input_dim;
use super::entropy::entropy_from_eigenvalues;

/// Largest matrix side the oracle is willing to diagonalize.
pub const BRUTE_LIMIT: usize = 1 << 12;

/// Position of the reference factor in an explicit state vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefLayout {
    /// `|r⟩ ⊗ |a_1 ... a_n⟩`.
    RefFirst,
    /// `|a_1 ... a_n⟩ ⊗ |r⟩`.
    SystemFirst,
}

fn guard(size: usize) -> Result<()> {
    if size > BRUTE_LIMIT {
        return Err(Error::SizeGuard { size, limit: BRUTE_LIMIT });
    }
    Ok(())
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    base.checked_pow(exp as u32).ok_or(Error::SizeGuard { size: usize::MAX, limit: BRUTE_LIMIT })
}

/// `ρ ↦ (I_pre ⊗ N ⊗ I_post)(ρ)` using only the nonzero Kraus entries.
fn apply_leg(channel: &KrausChannel, rho: &CMat, pre: usize, post: usize) -> CMat {
    let (d_in, d_out) = (channel.d_in(), channel.d_out());
    let dim_in = pre * d_in * post;
    let dim_out = pre * d_out * post;
    let mut out = CMat::zeros(dim_out, dim_out);
    for k in channel.kraus() {
        let entries: Vec<(usize, usize, _)> = (0..d_out)
            .flat_map(|b| (0..d_in).map(move |x| (b, x)))
            .filter(|&(b, x)| k[(b, x)] != real(0.0))
            .map(|(b, x)| (b, x, k[(b, x)]))
            .collect();
        let index = |p: usize, s: usize, q: usize, d: usize| (p * d + s) * post + q;
        let mut left = CMat::zeros(dim_out, dim_in);
        for &(b, x, v) in &entries {
            for p in 0..pre {
                for q in 0..post {
                    let (dst, src) = (index(p, b, q, d_out), index(p, x, q, d_in));
                    for col in 0..dim_in {
                        left[(dst, col)] += v * rho[(src, col)];
                    }
                }
            }
        }
        for &(b, x, v) in &entries {
            let v = v.conj();
            for p in 0..pre {
                for q in 0..post {
                    let (dst, src) = (index(p, b, q, d_out), index(p, x, q, d_in));
                    let column = left.column(src) * v;
                    let mut target = out.column_mut(dst);
                    target += &column;
                }
            }
        }
    }
    out
}

/// `I_c(R⟩B^n)` for a pure state on `A^n ⊗ R`, system legs first. The channel
/// is applied to one leg at a time.
fn ci_of_vector(channel: &KrausChannel, psi: &CVec, n: usize, d_ref: usize) -> Result<f64> {
    let d_in = channel.d_in();
    let d_out = channel.d_out();
    let d_b = checked_pow(d_out, n)?;
    guard(d_b)?;
    guard(d_b * d_ref)?;
    if psi.len() != checked_pow(d_in, n)? * d_ref {
        return Err(Error::ShapeMismatch {
            expected: format!("state vector of length {}", d_in.pow(n as u32) * d_ref),
            got: psi.len().to_string(),
        });
    }

    let mut rho = psi * psi.adjoint();
    for leg in 0..n {
        let pre = d_out.pow(leg as u32);
        let post = d_in.pow((n - leg - 1) as u32) * d_ref;
        rho = apply_leg(channel, &rho, pre, post);
    }
    let joint_entropy = entropy_from_eigenvalues(&clipped_spectrum(&rho))?;
    let rho_b = CMat::from_fn(d_b, d_b, |i, j| (0..d_ref).map(|r| rho[(i * d_ref + r, j * d_ref + r)]).sum());
    let output_entropy = entropy_from_eigenvalues(&clipped_spectrum(&rho_b))?;
    Ok(output_entropy - joint_entropy)
}

/// Coherent information of `N^{⊗n}` on an explicit pure state of a reference
/// of dimension `d_ref` and `n` channel inputs.
pub fn ci_brute_state(channel: &KrausChannel, psi: &CVec, n: usize, d_ref: usize, layout: RefLayout) -> Result<f64> {
    let psi = match layout {
        RefLayout::SystemFirst => psi.clone(),
        RefLayout::RefFirst => {
            let sys = psi.len() / d_ref.max(1);
            CVec::from_fn(psi.len(), |idx, _| {
                let (a, r) = (idx / d_ref, idx % d_ref);
                psi[r * sys + a]
            })
        }
    };
    ci_of_vector(channel, &psi, n, d_ref)
}

/// Coherent information of a code ensemble by explicit tensor products.
///
/// Pure codes are purified with a `k`-dimensional reference; mixed codes use
/// `S(B^n) - S(E^n)` with the complementary channel.
pub fn ci_brute(channel: &KrausChannel, code: &CodeEnsemble) -> Result<f64> {
    check_input_dim(channel, code)?;
    let n = code.n();
    if code.is_pure() {
        let vectors = code.pure_vectors()?;
        let k = vectors.len();
        let dim = checked_pow(code.d(), n)?;
        guard(dim * k)?;
        let mut psi = CVec::zeros(dim * k);
        for (i, (v, x)) in vectors.iter().zip(code.weights()).enumerate() {
            let tensor = kron_power(&CMat::from_column_slice(v.len(), 1, v.as_slice()), n);
            for a in 0..dim {
                psi[a * k + i] += tensor[(a, 0)] * real(x.sqrt());
            }
        }
        return ci_of_vector(channel, &psi, n, k);
    }
    let comp = channel.complementary();
    guard(checked_pow(channel.d_out(), n)?)?;
    guard(checked_pow(channel.d_env(), n)?)?;
    let mut out_b = CMat::zeros(channel.d_out().pow(n as u32), channel.d_out().pow(n as u32));
    let mut out_e = CMat::zeros(channel.d_env().pow(n as u32), channel.d_env().pow(n as u32));
    for c in code.components() {
        out_b += kron_power(&channel.apply(c.state.matrix())?, n) * real(c.weight);
        out_e += kron_power(&comp.apply(c.state.matrix())?, n) * real(c.weight);
    }
    let s_b = entropy_from_eigenvalues(&clipped_spectrum(&out_b))?;
    let s_e = entropy_from_eigenvalues(&clipped_spectrum(&out_e))?;
    Ok(s_b - s_e)
}
