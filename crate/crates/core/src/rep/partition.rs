use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Young diagram, stored without trailing zero rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of non-zero rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `d`.
    pub fn padded(&self, d: usize) -> Result<Vec<usize>> {
        if self.rows() > d {
            return Err(Error::TooManyRows { parts: self.parts.clone(), d });
        }
        let mut out = self.parts.clone();
        out.resize(d, 0);
        Ok(out)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    /// Hook lengths of all boxes, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push(row - j + conj.part(j) - i - 1);
            }
        }
        hooks
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

/// All partitions of `n` with at most `d` rows, in lexicographically
/// decreasing order.
pub fn partitions_of(n: usize, d: usize) -> Vec<Partition> {
    fn extend(remaining: usize, max_part: usize, rows_left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            // the remaining rows must be able to hold what is left
            if part * rows_left < remaining {
                break;
            }
            prefix.push(part);
            extend(remaining - part, part, rows_left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, d, &mut Vec::new(), &mut out);
    out
}

fn add_factorization(mut k: usize, sign: i64, exps: &mut [i64]) {
    let mut p = 2;
    while p * p <= k {
        while k % p == 0 {
            exps[p] += sign;
            k /= p;
        }
        p += 1;
    }
    if k > 1 {
        exps[k] += sign;
    }
}

/// `dim S_λ` by the hook length formula, exact.
///
/// Returns `None` if the value does not fit in `u128`; use
/// [`log2_dim_sym_irrep`] for large diagrams.
pub fn checked_dim_sym_irrep(lambda: &Partition) -> Option<u128> {
    let n = lambda.size();
    let mut exps = vec![0i64; n + 1];
    for k in 2..=n {
        add_factorization(k, 1, &mut exps);
    }
    for h in lambda.hook_lengths() {
        add_factorization(h, -1, &mut exps);
    }
    let mut acc: u128 = 1;
    for (p, &e) in exps.iter().enumerate() {
        debug_assert!(e >= 0, "hook formula produced a fractional value");
        for _ in 0..e {
            acc = acc.checked_mul(p as u128)?;
        }
    }
    Some(acc)
}

/// `dim S_λ`, exact. Panics if the value overflows `u128`.
pub fn dim_sym_irrep(lambda: &Partition) -> u128 {
    checked_dim_sym_irrep(lambda).unwrap_or_else(|| panic!("dim S_{lambda} overflows u128"))
}

/// `log2 dim S_λ`, valid for any size.
pub fn log2_dim_sym_irrep(lambda: &Partition) -> f64 {
    let n = lambda.size();
    let mut ln = crate::linalg::ln_factorial(n);
    for h in lambda.hook_lengths() {
        ln -= (h as f64).ln();
    }
    ln / std::f64::consts::LN_2
}

/// `dim V_λ^d` by the Weyl dimension formula, exact. Zero if `λ` has more
/// than `d` rows.
pub fn dim_gl_irrep(lambda: &Partition, d: usize) -> u128 {
    let Ok(l) = lambda.padded(d) else { return 0 };
    // accumulate as an exact fraction, reducing as we go
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        for j in i + 1..d {
            num *= (l[i] - l[j] + j - i) as u128;
            den *= (j - i) as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    num / den
}

/// `log2 dim V_λ^d`.
pub fn log2_dim_gl_irrep(lambda: &Partition, d: usize) -> f64 {
    let Ok(l) = lambda.padded(d) else { return f64::NEG_INFINITY };
    let mut acc = 0.0;
    for i in 0..d {
        for j in i + 1..d {
            acc += ((l[i] - l[j] + j - i) as f64).log2() - ((j - i) as f64).log2();
        }
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
