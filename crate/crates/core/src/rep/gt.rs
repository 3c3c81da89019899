//! Gelfand-Tsetlin patterns.
//!
//! A pattern for `λ` with `d` rows is a triangle whose top row is `λ` padded
//! to length `d`, row `k` has `k` entries, and neighbouring rows interlace:
//! `λ_{k,i} >= λ_{k-1,i} >= λ_{k,i+1}`. Patterns index an orthogonal weight
//! basis of `V_λ^d`.

use std::collections::HashMap;

use super::partition::Partition;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GtPattern {
    /// `rows[k - 1]` is row `k`, of length `k`.
    rows: Vec<Vec<usize>>,
}

impl GtPattern {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Option<Self> {
        let pattern = Self { rows };
        pattern.is_valid().then_some(pattern)
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    /// Row `k`, 1-based.
    pub fn row(&self, k: usize) -> &[usize] {
        &self.rows[k - 1]
    }

    /// `λ_{k,i}` with 1-based `k` and `i`.
    pub fn entry(&self, k: usize, i: usize) -> usize {
        self.rows[k - 1][i - 1]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    fn row_sum(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.rows[k - 1].iter().sum()
        }
    }

    /// Weight component `w_k`, the eigenvalue of `E_{k,k}` on this basis vector.
    pub fn weight(&self, k: usize) -> usize {
        self.row_sum(k) - self.row_sum(k - 1)
    }

    pub fn weights(&self) -> Vec<usize> {
        (1..=self.depth()).map(|k| self.weight(k)).collect()
    }

    pub fn is_valid(&self) -> bool {
        for (k, row) in self.rows.iter().enumerate() {
            if row.len() != k + 1 {
                return false;
            }
            if k == 0 {
                continue;
            }
            let upper = row;
            let lower = &self.rows[k - 1];
            for i in 0..k {
                if !(upper[i] >= lower[i] && lower[i] >= upper[i + 1]) {
                    return false;
                }
            }
        }
        true
    }

    /// The pattern with `λ_{k,i}` shifted by `delta`, if it stays valid.
    pub fn shifted(&self, k: usize, i: usize, delta: i64) -> Option<Self> {
        let value = self.rows[k - 1][i - 1] as i64 + delta;
        if value < 0 {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[k - 1][i - 1] = value as usize;
        Self::from_rows(rows)
    }
}

/// All GT patterns with top row `λ` padded to `d` entries, lexicographically
/// decreasing when read from row `d-1` down to row 1.
pub fn gt_patterns(lambda: &Partition, d: usize) -> Result<Vec<GtPattern>> {
    let top = lambda.padded(d)?;
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    // rows are built top-down; `stack[j]` holds row d - j
    let mut stack = vec![top];
    fill_rows(&mut stack, &mut Vec::new(), &mut out);
    Ok(out)
}

fn fill_rows(stack: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, out: &mut Vec<GtPattern>) {
    let upper = stack.last().unwrap().clone();
    if upper.len() == 1 {
        let rows: Vec<Vec<usize>> = stack.iter().rev().cloned().collect();
        out.push(GtPattern { rows });
        return;
    }
    let i = current.len();
    if i + 1 == upper.len() {
        stack.push(current.clone());
        fill_rows(stack, &mut Vec::new(), out);
        stack.pop();
        return;
    }
    for value in (upper[i + 1]..=upper[i]).rev() {
        current.push(value);
        fill_rows(stack, current, out);
        current.pop();
    }
}

/// Map from pattern to its position in a basis listing.
pub fn pattern_index(patterns: &[GtPattern]) -> HashMap<GtPattern, usize> {
    patterns.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect()
}
