use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::rep::Partition;

/// Which evaluator computes the coherent information.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    /// Purified for pure codes, mixed otherwise.
    #[default]
    Auto,
    /// Output and environment blocks for arbitrary mixed codes.
    Mixed,
    /// Output and environment blocks for pure codes; needs `d_B <= d_E`.
    Pure,
    /// Output and reference-output blocks for pure codes.
    Purified,
    /// Explicit tensor products, small sizes only.
    Brute,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Formula::Auto => "auto",
            Formula::Mixed => "mixed",
            Formula::Pure => "pure",
            Formula::Purified => "purified",
            Formula::Brute => "brute",
        };
        f.write_str(s)
    }
}

impl FromStr for Formula {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Formula::Auto),
            "mixed" => Ok(Formula::Mixed),
            "pure" => Ok(Formula::Pure),
            "purified" => Ok(Formula::Purified),
            "brute" => Ok(Formula::Brute),
            other => Err(format!("unknown formula `{other}`")),
        }
    }
}

/// Contribution of one Young diagram.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaTerm {
    pub lambda: Partition,
    /// Probability weight `c_λ` of the block on the channel output.
    pub weight: f64,
    /// Weight of the environment block, when the formula uses one.
    pub env_weight: Option<f64>,
    pub contribution: f64,
}

/// Coherent information of `N^{⊗n}` on a code, in bits, with its
/// decomposition over Young diagrams.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CIBreakdown {
    pub formula: Formula,
    pub n: usize,
    /// Total over all `n` channel uses.
    pub total: f64,
    /// Bound on the magnitude of skipped or clipped terms.
    pub error_budget: f64,
    /// Diagrams in lexicographically decreasing order.
    pub terms: Vec<LambdaTerm>,
}

impl CIBreakdown {
    pub fn per_use(&self) -> f64 {
        self.total / self.n as f64
    }
}
