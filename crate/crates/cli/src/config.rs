//! Experiment configuration file.
//!
//! A TOML document; every table is optional and command-line flags take
//! precedence over it. `PERMCI_SEED` and `PERMCI_THREADS` override the seed
//! and thread count from the file.
//!
//! ```toml
//! seed = 7
//! threads = 2
//! n = [9, 12]
//! code = "bundled:two_pauli"
//! formula = "auto"
//!
//! [channel]
//! name = "two_pauli"
//! params = [0.2271]
//!
//! [ansatz]
//! kind = "free_k_state"
//! k = 2
//! scheme = "pure_bloch"
//!
//! [swarm]
//! swarm_size = 60
//! max_iterations = 300
//! restarts = 2
//!
//! [sweep]
//! vary = "p"
//! from = 0.2
//! to = 0.24
//! steps = 9
//!
//! [simplex]
//! exponent = 4
//! n_values = [5]
//! phis = [0.7853981633974483]
//!
//! [output]
//! json = "result.json"
//! csv = "rows.csv"
//! code = "best.json"
//! ```

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use permci::coherent::Formula;
use permci::optim::{Ansatz, SimplexConfig, SwarmConfig};
use permci::ChannelSpec;
use serde::Deserialize;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub channel: Option<ChannelSpec>,
    pub n: Option<NValues>,
    pub ansatz: Option<Ansatz>,
    pub code: Option<String>,
    pub formula: Option<Formula>,
    pub swarm: Option<SwarmConfig>,
    pub sweep: Option<SweepGrid>,
    pub simplex: Option<SimplexConfig>,
    #[serde(default)]
    pub output: Outputs,
}

/// A single copy count or a list of them.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum NValues {
    One(usize),
    Many(Vec<usize>),
}

impl NValues {
    pub fn to_vec(&self) -> Vec<usize> {
        match self {
            NValues::One(n) => vec![*n],
            NValues::Many(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    /// Channel parameter name, e.g. `p` or `g`.
    pub vary: String,
    /// Explicit grid; overrides `from`/`to`/`steps`.
    pub values: Option<Vec<f64>>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub steps: Option<usize>,
}

impl SweepGrid {
    pub fn points(&self) -> Result<Vec<f64>> {
        if let Some(v) = &self.values {
            return Ok(v.clone());
        }
        let (Some(a), Some(b), Some(steps)) = (self.from, self.to, self.steps) else {
            bail!("sweep grid needs `values` or all of `from`, `to`, `steps`");
        };
        Ok(linspace(a, b, steps))
    }
}

pub fn linspace(a: f64, b: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..steps).map(|i| a + (b - a) * i as f64 / (steps - 1) as f64).collect(),
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub code: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let config: Self = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        config.check_files(path.parent().unwrap_or(Path::new(".")))?;
        Ok(config)
    }

    fn check_files(&self, base: &Path) -> Result<()> {
        if let Some(code) = &self.code {
            if !code.starts_with("bundled:") && !base.join(code).exists() {
                bail!("code file `{code}` does not exist");
            }
        }
        Ok(())
    }
}
