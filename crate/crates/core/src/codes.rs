//! Serializable code descriptions and the bundled benchmark codes.

use serde::{Deserialize, Serialize};

use crate::channel::{ChannelKind, ChannelSpec};
use crate::coherent::RefLayout;
use crate::error::{Error, Result};
use crate::linalg::{c, CMat, CVec};
use crate::state::{bloch_length, bloch_pure_vector, CodeEnsemble, DensityMatrix};

pub const CODE_FILE_VERSION: u32 = 1;

/// Tolerance on `Σ weights = 1` accepted when reading a code file.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// One code state. Bloch vectors are qubit-only. With `pure` set the vector
/// is read as a direction and the state is the corresponding pure state;
/// otherwise it is taken literally (lengths slightly above 1 from rounding
/// are clamped onto the sphere).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Bloch {
        r: [f64; 3],
        #[serde(default)]
        pure: bool,
    },
    Matrix {
        re: Vec<Vec<f64>>,
        im: Vec<Vec<f64>>,
    },
}

impl StateSpec {
    pub fn from_matrix(m: &CMat) -> Self {
        let rows = |f: fn(&num_complex::Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect()
        };
        StateSpec::Matrix { re: rows(|z| z.re), im: rows(|z| z.im) }
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        match self {
            StateSpec::Bloch { r, pure: true } => DensityMatrix::pure(&bloch_pure_vector(*r)?),
            StateSpec::Bloch { r, pure: false } => {
                let len = bloch_length(*r);
                let r = if len > 1.0 { r.map(|v| v / len) } else { *r };
                DensityMatrix::from_bloch(r)
            }
            StateSpec::Matrix { re, im } => {
                let d = re.len();
                let square = |rows: &Vec<Vec<f64>>| rows.len() == d && rows.iter().all(|r| r.len() == d);
                if d == 0 || !square(re) || !square(im) {
                    return Err(Error::InvalidState("matrix state must be a non-empty square real/imag pair".into()));
                }
                DensityMatrix::new(CMat::from_fn(d, d, |i, j| c(re[i][j], im[i][j])))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channel: Option<ChannelSpec>,
    /// Coherent information per channel use, as reported by whoever
    /// produced the code.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci_per_use: Option<f64>,
}

/// On-disk form of a code `Σ_i x_i ρ_i^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    #[serde(default = "default_version")]
    pub version: u32,
    pub n: usize,
    pub k: usize,
    pub weights: Vec<f64>,
    pub states: Vec<StateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<CodeMetadata>,
}

fn default_version() -> u32 {
    CODE_FILE_VERSION
}

impl CodeFile {
    pub fn from_ensemble(code: &CodeEnsemble, metadata: Option<CodeMetadata>) -> Self {
        Self {
            version: CODE_FILE_VERSION,
            n: code.n(),
            k: code.k(),
            weights: code.weights(),
            states: code.components().iter().map(|comp| StateSpec::from_matrix(comp.state.matrix())).collect(),
            metadata,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != CODE_FILE_VERSION {
            return Err(Error::InvalidEnsemble(format!("unsupported code file version {}", self.version)));
        }
        if self.weights.len() != self.k || self.states.len() != self.k {
            return Err(Error::InvalidEnsemble(format!(
                "k = {} but {} weights and {} states given",
                self.k,
                self.weights.len(),
                self.states.len()
            )));
        }
        let total: f64 = self.weights.iter().sum();
        if self.weights.iter().any(|&w| !(w >= 0.0)) || (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidDistribution(self.weights.clone()));
        }
        Ok(())
    }

    /// Validates and builds the ensemble. Weights are rescaled to sum to one
    /// exactly, so the file may be off by up to [`WEIGHT_SUM_TOL`].
    pub fn to_ensemble(&self) -> Result<CodeEnsemble> {
        self.validate()?;
        let total: f64 = self.weights.iter().sum();
        let components = self
            .weights
            .iter()
            .zip(&self.states)
            .map(|(&w, s)| Ok((w / total, s.to_density()?)))
            .collect::<Result<Vec<_>>>()?;
        CodeEnsemble::new(self.n, components)
    }

    pub fn channel(&self) -> Option<&ChannelSpec> {
        self.metadata.as_ref().and_then(|m| m.channel.as_ref())
    }
}

/// A published code together with the channel it was found for and the
/// coherent information per use reported alongside it.
#[derive(Clone, Debug, PartialEq)]
pub struct Benchmark {
    pub id: &'static str,
    pub channel: ChannelSpec,
    pub code: CodeFile,
    pub ci_per_use: f64,
}

impl Benchmark {
    pub fn ensemble(&self) -> Result<CodeEnsemble> {
        self.code.to_ensemble()
    }
}

/// A code given directly as a vector on `reference ⊗ inputs`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateBenchmark {
    pub id: &'static str,
    pub channel: ChannelSpec,
    pub n: usize,
    pub d_ref: usize,
    pub layout: RefLayout,
    pub psi: CVec,
    pub ci_per_use: f64,
}

type Row<'a> = (&'a [[f64; 3]], &'a [f64]);

fn benchmark(id: &'static str, source: &str, channel: ChannelSpec, n: usize, pure: bool, (rs, xs): Row<'_>, ci: f64) -> Benchmark {
    // printed weights are rounded and may miss 1 in the last digit
    let total: f64 = xs.iter().sum();
    let code = CodeFile {
        version: CODE_FILE_VERSION,
        n,
        k: xs.len(),
        weights: xs.iter().map(|x| x / total).collect(),
        states: rs.iter().map(|&r| StateSpec::Bloch { r, pure }).collect(),
        metadata: Some(CodeMetadata { source: Some(source.to_string()), channel: Some(channel.clone()), ci_per_use: Some(ci) }),
    };
    Benchmark { id, channel, code, ci_per_use: ci }
}

const DD_PAIR: [[f64; 3]; 2] = [[-0.2053, -0.3352, 0.9195], [0.2024, 0.3404, 0.9182]];

/// Two-state codes at `n = 9` for each channel family. Bloch vectors are
/// read as pure states.
pub fn two_state_codes() -> Vec<Benchmark> {
    use ChannelKind::*;
    let src = "two-state codes, n = 9";
    let row = |id, kind, params: &[f64], rs: &[[f64; 3]], xs: &[f64], ci| {
        benchmark(id, src, ChannelSpec::new(kind, params), 9, true, (rs, xs), ci)
    };
    vec![
        row("two_pauli", TwoPauli, &[0.2271], &[[-0.0597, 0.7647, -0.6416], [0.0624, 0.7643, 0.6418]], &[0.5001, 0.4999], 1.2475e-4),
        row("bb84", Bb84, &[0.112105], &[[0.0383, -0.6934, -0.7196], [-0.0383, -0.6934, 0.7196]], &[0.5, 0.5], 4.9724e-4),
        row("gadc", Gadc, &[0.44035, 0.1], &[[0.5437, 0.4813, -0.6875], [-0.5454, -0.4835, -0.6846]], &[0.4995, 0.5005], 8.8918e-4),
        row("damping_dephasing", DampingDephasing, &[0.16, 0.2], &DD_PAIR, &[0.5, 0.5], 1.2171e-2),
        row("dephrasure_q0.1", Dephrasure, &[0.32, 0.1], &[[-0.0421, 0.8554, -0.5163], [0.0, -0.0004, -1.0]], &[0.1215, 0.8785], 5.2223e-5),
        row("dephrasure_q0.2", Dephrasure, &[0.24, 0.2], &[[-0.0061, -0.9742, -0.2257], [0.0, 0.0, -1.0]], &[0.0317, 0.9683], 1.3181e-6),
        row("dephrasure_q0.3", Dephrasure, &[0.16, 0.3], &[[-0.6907, -0.0557, 0.7210], [0.0003, 0.0, 1.0]], &[0.0207, 0.9793], 2.3103e-5),
        row("dephrasure_q0.4", Dephrasure, &[0.08, 0.4], &[[0.0063, -0.0015, -1.0], [-0.4533, 0.1052, -0.8851]], &[0.9465, 0.0535], 5.4524e-5),
    ]
}

/// `k`-state codes for damping-dephasing `(p, g) = (0.16, 0.2)` at `n = 5`.
/// The printed Bloch vectors have lengths visibly below one and are taken
/// literally.
pub fn k_state_codes() -> Vec<Benchmark> {
    let src = "k-state damping-dephasing codes, n = 5";
    let ch = ChannelSpec::new(ChannelKind::DampingDephasing, &[0.16, 0.2]);
    let row = |id, rs: &[[f64; 3]], xs: &[f64], ci| benchmark(id, src, ch.clone(), 5, false, (rs, xs), ci);
    vec![
        row("dd_k2", &DD_PAIR, &[0.5, 0.5], 1.4707e-2),
        row(
            "dd_k3",
            &[[0.4681, 0.1773, 0.8657], [-0.3875, 0.3147, 0.8665], [-0.0780, -0.4946, 0.8656]],
            &[0.3339, 0.3337, 0.3325],
            1.9899e-2,
        ),
        row(
            "dd_k4",
            &[[0.5122, -0.2180, 0.8306], [-0.2214, -0.5116, 0.8301], [0.2209, 0.5116, 0.8303], [-0.5105, 0.2216, 0.8307]],
            &[0.2497, 0.2523, 0.2484, 0.2497],
            2.1175e-2,
        ),
        row(
            "dd_k5",
            &[
                [-0.5144, -0.2607, 0.8169],
                [0.2582, 0.5166, 0.8164],
                [-0.4089, 0.4074, 0.8166],
                [0.0871, -0.5706, 0.8166],
                [0.5722, -0.0871, 0.8155],
            ],
            &[0.1998, 0.1986, 0.1997, 0.2005, 0.2014],
            2.1474e-2,
        ),
    ]
}

/// A three-use damping-dephasing code with a large reference system,
/// given as amplitudes on `|r⟩|a_1 a_2 a_3⟩` with an eight-dimensional
/// reference. Each label is `reference|inputs`.
pub fn network_code() -> StateBenchmark {
    let common = c(0.2351, -0.1769);
    let entries = [
        ("000|000", common),
        ("001|000", common),
        ("010|000", c(-0.0306, -0.4689)),
        ("011|001", common),
        ("011|010", common),
        ("011|100", common),
        ("100|000", common),
        ("101|000", common),
        ("110|000", common),
        ("111|000", common),
    ];
    let mut psi = CVec::zeros(64);
    for (label, amp) in entries {
        let (r, a) = label.split_once('|').expect("label has a separator");
        let idx = usize::from_str_radix(r, 2).expect("binary") * 8 + usize::from_str_radix(a, 2).expect("binary");
        psi[idx] = amp;
    }
    let psi = psi.normalize();
    StateBenchmark {
        id: "dd_network",
        channel: ChannelSpec::new(ChannelKind::DampingDephasing, &[0.16, 0.2]),
        n: 3,
        d_ref: 8,
        layout: RefLayout::RefFirst,
        psi,
        ci_per_use: 2.0046e-2,
    }
}

/// All bundled ensemble codes.
pub fn bundled() -> Vec<Benchmark> {
    two_state_codes().into_iter().chain(k_state_codes()).collect()
}

pub fn find_bundled(id: &str) -> Option<Benchmark> {
    bundled().into_iter().find(|b| b.id == id)
}
