//! Quantum channels in Kraus form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, max_abs, real, CMat};

/// A channel `ρ ↦ Σ_e K_e ρ K_e†` with `d_out × d_in` Kraus operators. The
/// number of operators is the environment dimension of its Stinespring
/// dilation.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    kraus: Vec<CMat>,
    d_in: usize,
    d_out: usize,
}

const TRACE_PRESERVATION_TOL: f64 = 1e-10;

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::ParameterRange { name, value });
    }
    Ok(())
}

fn check_distribution(p: &[f64]) -> Result<()> {
    let total: f64 = p.iter().sum();
    if p.iter().any(|&v| !(v >= 0.0) || v > 1.0) || (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidDistribution(p.to_vec()));
    }
    Ok(())
}

fn pauli_matrices() -> [CMat; 4] {
    let o = real(0.0);
    let one = real(1.0);
    [
        CMat::from_row_slice(2, 2, &[one, o, o, one]),
        CMat::from_row_slice(2, 2, &[o, one, one, o]),
        CMat::from_row_slice(2, 2, &[o, c(0.0, -1.0), c(0.0, 1.0), o]),
        CMat::from_row_slice(2, 2, &[one, o, o, -one]),
    ]
}

/// The Pauli matrices `I, X, Y, Z`.
pub fn paulis() -> [CMat; 4] {
    pauli_matrices()
}

fn matrix(rows: usize, cols: usize, entries: &[(usize, usize, f64)]) -> CMat {
    let mut m = CMat::zeros(rows, cols);
    for &(i, j, v) in entries {
        m[(i, j)] = real(v);
    }
    m
}

impl KrausChannel {
    /// Builds a channel from Kraus operators, checking shapes and
    /// `Σ K†K = I` to within `1e-10`.
    pub fn from_kraus(kraus: Vec<CMat>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::InvalidChannel("no Kraus operators".into()))?;
        let (d_out, d_in) = first.shape();
        if d_in == 0 || d_out == 0 {
            return Err(Error::InvalidChannel("empty Kraus operator".into()));
        }
        for k in &kraus {
            if k.shape() != (d_out, d_in) {
                return Err(Error::ShapeMismatch {
                    expected: format!("{d_out}x{d_in} Kraus operator"),
                    got: format!("{}x{}", k.nrows(), k.ncols()),
                });
            }
        }
        let channel = Self { kraus, d_in, d_out };
        let err = channel.trace_preservation_error();
        if err > TRACE_PRESERVATION_TOL {
            return Err(Error::InvalidChannel(format!("not trace preserving (deviation {err:e})")));
        }
        Ok(channel)
    }

    pub fn identity(d: usize) -> Self {
        Self { kraus: vec![CMat::identity(d, d)], d_in: d, d_out: d }
    }

    /// Pauli channel with probabilities `(p_I, p_X, p_Y, p_Z)`. All four Kraus
    /// operators are kept, so the environment is four-dimensional.
    pub fn pauli(p: [f64; 4]) -> Result<Self> {
        check_distribution(&p)?;
        let kraus = pauli_matrices().into_iter().zip(p).map(|(s, pi)| s * real(pi.sqrt())).collect();
        Ok(Self { kraus, d_in: 2, d_out: 2 })
    }

    /// Pauli channel that keeps only Kraus operators of non-zero
    /// probability. Same action as [`KrausChannel::pauli`], smaller
    /// environment.
    pub fn pauli_minimal(p: [f64; 4]) -> Result<Self> {
        check_distribution(&p)?;
        let kraus = pauli_matrices()
            .into_iter()
            .zip(p)
            .filter(|&(_, pi)| pi > 0.0)
            .map(|(s, pi)| s * real(pi.sqrt()))
            .collect();
        Ok(Self { kraus, d_in: 2, d_out: 2 })
    }

    /// `p_I = 1 - p`, `p_X = p_Z = p/2`, `p_Y = 0`. The `Y` operator is
    /// omitted, leaving a three-dimensional environment.
    pub fn two_pauli(p: f64) -> Result<Self> {
        check_unit("p", p)?;
        let third = [
            pauli_matrices()[0].clone() * real((1.0 - p).sqrt()),
            pauli_matrices()[1].clone() * real((p / 2.0).sqrt()),
            pauli_matrices()[3].clone() * real((p / 2.0).sqrt()),
        ];
        Ok(Self { kraus: third.to_vec(), d_in: 2, d_out: 2 })
    }

    /// Independent bit and phase flips with probability `p` each.
    pub fn bb84(p: f64) -> Result<Self> {
        check_unit("p", p)?;
        Self::pauli([(1.0 - p) * (1.0 - p), p - p * p, p * p, p - p * p])
    }

    /// `p_I = 1 - p`, `p_X = p_Y = p_Z = p/3`.
    pub fn depolarizing(p: f64) -> Result<Self> {
        check_unit("p", p)?;
        Self::pauli([1.0 - p, p / 3.0, p / 3.0, p / 3.0])
    }

    /// Dephasing with probability `p` on the qubit, then erasure with
    /// probability `q` into the flag state `|2⟩`.
    pub fn dephrasure(p: f64, q: f64) -> Result<Self> {
        check_unit("p", p)?;
        check_unit("q", q)?;
        let keep = ((1.0 - q) * (1.0 - p)).sqrt();
        let flip = ((1.0 - q) * p).sqrt();
        let erase = q.sqrt();
        let kraus = vec![
            matrix(3, 2, &[(0, 0, keep), (1, 1, keep)]),
            matrix(3, 2, &[(0, 0, flip), (1, 1, -flip)]),
            matrix(3, 2, &[(2, 0, erase)]),
            matrix(3, 2, &[(2, 1, erase)]),
        ];
        Ok(Self { kraus, d_in: 2, d_out: 3 })
    }

    /// Generalized amplitude damping with damping `gamma` and thermal
    /// population `noise`.
    pub fn gadc(gamma: f64, noise: f64) -> Result<Self> {
        check_unit("gamma", gamma)?;
        check_unit("N", noise)?;
        let a = (1.0 - noise).sqrt();
        let b = noise.sqrt();
        let s = (1.0 - gamma).sqrt();
        let g = gamma.sqrt();
        let kraus = vec![
            matrix(2, 2, &[(0, 0, a), (1, 1, a * s)]),
            matrix(2, 2, &[(0, 1, a * g)]),
            matrix(2, 2, &[(0, 0, b * s), (1, 1, b)]),
            matrix(2, 2, &[(1, 0, b * g)]),
        ];
        Ok(Self { kraus, d_in: 2, d_out: 2 })
    }

    /// Amplitude damping with strength `g` combined with dephasing of
    /// probability `p`.
    pub fn damping_dephasing(p: f64, g: f64) -> Result<Self> {
        check_unit("p", p)?;
        check_unit("g", g)?;
        let s = (1.0 - g).sqrt();
        let keep = (1.0 - p).sqrt();
        let flip = p.sqrt();
        let kraus = vec![
            matrix(2, 2, &[(0, 0, keep), (1, 1, keep * s)]),
            matrix(2, 2, &[(0, 1, g.sqrt())]),
            matrix(2, 2, &[(0, 0, flip), (1, 1, -flip * s)]),
        ];
        Ok(Self { kraus, d_in: 2, d_out: 2 })
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn d_env(&self) -> usize {
        self.kraus.len()
    }

    /// `max |Σ K†K - I|`.
    pub fn trace_preservation_error(&self) -> f64 {
        let mut sum = CMat::zeros(self.d_in, self.d_in);
        for k in &self.kraus {
            sum += k.adjoint() * k;
        }
        max_abs(&(sum - CMat::identity(self.d_in, self.d_in)))
    }

    /// Linear action on an arbitrary (not necessarily Hermitian) operator.
    pub fn apply(&self, x: &CMat) -> Result<CMat> {
        if x.shape() != (self.d_in, self.d_in) {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{} input", self.d_in, self.d_in),
                got: format!("{}x{}", x.nrows(), x.ncols()),
            });
        }
        let mut out = CMat::zeros(self.d_out, self.d_out);
        for k in &self.kraus {
            out += k * x * k.adjoint();
        }
        Ok(out)
    }

    /// Complementary channel, Kraus operators `(K^c_b)_{e,a} = (K_e)_{b,a}`.
    pub fn complementary(&self) -> Self {
        let d_env = self.d_env();
        let kraus = (0..self.d_out)
            .map(|b| CMat::from_fn(d_env, self.d_in, |e, a| self.kraus[e][(b, a)]))
            .collect();
        Self { kraus, d_in: self.d_in, d_out: d_env }
    }

    /// Choi matrix `Σ_{ij} |i⟩⟨j| ⊗ N(|i⟩⟨j|)`.
    pub fn choi(&self) -> CMat {
        let d = self.d_in;
        let mut out = CMat::zeros(d * self.d_out, d * self.d_out);
        for i in 0..d {
            for j in 0..d {
                let mut unit = CMat::zeros(d, d);
                unit[(i, j)] = real(1.0);
                let block = self.apply(&unit).expect("shape checked");
                out.view_mut((i * self.d_out, j * self.d_out), (self.d_out, self.d_out)).copy_from(&block);
            }
        }
        out
    }
}

/// Named channel families that can be described in a config or code file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Identity,
    Pauli,
    TwoPauli,
    Bb84,
    Depolarizing,
    Dephrasure,
    Gadc,
    DampingDephasing,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 8] = [
        ChannelKind::Identity,
        ChannelKind::Pauli,
        ChannelKind::TwoPauli,
        ChannelKind::Bb84,
        ChannelKind::Depolarizing,
        ChannelKind::Dephrasure,
        ChannelKind::Gadc,
        ChannelKind::DampingDephasing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::Identity => "identity",
            ChannelKind::Pauli => "pauli",
            ChannelKind::TwoPauli => "two_pauli",
            ChannelKind::Bb84 => "bb84",
            ChannelKind::Depolarizing => "depolarizing",
            ChannelKind::Dephrasure => "dephrasure",
            ChannelKind::Gadc => "gadc",
            ChannelKind::DampingDephasing => "damping_dephasing",
        }
    }

    /// Parameter names in the order expected by [`ChannelSpec::build`].
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            ChannelKind::Identity => &[],
            ChannelKind::Pauli => &["p_i", "p_x", "p_y", "p_z"],
            ChannelKind::TwoPauli | ChannelKind::Bb84 | ChannelKind::Depolarizing => &["p"],
            ChannelKind::Dephrasure => &["p", "q"],
            ChannelKind::Gadc => &["gamma", "N"],
            ChannelKind::DampingDephasing => &["p", "g"],
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::InvalidChannel(format!("unknown channel '{s}'")))
    }
}

/// A channel family together with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub name: ChannelKind,
    #[serde(default)]
    pub params: Vec<f64>,
}

impl ChannelSpec {
    pub fn new(name: ChannelKind, params: &[f64]) -> Self {
        Self { name, params: params.to_vec() }
    }

    pub fn build(&self) -> Result<KrausChannel> {
        let expected = self.name.param_names().len();
        if self.params.len() != expected {
            return Err(Error::InvalidChannel(format!(
                "{} takes {expected} parameter(s) ({}), got {}",
                self.name,
                self.name.param_names().join(", "),
                self.params.len()
            )));
        }
        let p = &self.params;
        match self.name {
            ChannelKind::Identity => Ok(KrausChannel::identity(2)),
            ChannelKind::Pauli => KrausChannel::pauli([p[0], p[1], p[2], p[3]]),
            ChannelKind::TwoPauli => KrausChannel::two_pauli(p[0]),
            ChannelKind::Bb84 => KrausChannel::bb84(p[0]),
            ChannelKind::Depolarizing => KrausChannel::depolarizing(p[0]),
            ChannelKind::Dephrasure => KrausChannel::dephrasure(p[0], p[1]),
            ChannelKind::Gadc => KrausChannel::gadc(p[0], p[1]),
            ChannelKind::DampingDephasing => KrausChannel::damping_dephasing(p[0], p[1]),
        }
    }

    /// The same family with the named parameter replaced.
    pub fn with_param(&self, name: &str, value: f64) -> Result<Self> {
        let i = self.name.param_names().iter().position(|&p| p == name).ok_or_else(|| {
            Error::InvalidChannel(format!("{} has no parameter `{name}` (has {})", self.name, self.name.param_names().join(", ")))
        })?;
        let mut out = self.clone();
        out.params.resize(self.name.param_names().len(), 0.0);
        out.params[i] = value;
        Ok(out)
    }

    /// `(p_I, p_X, p_Y, p_Z)` for the Pauli families.
    pub fn pauli_distribution(&self) -> Option<[f64; 4]> {
        let p = &self.params;
        match self.name {
            ChannelKind::Pauli if p.len() == 4 => Some([p[0], p[1], p[2], p[3]]),
            ChannelKind::TwoPauli if p.len() == 1 => Some([1.0 - p[0], p[0] / 2.0, 0.0, p[0] / 2.0]),
            ChannelKind::Bb84 if p.len() == 1 => {
                let q = p[0];
                Some([(1.0 - q) * (1.0 - q), q - q * q, q * q, q - q * q])
            }
            ChannelKind::Depolarizing if p.len() == 1 => Some([1.0 - p[0], p[0] / 3.0, p[0] / 3.0, p[0] / 3.0]),
            _ => None,
        }
    }

    /// The same family with its first parameter replaced, used for sweeps.
    pub fn with_first(&self, value: f64) -> Self {
        let mut out = self.clone();
        if let Some(first) = out.params.first_mut() {
            *first = value;
        }
        out
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.params.is_empty() {
            let params: Vec<String> = self.params.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", params.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigvalsh, trace};

    fn all_channels() -> Vec<(&'static str, KrausChannel)> {
        vec![
            ("pauli", KrausChannel::pauli([0.7, 0.1, 0.05, 0.15]).unwrap()),
            ("two_pauli", KrausChannel::two_pauli(0.2271).unwrap()),
            ("bb84", KrausChannel::bb84(0.11).unwrap()),
            ("depolarizing", KrausChannel::depolarizing(0.19).unwrap()),
            ("dephrasure", KrausChannel::dephrasure(0.1, 0.2).unwrap()),
            ("gadc", KrausChannel::gadc(0.3, 0.1).unwrap()),
            ("damping_dephasing", KrausChannel::damping_dephasing(0.1, 0.2).unwrap()),
        ]
    }

    fn random_state(seed: u64, d: usize) -> CMat {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = CMat::from_fn(d, d, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        let rho = &g * g.adjoint();
        let t = trace(&rho);
        rho / t
    }

    #[test]
    fn channels_are_trace_preserving() {
        for (name, ch) in all_channels() {
            assert!(ch.trace_preservation_error() < 1e-12, "{name}");
            assert!(ch.complementary().trace_preservation_error() < 1e-12, "{name}");
        }
    }

    #[test]
    fn outputs_are_states() {
        for (name, ch) in all_channels() {
            let out = ch.apply(&random_state(1, ch.d_in())).unwrap();
            assert!((trace(&out).re - 1.0).abs() < 1e-12, "{name}");
            assert!(eigvalsh(&out).iter().all(|&v| v > -1e-12), "{name}");
            // B and E outputs of a pure input share their spectrum
            let pure = {
                let mut m = CMat::zeros(ch.d_in(), ch.d_in());
                m[(0, 0)] = real(0.6);
                m[(1, 1)] = real(0.4);
                m[(0, 1)] = real((0.24f64).sqrt());
                m[(1, 0)] = real((0.24f64).sqrt());
                m
            };
            let mut sb = eigvalsh(&ch.apply(&pure).unwrap());
            let mut se = eigvalsh(&ch.complementary().apply(&pure).unwrap());
            sb.retain(|v| v.abs() > 1e-12);
            se.retain(|v| v.abs() > 1e-12);
            sb.sort_by(f64::total_cmp);
            se.sort_by(f64::total_cmp);
            assert_eq!(sb.len(), se.len(), "{name}");
            for (a, b) in sb.iter().zip(&se) {
                assert!((a - b).abs() < 1e-12, "{name}");
            }
        }
    }

    #[test]
    fn unitary_channel_complement_is_trace() {
        let ch = KrausChannel::identity(2);
        let comp = ch.complementary();
        assert_eq!(comp.d_out(), 1);
        let out = comp.apply(&random_state(3, 2)).unwrap();
        assert!((out[(0, 0)] - real(1.0)).norm() < 1e-14);
    }

    #[test]
    fn depolarizing_bloch_shrinkage() {
        let p = 0.3;
        let ch = KrausChannel::depolarizing(p).unwrap();
        let z = paulis()[3].clone();
        let out = ch.apply(&z).unwrap();
        assert!(max_abs(&(out - z * real(1.0 - 4.0 * p / 3.0))) < 1e-14);
    }

    #[test]
    fn dephrasure_erases_to_flag() {
        let ch = KrausChannel::dephrasure(0.0, 1.0).unwrap();
        let out = ch.apply(&random_state(5, 2)).unwrap();
        assert!((out[(2, 2)] - real(1.0)).norm() < 1e-14);
    }

    #[test]
    fn gadc_fixed_point_is_thermal() {
        let noise = 0.2;
        let ch = KrausChannel::gadc(1.0, noise).unwrap();
        let out = ch.apply(&random_state(2, 2)).unwrap();
        assert!((out[(0, 0)].re - (1.0 - noise)).abs() < 1e-14);
        assert!((out[(1, 1)].re - noise).abs() < 1e-14);
    }

    #[test]
    fn choi_trace_and_partial_trace() {
        for (name, ch) in all_channels() {
            let j = ch.choi();
            assert!((trace(&j).re - ch.d_in() as f64).abs() < 1e-12, "{name}");
            assert!(eigvalsh(&j).iter().all(|&v| v > -1e-12), "{name}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(KrausChannel::pauli([0.5, 0.5, 0.1, 0.0]).is_err());
        assert!(KrausChannel::two_pauli(1.5).is_err());
        assert!(KrausChannel::gadc(-0.1, 0.0).is_err());
        assert!(KrausChannel::from_kraus(vec![CMat::identity(2, 2) * real(0.5)]).is_err());
        assert_eq!(KrausChannel::pauli_minimal([0.5, 0.0, 0.0, 0.5]).unwrap().d_env(), 2);
    }

    #[test]
    fn spec_parameters_by_name() {
        let spec = ChannelSpec::new(ChannelKind::DampingDephasing, &[0.16, 0.2]);
        assert_eq!(spec.with_param("g", 0.25).unwrap().params, vec![0.16, 0.25]);
        assert!(spec.with_param("q", 0.1).is_err());
        let bb84 = ChannelSpec::new(ChannelKind::Bb84, &[0.1]);
        let from_spec = KrausChannel::pauli(bb84.pauli_distribution().unwrap()).unwrap();
        let x = c(0.3, 0.1);
        let rho = CMat::from_row_slice(2, 2, &[real(0.6), x, x.conj(), real(0.4)]);
        assert!(max_abs(&(from_spec.apply(&rho).unwrap() - bb84.build().unwrap().apply(&rho).unwrap())) < 1e-15);
        assert!(spec.pauli_distribution().is_none());
    }

    #[test]
    fn spec_builds_named_channels() {
        let spec = ChannelSpec::new("damping-dephasing".parse().unwrap(), &[0.16, 0.2]);
        assert_eq!(spec.build().unwrap(), KrausChannel::damping_dephasing(0.16, 0.2).unwrap());
        assert_eq!(spec.to_string(), "damping_dephasing(0.16, 0.2)");
        assert!(ChannelSpec::new(ChannelKind::Gadc, &[0.1]).build().is_err());
        assert!("erasure".parse::<ChannelKind>().is_err());
        for kind in ChannelKind::ALL {
            assert_eq!(kind.name().parse::<ChannelKind>().unwrap(), kind);
        }
    }
}
