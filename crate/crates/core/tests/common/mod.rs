#![allow(dead_code)]

use permci::linalg::{c, CMat, CVec};
use permci::{CodeEnsemble, KrausChannel};
use rand::Rng;

pub fn oracle_channels() -> Vec<(&'static str, KrausChannel)> {
    vec![
        ("pauli", KrausChannel::pauli([0.7, 0.1, 0.05, 0.15]).unwrap()),
        ("two_pauli", KrausChannel::two_pauli(0.2271).unwrap()),
        ("bb84", KrausChannel::bb84(0.112105).unwrap()),
        ("depolarizing", KrausChannel::depolarizing(0.19).unwrap()),
        ("dephrasure", KrausChannel::dephrasure(0.24, 0.2).unwrap()),
        ("gadc", KrausChannel::gadc(0.44035, 0.1).unwrap()),
        ("damping_dephasing", KrausChannel::damping_dephasing(0.16, 0.2).unwrap()),
    ]
}

pub fn random_vector(rng: &mut impl Rng, d: usize) -> CVec {
    let v = CVec::from_fn(d, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
    v.normalize()
}

pub fn random_pure_code(rng: &mut impl Rng, n: usize, k: usize, d: usize) -> CodeEnsemble {
    let raw: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + 0.05).collect();
    let total: f64 = raw.iter().sum();
    CodeEnsemble::from_pure(n, raw.iter().map(|w| (w / total, random_vector(rng, d))).collect()).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, d: usize, scale: f64) -> CMat {
    CMat::from_fn(d, d, |_, _| c(scale * (rng.gen::<f64>() - 0.5), scale * (rng.gen::<f64>() - 0.5)))
}

pub fn random_unitary(rng: &mut impl Rng, d: usize) -> CMat {
    random_matrix(rng, d, 2.0).qr().q()
}

pub fn relative(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}
