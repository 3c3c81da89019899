//! Noise thresholds of codes along one-parameter channel families.

use serde::Serialize;

use super::{optimize_ci, Ansatz, SwarmConfig};
use crate::channel::KrausChannel;
use crate::coherent::{coherent_information, Formula};
use crate::error::{Error, Result};
use crate::state::CodeEnsemble;

/// Coherent information at or below this counts as zero.
pub const POSITIVITY_CUT: f64 = 1e-12;

/// Where the code comes from at each noise level.
#[derive(Clone, Debug)]
pub enum CodeSource {
    /// One code evaluated at every noise level.
    Fixed(CodeEnsemble),
    /// The code is re-optimized at every noise level.
    Optimize { ansatz: Ansatz, config: SwarmConfig },
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdResult {
    /// Largest noise level found with positive coherent information.
    pub threshold: f64,
    /// Smallest noise level found with non-positive coherent information.
    pub upper: f64,
    /// `(noise, coherent information)` at every evaluated point.
    pub trace: Vec<(f64, f64)>,
}

fn ci_at(family: &dyn Fn(f64) -> Result<KrausChannel>, source: &CodeSource, n: usize, x: f64) -> Result<f64> {
    let channel = family(x)?;
    match source {
        CodeSource::Fixed(code) => Ok(coherent_information(&channel, &code.with_n(n)?, Formula::Auto)?.total),
        CodeSource::Optimize { ansatz, config } => Ok(optimize_ci(&channel, n, ansatz, config)?.ci.total),
    }
}

/// Bisects for the noise level where the coherent information of `n` channel
/// uses drops to zero. Requires positive coherent information at `bracket.0`
/// and none at `bracket.1`.
pub fn threshold(
    family: &dyn Fn(f64) -> Result<KrausChannel>,
    source: &CodeSource,
    n: usize,
    bracket: (f64, f64),
    tol: f64,
) -> Result<ThresholdResult> {
    let (mut lo, mut hi) = bracket;
    let mut trace = Vec::new();
    let f_lo = ci_at(family, source, n, lo)?;
    trace.push((lo, f_lo));
    if f_lo <= POSITIVITY_CUT {
        return Err(Error::NoBracket(format!("coherent information {f_lo:e} is not positive at {lo}")));
    }
    let f_hi = ci_at(family, source, n, hi)?;
    trace.push((hi, f_hi));
    if f_hi > POSITIVITY_CUT {
        return Err(Error::NoBracket(format!("coherent information {f_hi:e} is still positive at {hi}")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f = ci_at(family, source, n, mid)?;
        trace.push((mid, f));
        if f > POSITIVITY_CUT {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdResult { threshold: lo, upper: hi, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{real, CVec};

    #[test]
    fn dephasing_threshold_is_one_half() {
        let s = 0.5f64.sqrt();
        let plus = CVec::from_vec(vec![real(s), real(s)]);
        let minus = CVec::from_vec(vec![real(s), real(-s)]);
        let code = CodeEnsemble::from_pure(1, vec![(0.5, plus), (0.5, minus)]).unwrap();
        let family = |p: f64| KrausChannel::pauli([1.0 - p, 0.0, 0.0, p]);
        let out = threshold(&family, &CodeSource::Fixed(code), 1, (0.0, 0.5), 1e-8).unwrap();
        assert!((out.threshold - 0.5).abs() < 1e-6);
        assert!(out.upper - out.threshold <= 1e-8);
    }

    #[test]
    fn reports_missing_bracket() {
        let code = CodeEnsemble::from_pure(1, vec![(1.0, CVec::from_vec(vec![real(1.0), real(0.0)]))]).unwrap();
        let family = |p: f64| KrausChannel::depolarizing(p);
        let err = threshold(&family, &CodeSource::Fixed(code), 1, (0.0, 0.5), 1e-6).unwrap_err();
        assert!(matches!(err, Error::NoBracket(_)));
    }
}
