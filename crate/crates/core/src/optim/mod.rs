//! Searching for codes with large coherent information.

mod ansatz;
mod decode;
mod pso;
mod simplex;
mod threshold;

pub use ansatz::{ansatz_unitary, nonorthogonal_pair, Ansatz};
pub use decode::{decode, normalize_weights, Scheme, BLOCH_BOUND};
pub use pso::{pso, pso_restarts, PsoOutcome, SwarmConfig};
pub use simplex::{simplex_point, simplex_rays, simplex_scan, SimplexConfig, SimplexPoint};
pub use threshold::{threshold, CodeSource, ThresholdResult, POSITIVITY_CUT};

use crate::channel::KrausChannel;
use crate::coherent::{coherent_information, CIBreakdown};
use crate::error::Result;
use crate::state::CodeEnsemble;

#[derive(Clone, Debug)]
pub struct OptimizeOutcome {
    pub code: CodeEnsemble,
    pub ci: CIBreakdown,
    pub params: Vec<f64>,
    pub evaluations: usize,
}

/// Coherent information of `N^{⊗n}` on the code decoded from `x`, or `-∞`
/// when the parameters do not describe a valid code.
pub fn objective(channel: &KrausChannel, n: usize, ansatz: &Ansatz, x: &[f64]) -> f64 {
    match ansatz.decode(x, channel.d_in(), n).and_then(|code| coherent_information(channel, &code, ansatz.formula())) {
        Ok(b) => b.total,
        Err(e) => {
            log::trace!("objective rejected parameters: {e}");
            f64::NEG_INFINITY
        }
    }
}

/// Maximizes the coherent information over the ansatz with a particle swarm.
pub fn optimize_ci(channel: &KrausChannel, n: usize, ansatz: &Ansatz, config: &SwarmConfig) -> Result<OptimizeOutcome> {
    let d = channel.d_in();
    let bounds = ansatz.bounds(d);
    let run = pso_restarts(|x| -objective(channel, n, ansatz, x), &bounds, config);
    let code = ansatz.decode(&run.position, d, n)?;
    let ci = coherent_information(channel, &code, ansatz.formula())?;
    Ok(OptimizeOutcome { code, ci, params: run.position, evaluations: run.evaluations })
}
