//! Coherent information `I_c = S(B^n) - S(R B^n)` of permutation-invariant
//! codes.
//!
//! All block evaluators skip diagrams whose weight falls below
//! [`WEIGHT_CUT`] and report the dropped mass in
//! [`CIBreakdown::error_budget`]. Diagrams are processed in parallel and
//! summed in a fixed order, so results do not depend on the thread count.

mod blocks;
mod breakdown;
mod brute;
mod entropy;
mod mixed;
mod pure;
mod purified;

pub use blocks::WEIGHT_CUT;
pub use breakdown::{CIBreakdown, Formula, LambdaTerm};
pub use brute::{ci_brute, ci_brute_state, RefLayout, BRUTE_LIMIT};
pub use entropy::{entropy, entropy_from_eigenvalues, shannon_entropy, von_neumann_entropy};
pub use mixed::ci_mixed;
pub use pure::ci_pure;
pub use purified::ci_purified;

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::state::CodeEnsemble;

fn check_input_dim(channel: &KrausChannel, code: &CodeEnsemble) -> Result<()> {
    if channel.d_in() != code.d() {
        return Err(Error::ShapeMismatch {
            expected: format!("code on {}-dimensional inputs", channel.d_in()),
            got: format!("{}-dimensional code states", code.d()),
        });
    }
    Ok(())
}

/// The evaluator [`Formula::Auto`] resolves to for this code.
pub fn resolve_formula(code: &CodeEnsemble, formula: Formula) -> Formula {
    match formula {
        Formula::Auto if code.is_pure() => Formula::Purified,
        Formula::Auto => Formula::Mixed,
        other => other,
    }
}

/// Coherent information with the chosen evaluator.
pub fn coherent_information(channel: &KrausChannel, code: &CodeEnsemble, formula: Formula) -> Result<CIBreakdown> {
    match resolve_formula(code, formula) {
        Formula::Mixed => ci_mixed(channel, code),
        Formula::Pure => ci_pure(channel, code),
        Formula::Purified => ci_purified(channel, code),
        Formula::Brute => Ok(CIBreakdown {
            formula: Formula::Brute,
            n: code.n(),
            total: ci_brute(channel, code)?,
            error_budget: 0.0,
            terms: Vec::new(),
        }),
        Formula::Auto => unreachable!("resolved above"),
    }
}

/// Per-diagram contributions, for diagnostics.
pub fn irrep_contributions(channel: &KrausChannel, code: &CodeEnsemble, formula: Formula) -> Result<Vec<LambdaTerm>> {
    Ok(coherent_information(channel, code, formula)?.terms)
}
