use anyhow::{bail, Result};
use clap::Args;
use permci::coherent::{ci_brute, ci_mixed, ci_pure, ci_purified};
use permci::optim::{Ansatz, Scheme};
use permci::rep::{dim_gl_irrep, dim_sym_irrep, partitions_of};
use permci::{ChannelKind, ChannelSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Context;

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Random codes per channel and copy count.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Largest n for the Schur-Weyl dimension identity.
    #[arg(long, default_value_t = 12)]
    identity_max_n: usize,
    #[arg(long, default_value_t = 4)]
    identity_max_d: usize,
}

fn oracle_channels() -> Vec<ChannelSpec> {
    use ChannelKind::*;
    vec![
        ChannelSpec::new(Pauli, &[0.7, 0.1, 0.05, 0.15]),
        ChannelSpec::new(TwoPauli, &[0.2271]),
        ChannelSpec::new(Bb84, &[0.112105]),
        ChannelSpec::new(Depolarizing, &[0.19]),
        ChannelSpec::new(Dephrasure, &[0.24, 0.2]),
        ChannelSpec::new(Gadc, &[0.44035, 0.1]),
        ChannelSpec::new(DampingDephasing, &[0.16, 0.2]),
    ]
}

/// Largest irrep dimension over λ ⊢_d n.
fn max_dim(n: usize, d: usize) -> u128 {
    partitions_of(n, d).iter().map(|l| dim_gl_irrep(l, d)).max().unwrap_or(0)
}

pub fn run(ctx: &Context, args: &OracleArgs) -> Result<()> {
    let mut failures = 0;
    let mut report = |ok: bool, line: String| {
        println!("{} {line}", if ok { "PASS" } else { "FAIL" });
        failures += usize::from(!ok);
    };

    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed.unwrap_or(2024));
    for spec in oracle_channels() {
        let ch = spec.build()?;
        let ansatz = Ansatz::FreeKState { k: 2, scheme: Scheme::PureVector };
        let bounds = ansatz.bounds(ch.d_in());
        for n in 1..=args.max_n {
            let mut worst = 0.0f64;
            for _ in 0..args.trials {
                let x: Vec<f64> = bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
                let code = ansatz.decode(&x, ch.d_in(), n)?;
                let brute = ci_brute(&ch, &code)?;
                worst = worst.max((ci_mixed(&ch, &code)?.total - brute).abs());
                worst = worst.max((ci_purified(&ch, &code)?.total - brute).abs());
                if ch.d_out() <= ch.d_env() {
                    worst = worst.max((ci_pure(&ch, &code)?.total - brute).abs());
                }
            }
            report(worst <= args.tol, format!("evaluators vs brute force, {spec}, n = {n}: max deviation {worst:.2e}"));
        }
    }

    let mut off = 0u128;
    for d in 1..=args.identity_max_d {
        for n in 0..=args.identity_max_n {
            let total: u128 = partitions_of(n, d).iter().map(|l| dim_gl_irrep(l, d) * dim_sym_irrep(l)).sum();
            off = off.max(total.abs_diff((d as u128).pow(n as u32)));
        }
    }
    report(
        off == 0,
        format!("sum of dim V_λ dim S_λ equals d^n for d <= {}, n <= {}", args.identity_max_d, args.identity_max_n),
    );

    let ns = [6, 8, 10, 12, 15, 16];
    let got: Vec<(u128, u128)> = ns.iter().map(|&n| (max_dim(n, 2), max_dim(n, 4))).collect();
    let expected: Vec<(u128, u128)> = vec![(7, 140), (9, 360), (11, 770), (13, 1540), (16, 4004), (17, 5376)];
    report(got == expected, format!("largest irrep dimensions for d = 2 and d = 4 at n = {ns:?}: {got:?}"));

    if failures > 0 {
        bail!("{failures} check(s) failed");
    }
    Ok(())
}
