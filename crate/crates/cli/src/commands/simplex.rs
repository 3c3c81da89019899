//! Pauli simplex scan. One CSV row per (ray, n, code angle):
//! `theta_index, phi_index, q_x, q_y, q_z, n, code_phi, hashing_threshold,
//! code_threshold, difference, skipped`. Thresholds are empty for skipped rays
//! and for codes that never become positive.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use permci::optim::{simplex_point, simplex_rays, SimplexConfig};

use crate::output::{num, opt_num, CsvSink};
use crate::{Context, SwarmArgs};

pub const SIMPLEX_HEADER: [&str; 11] = [
    "theta_index",
    "phi_index",
    "q_x",
    "q_y",
    "q_z",
    "n",
    "code_phi",
    "hashing_threshold",
    "code_threshold",
    "difference",
    "skipped",
];

#[derive(Args, Debug)]
pub struct SimplexArgs {
    /// Angular grid spacing pi / 2^exponent; 6 gives 32 x 32 rays.
    #[arg(long)]
    exponent: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Comma-separated code overlap angles.
    #[arg(long, value_delimiter = ',')]
    phi: Vec<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    swarm: SwarmArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(ctx: &Context, args: &SimplexArgs) -> Result<()> {
    let mut cfg = ctx.config.simplex.clone().unwrap_or_default();
    if let Some(e) = args.exponent {
        cfg.exponent = e;
    }
    if !args.n.is_empty() {
        cfg.n_values = args.n.clone();
    } else if let Some(n) = &ctx.config.n {
        cfg.n_values = n.to_vec();
    }
    if !args.phi.is_empty() {
        cfg.phis = args.phi.clone();
    }
    if let Some(t) = args.tol {
        cfg.tolerance = t;
    }
    // the swarm table of the file is the simplex one when both are present
    if ctx.config.simplex.is_none() || args.swarm.swarm_size.is_some() || args.swarm.iterations.is_some() || args.swarm.restarts.is_some() {
        cfg.swarm = ctx.swarm(&args.swarm);
    } else if let Some(seed) = ctx.seed {
        cfg.swarm.seed = seed;
    }
    scan(&cfg, args.out.clone().or_else(|| ctx.config.output.csv.clone()))
}

fn scan(cfg: &SimplexConfig, out: Option<PathBuf>) -> Result<()> {
    let mut sink = CsvSink::create(out.as_deref(), &SIMPLEX_HEADER)?;
    for (ti, pi, q) in simplex_rays(cfg.exponent) {
        for &n in &cfg.n_values {
            for &phi in &cfg.phis {
                let (hashing, code) = simplex_point(q, n, phi, &cfg.swarm, cfg.tolerance)?;
                let difference = hashing.zip(code).map(|(h, c)| c - h);
                sink.row([
                    ti.to_string(),
                    pi.to_string(),
                    num(q[0]),
                    num(q[1]),
                    num(q[2]),
                    n.to_string(),
                    num(phi),
                    opt_num(hashing),
                    opt_num(code),
                    opt_num(difference),
                    hashing.is_none().to_string(),
                ])?;
            }
        }
    }
    Ok(())
}
