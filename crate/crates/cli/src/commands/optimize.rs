use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::Args;
use permci::codes::{CodeFile, CodeMetadata};
use permci::coherent::Formula;
use permci::optim::{optimize_ci, Ansatz, SwarmConfig};
use permci::ChannelSpec;
use serde::Serialize;

use crate::output::{num, write_json};
use crate::{AnsatzArgs, ChannelArgs, Context, SwarmArgs};

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    ansatz: AnsatzArgs,
    #[command(flatten)]
    swarm: SwarmArgs,
    /// Write the optimization result as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the best code as a code file.
    #[arg(long)]
    save_code: Option<PathBuf>,
}

#[derive(Serialize)]
pub struct OptResult {
    pub channel: ChannelSpec,
    pub n: usize,
    pub ansatz: Ansatz,
    pub swarm: SwarmConfig,
    pub formula: Formula,
    pub total: f64,
    pub per_use: f64,
    pub params: Vec<f64>,
    pub evaluations: usize,
    pub code: CodeFile,
}

pub fn run(ctx: &Context, args: &OptimizeArgs) -> Result<()> {
    let channel = args.channel.resolve(ctx, None)?;
    let n = match args.n {
        Some(n) => n,
        None => match ctx.n_values(&[]).as_slice() {
            [n] => *n,
            [] => bail!("no copy count given; use --n"),
            _ => bail!("optimize takes a single n"),
        },
    };
    let kraus = channel.build()?;
    let ansatz = args.ansatz.resolve(ctx, kraus.d_in())?;
    let swarm = ctx.swarm(&args.swarm);
    let out = optimize_ci(&kraus, n, &ansatz, &swarm)?;
    if !out.ci.total.is_finite() {
        return Err(anyhow!("the swarm found no valid code"));
    }
    let metadata = CodeMetadata {
        source: Some(format!("permci optimize, seed {}", swarm.seed)),
        channel: Some(channel.clone()),
        ci_per_use: Some(out.ci.per_use()),
    };
    let code = CodeFile::from_ensemble(&out.code, Some(metadata));
    let result = OptResult {
        channel,
        n,
        ansatz,
        swarm,
        formula: out.ci.formula,
        total: out.ci.total,
        per_use: out.ci.per_use(),
        params: out.params,
        evaluations: out.evaluations,
        code,
    };

    println!("channel      {}", result.channel);
    println!("n            {n}");
    println!("formula      {}", result.formula);
    println!("total        {}", num(result.total));
    println!("per_use      {}", num(result.per_use));
    println!("evaluations  {}", result.evaluations);
    println!("weights      {}", result.code.weights.iter().map(|&w| num(w)).collect::<Vec<_>>().join(", "));

    if let Some(path) = &args.out {
        write_json(path, &result)?;
    }
    if let Some(path) = &args.save_code.clone().or_else(|| ctx.config.output.code.clone()) {
        write_json(path, &result.code)?;
    }
    Ok(())
}
