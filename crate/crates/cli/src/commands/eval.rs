use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use permci::coherent::{ci_brute_state, coherent_information, CIBreakdown, Formula};
use permci::ChannelSpec;
use serde::Serialize;

use crate::output::{append_csv_row, num, write_json};
use crate::{ChannelArgs, CodeArgs, Context, LoadedCode};

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    code: CodeArgs,
    /// Channel uses; defaults to the code's own `n`.
    #[arg(long)]
    n: Option<usize>,
    /// auto, mixed, pure, purified or brute.
    #[arg(long)]
    formula: Option<Formula>,
    /// Write the full breakdown as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append a summary row to this CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Serialize)]
struct EvalReport {
    channel: ChannelSpec,
    code: String,
    n: usize,
    formula: Formula,
    total: f64,
    per_use: f64,
    error_budget: f64,
    terms: Vec<permci::coherent::LambdaTerm>,
}

const CSV_HEADER: [&str; 7] = ["code", "channel", "params", "n", "formula", "ci_total", "ci_per_use"];

pub fn run(ctx: &Context, args: &EvalArgs) -> Result<()> {
    let source = args.code.source(ctx).unwrap_or_default();
    let breakdown = match args.code.load(ctx)? {
        LoadedCode::Ensemble(file) => {
            let channel = args.channel.resolve(ctx, file.channel())?;
            let n = args.n.or_else(|| ctx.config.n.as_ref().and_then(|v| v.to_vec().first().copied())).unwrap_or(file.n);
            let code = args.code.ensemble(&file)?.with_n(n)?;
            (channel.clone(), coherent_information(&channel.build()?, &code, ctx.formula(args.formula))?)
        }
        LoadedCode::State(state) => {
            let formula = ctx.formula(args.formula);
            if !matches!(formula, Formula::Auto | Formula::Brute) {
                bail!("{} is a state vector with a reference system; only the brute-force evaluator applies", state.id);
            }
            if args.n.is_some_and(|n| n != state.n) {
                bail!("{} is defined for n = {} only", state.id, state.n);
            }
            let channel = args.channel.resolve(ctx, Some(&state.channel))?;
            let total = ci_brute_state(&channel.build()?, &state.psi, state.n, state.d_ref, state.layout)?;
            let b = CIBreakdown { formula: Formula::Brute, n: state.n, total, error_budget: 0.0, terms: Vec::new() };
            (channel, b)
        }
    };
    let (channel, b) = breakdown;

    println!("channel  {channel}");
    println!("code     {source}");
    println!("n        {}", b.n);
    println!("formula  {}", b.formula);
    println!("total    {}", num(b.total));
    println!("per_use  {}", num(b.per_use()));
    if !b.terms.is_empty() {
        println!("{:<24} {:>24} {:>24} {:>24}", "lambda", "weight", "env_weight", "contribution");
        for t in &b.terms {
            let env = t.env_weight.map(num).unwrap_or_else(|| "-".into());
            println!("{:<24} {:>24} {:>24} {:>24}", t.lambda.to_string(), num(t.weight), env, num(t.contribution));
        }
    }

    if let Some(path) = &args.out {
        let report = EvalReport {
            channel: channel.clone(),
            code: source.clone(),
            n: b.n,
            formula: b.formula,
            total: b.total,
            per_use: b.per_use(),
            error_budget: b.error_budget,
            terms: b.terms.clone(),
        };
        write_json(path, &report)?;
    }
    if let Some(path) = &args.csv {
        let params: Vec<String> = channel.params.iter().map(|&p| num(p)).collect();
        let row = [
            source,
            channel.name.to_string(),
            params.join(";"),
            b.n.to_string(),
            b.formula.to_string(),
            num(b.total),
            num(b.per_use()),
        ];
        append_csv_row(path, &CSV_HEADER, &row)?;
    }
    Ok(())
}
