//! Parameter sweeps and threshold searches.
//!
//! Sweep CSV columns, in order:
//!
//! | column | meaning |
//! |---|---|
//! | `param` | name of the varied channel parameter |
//! | `value` | its value |
//! | `n` | channel uses |
//! | `formula` | evaluator that produced the row |
//! | `ci_total` | coherent information of all `n` uses, bits |
//! | `ci_per_use` | `ci_total / n` |
//! | `repcode_per_use` | best weighted repetition code rate, empty unless requested |
//! | `repcode_copies` | its copy count |
//! | `repcode_x` | its weight |

use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::Args;
use permci::analytic::{best_repcode_rate, dampdeph_repcode_ci, pauli_repcode_ci, RepcodeOptimum};
use permci::coherent::{coherent_information, Formula};
use permci::optim::{optimize_ci, threshold, CodeSource};
use permci::{ChannelKind, ChannelSpec, CodeEnsemble};

use crate::config::{linspace, SweepGrid};
use crate::output::{num, CsvSink};
use crate::{AnsatzArgs, ChannelArgs, CodeArgs, Context, LoadedCode, SwarmArgs};

pub const SWEEP_HEADER: [&str; 9] =
    ["param", "value", "n", "formula", "ci_total", "ci_per_use", "repcode_per_use", "repcode_copies", "repcode_x"];

pub const THRESHOLD_HEADER: [&str; 5] = ["param", "n", "threshold", "upper", "evaluations"];

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    code: CodeArgs,
    /// Channel parameter to vary, by name.
    #[arg(long)]
    vary: Option<String>,
    /// Explicit comma-separated grid.
    #[arg(long, value_delimiter = ',')]
    values: Vec<f64>,
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Comma-separated channel uses.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Optimize a fresh code at every grid point instead of using --code.
    #[arg(long)]
    reoptimize: bool,
    #[command(flatten)]
    ansatz: AnsatzArgs,
    #[command(flatten)]
    swarm: SwarmArgs,
    #[arg(long)]
    formula: Option<Formula>,
    /// Also report the best weighted repetition code with up to this many
    /// copies (Pauli families and damping-dephasing only).
    #[arg(long)]
    baseline_copies: Option<usize>,
    /// CSV output; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    code: CodeArgs,
    /// Noise parameter to bisect over, by name.
    #[arg(long)]
    vary: String,
    /// `low,high`: positive coherent information at `low`, none at `high`.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    bracket: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Re-optimize the code at every noise level instead of using --code.
    #[arg(long)]
    reoptimize: bool,
    #[command(flatten)]
    ansatz: AnsatzArgs,
    #[command(flatten)]
    swarm: SwarmArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Weighted repetition code baseline for the families with a closed form.
pub fn repcode_baseline(spec: &ChannelSpec, max_copies: usize) -> Result<Option<RepcodeOptimum>> {
    if let Some(p) = spec.pauli_distribution() {
        return Ok(Some(best_repcode_rate(|n, x| pauli_repcode_ci(p, n, x), max_copies)?));
    }
    if spec.name == ChannelKind::DampingDephasing {
        let (p, g) = (spec.params[0], spec.params[1]);
        return Ok(Some(best_repcode_rate(|n, x| dampdeph_repcode_ci(p, g, n, x), max_copies)?));
    }
    Ok(None)
}

fn fixed_code(ctx: &Context, code: &CodeArgs) -> Result<(CodeEnsemble, Option<ChannelSpec>)> {
    match code.load(ctx)? {
        LoadedCode::Ensemble(file) => Ok((code.ensemble(&file)?, file.channel().cloned())),
        LoadedCode::State(s) => bail!("{} is a state vector and cannot be re-evaluated at other n", s.id),
    }
}

fn grid(ctx: &Context, args: &SweepArgs) -> Result<(String, Vec<f64>)> {
    let from_config = ctx.config.sweep.clone();
    let vary = args
        .vary
        .clone()
        .or_else(|| from_config.as_ref().map(|g| g.vary.clone()))
        .ok_or_else(|| anyhow!("no parameter to vary; use --vary"))?;
    let points = if !args.values.is_empty() {
        args.values.clone()
    } else if let (Some(a), Some(b), Some(s)) = (args.from, args.to, args.steps) {
        linspace(a, b, s)
    } else {
        from_config
            .unwrap_or(SweepGrid { vary: vary.clone(), values: None, from: None, to: None, steps: None })
            .points()?
    };
    Ok((vary, points))
}

pub fn run(ctx: &Context, args: &SweepArgs) -> Result<()> {
    let (vary, points) = grid(ctx, args)?;
    let code = if args.reoptimize { None } else { Some(fixed_code(ctx, &args.code)?) };
    let fallback = code.as_ref().and_then(|(_, spec)| spec.clone());
    let base = args.channel.resolve(ctx, fallback.as_ref())?;
    let mut n_values = ctx.n_values(&args.n);
    if n_values.is_empty() {
        match &code {
            Some((c, _)) => n_values.push(c.n()),
            None => bail!("no copy count given; use --n"),
        }
    }
    let formula = ctx.formula(args.formula);
    let swarm = ctx.swarm(&args.swarm);
    let out = args.out.clone().or_else(|| ctx.config.output.csv.clone());
    let mut sink = CsvSink::create(out.as_deref(), &SWEEP_HEADER)?;

    for &value in &points {
        let spec = base.with_param(&vary, value)?;
        let channel = spec.build()?;
        let baseline = match args.baseline_copies {
            Some(m) => repcode_baseline(&spec, m)?,
            None => None,
        };
        for &n in &n_values {
            let b = match &code {
                Some((c, _)) => coherent_information(&channel, &c.with_n(n)?, formula)?,
                None => {
                    let ansatz = args.ansatz.resolve(ctx, channel.d_in())?;
                    optimize_ci(&channel, n, &ansatz, &swarm)?.ci
                }
            };
            sink.row([
                vary.clone(),
                num(value),
                n.to_string(),
                b.formula.to_string(),
                num(b.total),
                num(b.per_use()),
                baseline.map(|r| num(r.rate)).unwrap_or_default(),
                baseline.map(|r| r.copies.to_string()).unwrap_or_default(),
                baseline.map(|r| num(r.x)).unwrap_or_default(),
            ])?;
        }
    }
    Ok(())
}

pub fn run_threshold(ctx: &Context, args: &ThresholdArgs) -> Result<()> {
    let (source, fallback) = if args.reoptimize {
        (None, None)
    } else {
        let (c, spec) = fixed_code(ctx, &args.code)?;
        (Some(c), spec)
    };
    let base = args.channel.resolve(ctx, fallback.as_ref())?;
    let mut n_values = ctx.n_values(&args.n);
    if n_values.is_empty() {
        match &source {
            Some(c) => n_values.push(c.n()),
            None => bail!("no copy count given; use --n"),
        }
    }
    let source = match source {
        Some(c) => CodeSource::Fixed(c),
        None => {
            let d = base.build()?.d_in();
            CodeSource::Optimize { ansatz: args.ansatz.resolve(ctx, d)?, config: ctx.swarm(&args.swarm) }
        }
    };
    let family = |x: f64| -> permci::Result<permci::KrausChannel> {
        base.with_param(&args.vary, x)?.build()
    };
    let [lo, hi] = args.bracket[..] else {
        bail!("--bracket takes two values, low,high");
    };
    base.with_param(&args.vary, lo)?;
    let out = args.out.clone().or_else(|| ctx.config.output.csv.clone());
    let mut sink = CsvSink::create(out.as_deref(), &THRESHOLD_HEADER)?;
    for &n in &n_values {
        let r = threshold(&family, &source, n, (lo, hi), args.tol)?;
        sink.row([args.vary.clone(), n.to_string(), num(r.threshold), num(r.upper), r.trace.len().to_string()])?;
    }
    Ok(())
}
