mod commands;
mod config;
mod output;

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use permci::codes::{find_bundled, network_code, CodeFile};
use permci::coherent::Formula;
use permci::optim::{Ansatz, Scheme, SwarmConfig};
use permci::{ChannelKind, ChannelSpec, CodeEnsemble};

use config::ExperimentConfig;

#[derive(Parser)]
#[command(name = "permci", version, about = "Coherent information of permutation-invariant codes")]
struct Cli {
    /// TOML experiment configuration; flags take precedence over it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, env = "PERMCI_SEED")]
    seed: Option<u64>,
    /// Worker threads; numeric results do not depend on it.
    #[arg(long, global = true, env = "PERMCI_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coherent information of a code through n channel uses.
    Eval(commands::eval::EvalArgs),
    /// Search for a code with large coherent information.
    Optimize(commands::optimize::OptimizeArgs),
    /// Coherent information along a grid of one channel parameter.
    Sweep(commands::sweep::SweepArgs),
    /// Noise threshold of a code along one channel parameter.
    Threshold(commands::sweep::ThresholdArgs),
    /// Code thresholds against the hashing bound across the Pauli simplex.
    Simplex(commands::simplex::SimplexArgs),
    /// Cross-check the evaluators against brute force and the dimension identities.
    OracleCheck(commands::oracle::OracleArgs),
    /// List or print the bundled codes.
    Codes(commands::codes::CodesArgs),
}

/// Settings shared by every subcommand after merging flags, environment and
/// configuration file.
pub struct Context {
    pub config: ExperimentConfig,
    pub seed: Option<u64>,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self> {
        let config = match &cli.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        let threads = cli.threads.or(config.threads);
        if let Some(t) = threads {
            rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global().context("configuring the thread pool")?;
        }
        Ok(Self { seed: cli.seed.or(config.seed), config })
    }

    pub fn n_values(&self, flag: &[usize]) -> Vec<usize> {
        if !flag.is_empty() {
            return flag.to_vec();
        }
        self.config.n.as_ref().map(|n| n.to_vec()).unwrap_or_default()
    }

    pub fn formula(&self, flag: Option<Formula>) -> Formula {
        flag.or(self.config.formula).unwrap_or_default()
    }

    pub fn swarm(&self, flags: &SwarmArgs) -> SwarmConfig {
        let mut cfg = self.config.swarm.clone().unwrap_or_default();
        if let Some(v) = flags.swarm_size {
            cfg.swarm_size = v;
        }
        if let Some(v) = flags.iterations {
            cfg.max_iterations = v;
        }
        if let Some(v) = flags.restarts {
            cfg.restarts = v;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        cfg
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct ChannelArgs {
    /// Channel family, e.g. two_pauli, bb84, dephrasure, gadc, damping_dephasing.
    #[arg(long)]
    channel: Option<ChannelKind>,
    /// Comma-separated channel parameters in the family's order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<f64>,
}

impl ChannelArgs {
    /// Flags first, then the configuration file, then the code's metadata.
    pub fn resolve(&self, ctx: &Context, fallback: Option<&ChannelSpec>) -> Result<ChannelSpec> {
        let spec = match self.channel {
            Some(kind) => ChannelSpec::new(kind, &self.params),
            None => {
                let mut spec = ctx
                    .config
                    .channel
                    .clone()
                    .or_else(|| fallback.cloned())
                    .ok_or_else(|| anyhow!("no channel given; use --channel and --params"))?;
                if !self.params.is_empty() {
                    spec.params = self.params.clone();
                }
                spec
            }
        };
        spec.build()?;
        Ok(spec)
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct CodeArgs {
    /// Code file (JSON) or `bundled:<id>`.
    #[arg(long)]
    code: Option<String>,
    /// Set two-component weights within 1e-3 of 1/2 to exactly 1/2.
    #[arg(long)]
    snap_half: bool,
}

pub const SNAP_TOLERANCE: f64 = 1e-3;

pub enum LoadedCode {
    Ensemble(CodeFile),
    /// A state vector on `reference ⊗ inputs` that only the brute-force
    /// evaluator handles.
    State(permci::codes::StateBenchmark),
}

impl CodeArgs {
    pub fn source(&self, ctx: &Context) -> Option<String> {
        self.code.clone().or_else(|| ctx.config.code.clone())
    }

    pub fn load(&self, ctx: &Context) -> Result<LoadedCode> {
        let source = self.source(ctx).ok_or_else(|| anyhow!("no code given; use --code <file> or --code bundled:<id>"))?;
        load_code(&source)
    }

    pub fn ensemble(&self, file: &CodeFile) -> Result<CodeEnsemble> {
        let code = file.to_ensemble()?;
        Ok(if self.snap_half { code.snap_half(SNAP_TOLERANCE) } else { code })
    }
}

pub fn load_code(source: &str) -> Result<LoadedCode> {
    if let Some(id) = source.strip_prefix("bundled:") {
        if id == network_code().id {
            return Ok(LoadedCode::State(network_code()));
        }
        let b = find_bundled(id).ok_or_else(|| anyhow!("no bundled code `{id}`; see `permci codes list`"))?;
        return Ok(LoadedCode::Ensemble(b.code));
    }
    let text = std::fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    let file: CodeFile = serde_json::from_str(&text).with_context(|| format!("parsing {source}"))?;
    file.validate().with_context(|| format!("validating {source}"))?;
    Ok(LoadedCode::Ensemble(file))
}

#[derive(Args, Clone, Debug, Default)]
pub struct SwarmArgs {
    #[arg(long)]
    swarm_size: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
}

#[derive(Args, Clone, Debug, Default)]
pub struct AnsatzArgs {
    /// `free` (k free states) or `pair` (two non-orthogonal states).
    #[arg(long)]
    ansatz: Option<String>,
    /// Number of states for the free ansatz.
    #[arg(long)]
    k: Option<usize>,
    /// State parametrization: bloch, pure_bloch, mtm, pure_vector, measurement.
    /// Defaults to pure states for k >= 2 and mixed ones for k = 1.
    #[arg(long)]
    scheme: Option<String>,
    /// Fixed overlap angle for the pair ansatz.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
}

fn parse_scheme(s: &str) -> Result<Scheme> {
    Ok(match s.replace('-', "_").as_str() {
        "bloch" => Scheme::Bloch,
        "pure_bloch" => Scheme::PureBloch,
        "mtm" => Scheme::Mtm,
        "pure_vector" => Scheme::PureVector,
        "measurement" => Scheme::Measurement,
        other => bail!("unknown scheme `{other}`"),
    })
}

impl AnsatzArgs {
    pub fn resolve(&self, ctx: &Context, d: usize) -> Result<Ansatz> {
        let flags_given = self.ansatz.is_some() || self.k.is_some() || self.scheme.is_some() || self.phi.is_some();
        if !flags_given {
            if let Some(a) = &ctx.config.ansatz {
                return Ok(a.clone());
            }
        }
        let k = self.k.unwrap_or(2);
        // one pure product state never carries coherent information
        let default_scheme = match (k, d) {
            (1, 2) => Scheme::Bloch,
            (1, _) => Scheme::Mtm,
            (_, 2) => Scheme::PureBloch,
            _ => Scheme::PureVector,
        };
        match self.ansatz.as_deref().unwrap_or("free") {
            "free" => Ok(Ansatz::FreeKState {
                k,
                scheme: self.scheme.as_deref().map(parse_scheme).transpose()?.unwrap_or(default_scheme),
            }),
            "pair" => Ok(Ansatz::NonorthogonalPair { phi: self.phi }),
            other => bail!("unknown ansatz `{other}`; expected free or pair"),
        }
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = Context::new(&cli).and_then(|ctx| match &cli.command {
        Command::Eval(a) => commands::eval::run(&ctx, a),
        Command::Optimize(a) => commands::optimize::run(&ctx, a),
        Command::Sweep(a) => commands::sweep::run(&ctx, a),
        Command::Threshold(a) => commands::sweep::run_threshold(&ctx, a),
        Command::Simplex(a) => commands::simplex::run(&ctx, a),
        Command::OracleCheck(a) => commands::oracle::run(&ctx, a),
        Command::Codes(a) => commands::codes::run(&ctx, a),
    });
    if let Err(e) = result {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
