use std::path::PathBuf;

use anyhow::{anyhow, Result};
use clap::{Args, Subcommand};
use permci::codes::{bundled, find_bundled, network_code};
use serde::Serialize;

use crate::output::{num, write_json};
use crate::Context;

#[derive(Args, Debug)]
pub struct CodesArgs {
    #[command(subcommand)]
    action: CodesAction,
}

#[derive(Subcommand, Debug)]
enum CodesAction {
    /// One line per bundled code.
    List,
    /// Print a bundled code as a code file.
    Show {
        id: String,
        /// Write it to this path instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct StateDump {
    id: &'static str,
    channel: permci::ChannelSpec,
    n: usize,
    d_ref: usize,
    layout: &'static str,
    re: Vec<f64>,
    im: Vec<f64>,
    ci_per_use: f64,
}

pub fn run(_ctx: &Context, args: &CodesArgs) -> Result<()> {
    match &args.action {
        CodesAction::List => {
            println!("{:<20} {:<36} {:>3} {:>3} {:>24}", "id", "channel", "n", "k", "ci_per_use");
            for b in bundled() {
                println!("{:<20} {:<36} {:>3} {:>3} {:>24}", b.id, b.channel.to_string(), b.code.n, b.code.k, num(b.ci_per_use));
            }
            let s = network_code();
            println!("{:<20} {:<36} {:>3} {:>3} {:>24}", s.id, s.channel.to_string(), s.n, "-", num(s.ci_per_use));
        }
        CodesAction::Show { id, out } => {
            let text = if id == network_code().id {
                let s = network_code();
                let dump = StateDump {
                    id: s.id,
                    channel: s.channel.clone(),
                    n: s.n,
                    d_ref: s.d_ref,
                    layout: "reference_first",
                    re: s.psi.iter().map(|z| z.re).collect(),
                    im: s.psi.iter().map(|z| z.im).collect(),
                    ci_per_use: s.ci_per_use,
                };
                serde_json::to_string_pretty(&dump)?
            } else {
                let b = find_bundled(id).ok_or_else(|| anyhow!("no bundled code `{id}`"))?;
                if let Some(path) = out {
                    return write_json(path, &b.code);
                }
                serde_json::to_string_pretty(&b.code)?
            };
            match out {
                Some(path) => std::fs::write(path, text + "\n")?,
                None => println!("{text}"),
            }
        }
    }
    Ok(())
}
