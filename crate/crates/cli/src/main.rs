//! `tripole`: pole orders of triple product L-functions from a JSON config.

mod commands;
mod config;
mod error;
mod setup;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context as _;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::commands::{Context, Outcome};
use crate::config::{RunConfig, CONFIG_VERSION};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "tripole", version, about = "Pole orders of L(s, pi1 x pi2 x AI(chi)) via matching pairs")]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for sampled sweeps; overrides `task.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also run the floating-point oracle (oracle-compare).
    #[arg(long, global = true)]
    float_oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Order of the pole at s = 1 with the matching matrix.
    PoleOrder,
    /// The p^2 Rankin-Selberg factors and their pole orders.
    Factorize,
    /// Exhaustive or sampled sweep over abelian models.
    Sweep,
    /// Compare the calculus with the finite-group oracle.
    OracleCompare,
    /// Numeric estimate over Q(i) from character sums.
    HeckeEstimate,
    /// Search for a configuration reaching a given pole order.
    Witness,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::PoleOrder => "pole-order",
            Command::Factorize => "factorize",
            Command::Sweep => "sweep",
            Command::OracleCompare => "oracle-compare",
            Command::HeckeEstimate => "hecke-estimate",
            Command::Witness => "witness",
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let path = cli.config.as_ref().ok_or_else(|| CliError::Config("missing --config PATH".into()))?;
    let config: RunConfig = config::load(path)?;
    let exec = tripole_core::par::configure_workers(cli.workers).map_err(CliError::Config)?;
    let ctx = Context { exec, seed: cli.seed.or(config.task.seed), float_oracle: cli.float_oracle };
    let start = Instant::now();
    let dispatch = || match cli.command {
        Command::PoleOrder => commands::pole_order(&config),
        Command::Factorize => commands::factorize_cmd(&config),
        Command::Sweep => commands::sweep_cmd(&config, &ctx),
        Command::OracleCompare => commands::oracle_compare_cmd(&config, &ctx),
        Command::HeckeEstimate => commands::hecke_estimate(&config, &ctx),
        Command::Witness => commands::witness_cmd(&config, &ctx),
    };
    // A broken structural invariant inside the calculus panics.
    let Outcome { result, text, exit } = match std::panic::catch_unwind(std::panic::AssertUnwindSafe(dispatch)) {
        Ok(outcome) => outcome?,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal assertion failed".into());
            return Err(CliError::Invariant(msg));
        }
    };
    let report = json!({
        "tool": "tripole",
        "version": env!("CARGO_PKG_VERSION"),
        "config_version": CONFIG_VERSION,
        "command": cli.command.name(),
        "seed": ctx.seed,
        "config": config,
        "result": result,
        "exit_code": exit,
        "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
    });
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(out) = &cli.output {
        std::fs::write(out, format!("{rendered}\n")).with_context(|| format!("writing {}", out.display()))?;
    }
    let mut stdout = std::io::stdout().lock();
    match cli.format {
        Format::Json => writeln!(stdout, "{rendered}"),
        Format::Text => write!(stdout, "{text}"),
    }
    .context("writing to stdout")?;
    Ok(exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    std::panic::set_hook(Box::new(|info| eprintln!("tripole: {info}")));
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("tripole: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
