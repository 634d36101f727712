use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use shaperecon_cli::{load_config, run, ExperimentKind, RunOptions};
use std::path::PathBuf;
use std::process::ExitCode;

/// Forward solves, asymptotic checks and shape reconstruction for perturbed
/// disks.
#[derive(Parser)]
#[command(name = "shaperecon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one exterior Dirichlet problem and tabulate its boundary flux.
    Forward(Common),
    /// Measure the error of the first-order DtN expansion against amplitude.
    DtnOrder(Common),
    /// Compare oracle far fields with the first-order prediction.
    Farfield(Common),
    /// Recover the shape coefficients from simulated probe data.
    Reconstruct(Common),
    /// Reconstruct at every amplitude in `epsilons`.
    Sweep(Common),
}

#[derive(Args)]
struct Common {
    /// JSON experiment config.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output directory; defaults to the config's `output` field, then `results`.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Overrides the measurement noise seed.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    /// Suppress the summary on stdout.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    match try_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn try_main() -> Result<()> {
    let cli = Cli::parse();
    let (kind, common) = match cli.command {
        Command::Forward(c) => (ExperimentKind::Forward, c),
        Command::DtnOrder(c) => (ExperimentKind::DtnOrder, c),
        Command::Farfield(c) => (ExperimentKind::Farfield, c),
        Command::Reconstruct(c) => (ExperimentKind::Reconstruct, c),
        Command::Sweep(c) => (ExperimentKind::Sweep, c),
    };
    let config = load_config(&common.config)?;
    let out_dir = common
        .out
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from("results"));
    let mut opts = RunOptions::new(&out_dir);
    opts.seed = common.seed;
    let report = run(kind, &config, &opts).context("run aborted")?;
    if !common.quiet {
        println!("{kind}: {}", report.summary);
        for f in &report.files {
            println!("  wrote {}", out_dir.join(f).display());
        }
    }
    Ok(())
}
