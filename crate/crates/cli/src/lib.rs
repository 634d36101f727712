//! Experiment runner behind the `shaperecon` binary.
//!
//! An experiment is described by a JSON [`ExperimentConfig`]. [`run`]
//! validates it, echoes the effective config to `config.json`, writes one or
//! more CSV tables and finishes with `manifest.json`.

pub mod config;
mod experiments;
pub mod output;

pub use config::{validate, ExperimentConfig, ExperimentKind};
pub use experiments::loglog_slope;

use anyhow::{bail, Context, Result};
use experiments::RunContext;
use output::{sha256_hex, write_atomic, Manifest};
use shaperecon::Execution;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Overrides `measurement.seed`.
    pub seed: Option<u64>,
    pub execution: Execution,
}

impl RunOptions {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        RunOptions {
            out_dir: out_dir.into(),
            seed: None,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub kind: ExperimentKind,
    /// Paths relative to the output directory, manifest last.
    pub files: Vec<PathBuf>,
    pub summary: String,
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ExperimentConfig::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

/// The config actually executed: seed override applied and experiment kind
/// pinned.
pub fn effective_config(config: &ExperimentConfig, kind: ExperimentKind, seed: Option<u64>) -> ExperimentConfig {
    let mut eff = config.clone();
    eff.experiment = Some(kind);
    if let Some(seed) = seed {
        eff.measurement.seed = seed;
    }
    eff
}

pub fn run(kind: ExperimentKind, config: &ExperimentConfig, opts: &RunOptions) -> Result<RunReport> {
    let diagnostics = validate(config, kind);
    if !diagnostics.is_empty() {
        bail!("invalid config:\n  {}", diagnostics.join("\n  "));
    }
    let config = effective_config(config, kind, opts.seed);
    let out_dir = opts.out_dir.as_path();
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;

    let echo = config.to_json() + "\n";
    write_atomic(&out_dir.join("config.json"), echo.as_bytes())?;

    let ctx = RunContext {
        config: &config,
        solver: config.solver_params().with_execution(opts.execution),
        out_dir,
        execution: opts.execution,
    };
    let produced = match kind {
        ExperimentKind::Forward => experiments::forward(&ctx),
        ExperimentKind::DtnOrder => experiments::dtn_order(&ctx),
        ExperimentKind::Farfield => experiments::farfield(&ctx),
        ExperimentKind::Reconstruct => experiments::reconstruct(&ctx),
        ExperimentKind::Sweep => experiments::sweep(&ctx),
    }
    .with_context(|| format!("{kind} experiment failed"))?;

    let mut files = vec![PathBuf::from("config.json")];
    files.extend(produced.files);
    Manifest {
        experiment: kind.to_string(),
        config_sha256: sha256_hex(echo.as_bytes()),
        seed: config.measurement.seed,
        library_version: shaperecon::VERSION.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        outputs: files.clone(),
    }
    .write(&out_dir.join("manifest.json"))?;
    files.push(PathBuf::from("manifest.json"));
    Ok(RunReport {
        kind,
        files,
        summary: produced.summary,
    })
}
