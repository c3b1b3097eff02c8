//! `kgscat`: batch front end for the lattice Klein-Gordon scattering toolkit.

mod commands;
mod config;
mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Outcome;
use crate::config::RunConfig;
pub use crate::error::CliError;

#[derive(Parser)]
#[command(name = "kgscat", version, about = "Forward and inverse lattice Klein-Gordon scattering")]
struct Cli {
    /// TOML run configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides output.dir).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Grid size (overrides grid.n).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Horizon of the wave operators (overrides pipeline.T_max).
    #[arg(long = "Tmax", global = true)]
    t_max: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scattering context, z(k), F(t, f) trace and consistency diagnostics.
    Forward,
    /// Recover rho from z given j.
    InvertRho {
        /// z table from `forward` (default: <out>/z.csv).
        #[arg(long)]
        z: Option<PathBuf>,
    },
    /// Recover j from z given rho and delta.
    InvertJ {
        #[arg(long)]
        z: Option<PathBuf>,
    },
    /// Operator-level diagnostics: Hilbert-Schmidt norms, fractional powers, wave operators, S.
    Diagnose,
    /// Fock-space identity suite.
    FockCheck,
}

fn threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("KGSCAT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("KGSCAT_THREADS = {v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Config(e.to_string()))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    threads()?;
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(n) = cli.n {
        cfg.grid.n = n;
    }
    if let Some(t) = cli.t_max {
        cfg.pipeline.t_max = t;
    }
    if let Some(o) = cli.out {
        cfg.output.dir = o;
    }
    cfg.validate()?;
    let out = cfg.output.dir.clone();
    std::fs::create_dir_all(&out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    match cli.command {
        Command::Forward => commands::forward(&cfg, &out),
        Command::InvertRho { z } => commands::invert_rho(&cfg, &commands::default_z_path(&out, z), &out),
        Command::InvertJ { z } => commands::invert_j(&cfg, &commands::default_z_path(&out, z), &out),
        Command::Diagnose => commands::diagnose(&cfg, &out),
        Command::FockCheck => commands::fock_check(&cfg, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(o) if o.failures.is_empty() => ExitCode::SUCCESS,
        Ok(o) => {
            for f in &o.failures {
                eprintln!("failed: {f}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("kgscat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
