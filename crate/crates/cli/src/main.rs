//! `radial-sw`: batch front-end for the radial pressureless Euler solver.
// NaN must fail the config range checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod report;

use std::env;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{ConfigError, Scenario};

#[derive(Debug, Parser)]
#[command(
    name = "radial-sw",
    version,
    about = "Exact radial delta-shock solutions and their verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the wave plan as plan.json.
    Solve(Common),
    /// Sample the solution on the configured grid into samples.csv.
    Sample(Common),
    /// Run the verification suite and write verify.json.
    Verify(Common),
    /// Compare against the sticky-particle model and write oracle.csv.
    Oracle(Common),
    /// Check the non-entropic closed-form front and write example64.{csv,json}.
    Example64(Common),
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Output directory; defaults to `output.dir` from the config, then `.`.
    #[arg(long)]
    out: Option<PathBuf>,
}

const EXIT_CHECK: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn init_threads() -> Result<(), ConfigError> {
    let Ok(raw) = env::var("RADIAL_SW_THREADS") else {
        return Ok(());
    };
    let threads: usize =
        raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
            ConfigError::Invalid(format!("RADIAL_SW_THREADS must be a positive integer, got {raw:?}"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| ConfigError::Invalid(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (Command::Solve(common)
    | Command::Sample(common)
    | Command::Verify(common)
    | Command::Oracle(common)
    | Command::Example64(common)) = &cli.command;

    let setup = init_threads().and_then(|()| {
        let scenario = Scenario::load(&common.config)?;
        let out = common
            .out
            .clone()
            .or_else(|| scenario.output.dir.clone())
            .unwrap_or_else(|| PathBuf::from("."));
        fs::create_dir_all(&out)
            .map_err(|e| ConfigError::Invalid(format!("output directory {} is not writable: {e}", out.display())))?;
        Ok((scenario, out))
    });
    let (scenario, out) = match setup {
        Ok(v) => v,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    let result = match cli.command {
        Command::Solve(_) => commands::solve(&scenario, &out),
        Command::Sample(_) => commands::sample(&scenario, &out),
        Command::Verify(_) => commands::verify(&scenario, &out),
        Command::Oracle(_) => commands::oracle(&scenario, &out),
        Command::Example64(_) => commands::example64(&scenario, &out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK),
        Err(e) => match e.downcast_ref::<ConfigError>() {
            Some(c) => {
                eprintln!("config error: {c}");
                ExitCode::from(EXIT_CONFIG)
            }
            None => {
                eprintln!("error: {e:#}");
                ExitCode::from(EXIT_CHECK)
            }
        },
    }
}
