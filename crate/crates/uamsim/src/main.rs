//! Thin command-line front end; all logic lives in the library.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use uamsim::pipeline::{self, RunOptions};

#[derive(Parser)]
#[command(
    name = "uamsim",
    about = "Regional air mobility + ground traffic co-simulation: mode equilibrium, departure scheduling, fleet sizing",
    version
)]
struct Cli {
    /// Run configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory root.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Overrides the config's random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Use the published flight-profile constants (12.79 mi climb
    /// distance) and the 180 s separation default.
    #[arg(long = "paper-compat", global = true)]
    paper_compat: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: equilibrium, tasks, fleet, capacity, reports.
    Run,
    /// Land-side vs air-side capacity comparison only.
    Capacity,
    /// Fleet sizing for an existing tasks.csv, no simulation.
    FleetOnly {
        /// Task table to solve.
        #[arg(long)]
        tasks: PathBuf,
    },
    /// Generate a synthetic scenario and a ready-to-run config.
    Synth {
        #[arg(long)]
        nodes: u32,
        #[arg(long)]
        airports: u32,
        #[arg(long)]
        trips: u32,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();

    let require_config = |config: &Option<PathBuf>| -> Result<PathBuf, String> {
        config
            .clone()
            .ok_or_else(|| "--config is required for this command".to_string())
    };

    match &cli.command {
        Command::Run => {
            let config_path = match require_config(&cli.config) {
                Ok(p) => p,
                Err(e) => return fail(&e),
            };
            match pipeline::cmd_run(&RunOptions {
                config_path,
                out_root: cli.out.clone(),
                seed: cli.seed,
                threads: cli.threads,
                paper_compat: cli.paper_compat,
            }) {
                Ok(outcome) => {
                    println!(
                        "wrote {} (air trips: {}, fleet: {}, converged: {})",
                        outcome.out_dir.display(),
                        outcome.n_uam,
                        outcome.fleet_size,
                        outcome.converged
                    );
                    if outcome.converged {
                        ExitCode::SUCCESS
                    } else {
                        eprintln!("warning: equilibrium hit the iteration cap; outputs written");
                        ExitCode::from(2)
                    }
                }
                Err(e) => fail(&e.to_string()),
            }
        }
        Command::Capacity => {
            let config_path = match require_config(&cli.config) {
                Ok(p) => p,
                Err(e) => return fail(&e),
            };
            match pipeline::cmd_capacity(&config_path, &cli.out, cli.seed, cli.paper_compat) {
                Ok(path) => {
                    println!("wrote {}", path.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e.to_string()),
            }
        }
        Command::FleetOnly { tasks } => {
            match pipeline::cmd_fleet_only(tasks, &cli.out, cli.config.as_deref()) {
                Ok(path) => {
                    println!("wrote {}", path.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e.to_string()),
            }
        }
        Command::Synth {
            nodes,
            airports,
            trips,
        } => {
            let seed = cli.seed.unwrap_or(7);
            match pipeline::cmd_synth(seed, *nodes, *airports, *trips, &cli.out) {
                Ok(path) => {
                    println!("wrote {}", path.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e.to_string()),
            }
        }
    }
}

fn fail(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(1)
}

