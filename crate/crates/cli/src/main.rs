//! `cognet`: command-line runner for the cognitive network simulator.
//!
//! Every subcommand writes CSV files and a JSON run manifest to the output
//! directory. Exit codes: 0 success, 2 configuration or usage error,
//! 3 numerical failure or infeasible design, 4 placement failure.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cognet",
    version,
    about = "Cognitive network scaling, interference bounds and exclusive-region design"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// TOML configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Override one configuration key, e.g. `--set path_loss_alpha=3`.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub overrides: Vec<String>,
    /// Master seed for every random stream.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Output directory.
    #[arg(long, env = "COGNET_OUT", default_value = "cognet-out", global = true)]
    pub out: PathBuf,
    /// Also write raw Monte Carlo draws.
    #[arg(long, global = true)]
    pub dump_raw: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check a configuration against the admissibility rules.
    Validate,
    /// Sample one network and write it as CSV.
    Place {
        /// Fixed number of cognitive pairs; Poisson when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// Also fill every exclusive region with transmitters. For checking
        /// worst-case bounds only; the output breaks the placement rules.
        #[arg(long)]
        fill_pers: bool,
    },
    /// Interference estimates.
    #[command(subcommand)]
    Interference(InterferenceCmd),
    /// Closed-form bounds on the interference at the primary receiver.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Exclusive-region radius solvers and trade-off curves.
    #[command(subcommand, name = "per-radius")]
    PerRadius(PerCmd),
    /// Per-user and sum rate against the number of users.
    Scaling {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Independent placements per n.
        #[arg(long, default_value_t = 20)]
        seeds: usize,
    },
    /// Deviation of the per-user sum rate from its mean.
    Concentration {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Independent placements per n.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Deviation threshold; 0.1 times the mean rate at the smallest n by default.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Re-run the command recorded in a manifest.
    Replay { manifest: PathBuf },
}

#[derive(Debug, Clone, Subcommand)]
pub enum InterferenceCmd {
    /// Monte Carlo mean interference at the primary receiver on the PER edge.
    Mc {
        #[arg(long, default_value_t = 2000)]
        trials: usize,
    },
    /// Worst-case primary interference on the hexagonal lattice.
    Lattice {
        #[arg(long, default_value_t = cognet::interference::DEFAULT_TRUNCATION)]
        truncation: usize,
        #[arg(long, default_value_t = cognet::interference::DEFAULT_THETA_GRID)]
        theta_grid: usize,
        /// Leave out the primary transmitter at the origin.
        #[arg(long)]
        exclude_origin: bool,
    },
    /// Average cognitive interference at a central receiver.
    Avg {
        #[arg(long, default_value_t = 2000)]
        trials: usize,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum BoundsCmd {
    /// Bounds over a grid of exclusive-region radii and guard bands.
    Grid {
        #[arg(long, value_delimiter = ',', default_values_t = default_r0_grid())]
        r0: Vec<f64>,
        /// Guard bands; the configured one when omitted.
        #[arg(long, value_delimiter = ',')]
        eps_p: Vec<f64>,
        /// Network radius, a number or `inf`.
        #[arg(long, default_value = "inf")]
        radius: cognet::Radius,
        /// Evaluate the quadrature oracle where no closed form exists.
        #[arg(long)]
        oracle: bool,
    },
    /// Path loss 3.
    Figure7 {
        #[arg(long, value_delimiter = ',', default_values_t = default_r0_grid())]
        r0: Vec<f64>,
    },
    /// Path loss 4.
    Figure8 {
        #[arg(long, value_delimiter = ',', default_values_t = default_r0_grid())]
        r0: Vec<f64>,
    },
    /// Path loss 5.
    Figure9 {
        #[arg(long, value_delimiter = ',', default_values_t = default_r0_grid())]
        r0: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveMethod {
    Auto,
    Markov,
    Implicit,
    /// Markov and implicit curves in separate files.
    Both,
}

#[derive(Debug, Clone, Subcommand)]
pub enum PerCmd {
    /// Interference-free, Markov and implicit radii for the configuration.
    Solve {
        /// Placements for an outage check at the Markov radius; skipped when 0.
        #[arg(long, default_value_t = 0)]
        outage_trials: usize,
    },
    /// Radius against guard band, one series per outage rate.
    #[command(name = "curve-fig10")]
    CurveFig10 {
        #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 2.0, 3.0, 4.0])]
        c0: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = (1..=20).map(|i| 0.5 * i as f64).collect::<Vec<_>>())]
        eps_p: Vec<f64>,
        #[arg(long, value_enum, default_value_t = CurveMethod::Both)]
        method: CurveMethod,
    },
    /// Required primary power against radius, one series per guard band.
    #[command(name = "curve-fig11")]
    CurveFig11 {
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 1.0, 2.0, 4.0])]
        eps_p: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = (2..=12).map(|i| 0.25 * i as f64).collect::<Vec<_>>())]
        r0: Vec<f64>,
        #[arg(long, value_enum, default_value_t = CurveMethod::Both)]
        method: CurveMethod,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Constant,
    Scaled,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_values_t = cognet::throughput::DEFAULT_N_GRID.to_vec())]
    pub n_grid: Vec<usize>,
    /// Power mode; the configured one when omitted.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Power exponent for the scaled mode.
    #[arg(long)]
    pub gamma: Option<f64>,
}

fn default_r0_grid() -> Vec<f64> {
    (1..=20).map(f64::from).collect()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use cognet::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::Config(_) | Error::Domain(_) | Error::Unsupported(_)) => 2,
        Some(Error::Numeric { .. } | Error::Infeasible(_)) => 3,
        Some(Error::Placement(_)) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
