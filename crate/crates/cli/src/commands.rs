use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;
use cognet::bounds::{self, Figure};
use cognet::geometry::{place_network_with, PlacementMode};
use cognet::interference::{self, InterferenceEstimate};
use cognet::per_design::{self, Method, Sweep};
use cognet::throughput;
use cognet::{Error, NetworkConfig, NodeCount, PowerMode, Radius, Table};

use crate::manifest::RunManifest;
use crate::{
    BoundsCmd, Cli, Command, CurveMethod, GlobalArgs, InterferenceCmd, ModeArg, PerCmd, SweepArgs,
};

pub fn run(cli: Cli) -> Result<()> {
    if let Command::Replay { manifest } = &cli.command {
        return replay(manifest, &cli.global);
    }
    let config = resolve_config(&cli.global)?;
    let args = std::env::args().skip(1).collect();
    execute(&cli.command, &cli.global, config, args)
}

fn resolve_config(global: &GlobalArgs) -> Result<NetworkConfig> {
    let mut config = match &global.config {
        Some(path) => {
            NetworkConfig::from_file(path).with_context(|| format!("loading {}", path.display()))?
        }
        None => NetworkConfig::default(),
    };
    for assignment in &global.overrides {
        config.set(assignment)?;
    }
    Ok(config)
}

fn replay(path: &Path, global: &GlobalArgs) -> Result<()> {
    let manifest = RunManifest::load(path)?;
    let recorded = Cli::try_parse_from(
        std::iter::once("cognet".to_string()).chain(manifest.args.iter().cloned()),
    )
    .map_err(|e| Error::Config(format!("manifest arguments do not parse: {e}")))?;
    if matches!(recorded.command, Command::Replay { .. }) {
        return Err(Error::Config("a manifest cannot record a replay".into()).into());
    }
    let mut settings = recorded.global.clone();
    settings.out = global.out.clone();
    settings.workers = global.workers.or(settings.workers);
    execute(&recorded.command, &settings, manifest.config, manifest.args)
}

/// Output directory and the files written to it.
struct Outputs {
    dir: PathBuf,
    files: Vec<String>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    fn create(&mut self, name: &str) -> Result<BufWriter<File>> {
        let path = self.dir.join(name);
        self.files.push(name.to_string());
        Ok(BufWriter::new(
            File::create(&path).with_context(|| format!("creating {}", path.display()))?,
        ))
    }

    fn table(&mut self, name: &str, table: &Table) -> Result<()> {
        let mut w = self.create(name)?;
        table.write_csv(&mut w)?;
        w.flush()?;
        Ok(())
    }
}

fn execute(
    command: &Command,
    global: &GlobalArgs,
    config: NetworkConfig,
    args: Vec<String>,
) -> Result<()> {
    let start = Instant::now();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = global.workers {
        pool = pool.num_threads(n);
    }
    let pool = pool.build()?;
    let mut out = Outputs::new(&global.out)?;
    let (name, config) = pool.install(|| dispatch(command, global, config, &mut out))?;
    let manifest = RunManifest {
        subcommand: name,
        args,
        config,
        seed: global.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        outputs: out.files,
        duration_secs: start.elapsed().as_secs_f64(),
    };
    let path = manifest.save(&out.dir)?;
    log::info!("manifest written to {}", path.display());
    Ok(())
}

/// Runs one subcommand and returns its manifest name with the configuration
/// actually used.
fn dispatch(
    command: &Command,
    global: &GlobalArgs,
    mut config: NetworkConfig,
    out: &mut Outputs,
) -> Result<(String, NetworkConfig)> {
    let seed = global.seed;
    let name = match command {
        Command::Validate => {
            let report = config.validate();
            let derived = config.derived_quantities();
            if !report.is_admissible() {
                return Err(Error::Config(report.to_string()).into());
            }
            println!("configuration is admissible");
            println!("expected cognitive users: {:.4}", derived.expected_nodes);
            println!("primary capacity: {:.6} bits", derived.capacity);
            println!("primary outage rate C0: {:.6} bits", derived.outage_rate);
            "validate".to_string()
        }
        Command::Place { n, fill_pers } => {
            let count = n.map_or(NodeCount::Poisson, NodeCount::Fixed);
            let mode = if *fill_pers {
                PlacementMode::FillPers
            } else {
                PlacementMode::Standard
            };
            let placement = place_network_with(&config, count, mode, seed)?;
            let mut w = out.create("placement.csv")?;
            placement.write_csv(&mut w)?;
            w.flush()?;
            println!(
                "{} cognitive pairs, acceptance ratio {:.4}",
                placement.len(),
                placement.acceptance_ratio
            );
            "place".to_string()
        }
        Command::Interference(cmd) => interference_cmd(cmd, global, &config, out)?,
        Command::Bounds(cmd) => bounds_cmd(cmd, &config, out)?,
        Command::PerRadius(cmd) => per_cmd(cmd, seed, &config, out)?,
        Command::Scaling { sweep, seeds } => {
            apply_sweep(&mut config, sweep);
            let run = throughput::scaling_experiment(&config, &sweep.n_grid, *seeds, seed)?;
            out.table("scaling.csv", &run.table())?;
            for p in &run.per_n {
                println!(
                    "n = {:>5}  T_n = {:.6}  S_n = {:.4}  C1bar = {:.3e}",
                    p.n, p.mean_per_user_rate, p.sum_rate, p.lower_bound_c1bar
                );
            }
            println!(
                "S_n slope {:.6}, T_n max/min {:.4}",
                run.sum_rate_slope(),
                run.flatness()
            );
            "scaling".to_string()
        }
        Command::Concentration {
            sweep,
            trials,
            delta,
        } => {
            apply_sweep(&mut config, sweep);
            let run = throughput::concentration_experiment(
                &config,
                &sweep.n_grid,
                *trials,
                *delta,
                seed,
            )?;
            out.table("concentration.csv", &run.table())?;
            println!(
                "delta = {:.6}, slope of log std against log n = {:.4}",
                run.delta,
                run.std_decay_slope()
            );
            "concentration".to_string()
        }
        Command::Replay { .. } => unreachable!("handled before dispatch"),
    };
    Ok((name, config))
}

fn apply_sweep(config: &mut NetworkConfig, sweep: &SweepArgs) {
    match sweep.mode {
        Some(ModeArg::Constant) => config.mode = PowerMode::ConstantPower,
        Some(ModeArg::Scaled) => config.mode = PowerMode::DistanceScaledPower,
        None => {}
    }
    if let Some(g) = sweep.gamma {
        config.power_exponent = g;
    }
}

fn interference_cmd(
    cmd: &InterferenceCmd,
    global: &GlobalArgs,
    config: &NetworkConfig,
    out: &mut Outputs,
) -> Result<String> {
    let seed = global.seed;
    Ok(match cmd {
        InterferenceCmd::Mc { trials } => {
            let draws =
                interference::mc_primary_rx_draws(config, NodeCount::Poisson, *trials, seed)?;
            let est = InterferenceEstimate::from_draws(&draws, seed);
            let radius = Radius::Finite(config.network_radius);
            let reference = match bounds::exact_interference_alpha4(config, radius) {
                Ok(v) => v,
                Err(Error::Unsupported(_)) => bounds::quadrature_oracle(config, radius)?,
                Err(e) => return Err(e.into()),
            };
            let mut t = Table::new(["mean", "variance", "stderr", "trials", "reference", "z"]);
            t.push(vec![
                est.mean,
                est.variance,
                est.stderr,
                *trials as f64,
                reference,
                est.z_score(reference),
            ]);
            out.table("interference_mc.csv", &t)?;
            if global.dump_raw {
                out.table("interference_mc_raw.csv", &raw_table(&draws))?;
            }
            println!(
                "E[I0] = {:.6} ± {:.6} (reference {:.6})",
                est.mean, est.stderr, reference
            );
            "interference-mc".to_string()
        }
        InterferenceCmd::Lattice {
            truncation,
            theta_grid,
            exclude_origin,
        } => {
            let eps = config.rx_protect / config.per_radius;
            let scan = interference::lattice_scan(
                eps,
                config.path_loss,
                *truncation,
                *theta_grid,
                !exclude_origin,
            )?;
            let mut t = Table::new(["theta", "value", "tail_bound"]);
            for s in &scan {
                t.push(vec![s.theta, s.value, s.tail_bound]);
            }
            out.table("lattice_scan.csv", &t)?;
            let worst = scan.iter().map(|s| s.value).fold(f64::MIN, f64::max);
            let physical = config.primary_power * worst / config.per_radius.powf(config.path_loss);
            println!(
                "worst-case normalized sum {worst:.6}, primary interference bound {physical:.6}"
            );
            "interference-lattice".to_string()
        }
        InterferenceCmd::Avg { trials } => {
            let r = config.network_radius;
            let finite = interference::avg_cog_interference(config, Radius::Finite(r))?;
            let limit = interference::interference_limit(config)?;
            let draws = interference::mc_central_cog_draws(config, r, *trials, seed)?;
            let est = InterferenceEstimate::from_draws(&draws, seed);
            let mut t = Table::new(["R", "closed_form", "mc_mean", "mc_stderr"]);
            t.push(vec![r, finite, est.mean, est.stderr]);
            t.push(vec![f64::INFINITY, limit, f64::NAN, f64::NAN]);
            out.table("interference_avg.csv", &t)?;
            if global.dump_raw {
                out.table("interference_avg_raw.csv", &raw_table(&draws))?;
            }
            println!(
                "I_avg = {finite:.6} (MC {:.6} ± {:.6}), I_inf = {limit:.6}",
                est.mean, est.stderr
            );
            "interference-avg".to_string()
        }
    })
}

fn raw_table(draws: &[f64]) -> Table {
    let mut t = Table::new(["trial", "I0"]);
    for (i, d) in draws.iter().enumerate() {
        t.push(vec![i as f64, *d]);
    }
    t
}

fn bounds_cmd(cmd: &BoundsCmd, config: &NetworkConfig, out: &mut Outputs) -> Result<String> {
    let (figure, r0) = match cmd {
        BoundsCmd::Grid {
            r0,
            eps_p,
            radius,
            oracle,
        } => {
            config.validated()?;
            let eps = if eps_p.is_empty() {
                vec![config.guard_band]
            } else {
                eps_p.clone()
            };
            let t = bounds::grid_table(config, r0, &eps, *radius, *oracle)?;
            out.table("bounds_grid.csv", &t)?;
            return Ok("bounds-grid".to_string());
        }
        BoundsCmd::Figure7 { r0 } => (Figure::Alpha3, r0),
        BoundsCmd::Figure8 { r0 } => (Figure::Alpha4, r0),
        BoundsCmd::Figure9 { r0 } => (Figure::Alpha5, r0),
    };
    let name = match figure {
        Figure::Alpha3 => "figure7",
        Figure::Alpha4 => "figure8",
        Figure::Alpha5 => "figure9",
    };
    out.table(&format!("{name}.csv"), &bounds::figure_table(figure, r0)?)?;
    Ok(format!("bounds-{name}"))
}

fn curve_methods(method: CurveMethod) -> Vec<Method> {
    match method {
        CurveMethod::Auto => vec![Method::Auto],
        CurveMethod::Markov => vec![Method::Markov],
        CurveMethod::Implicit => vec![Method::Implicit],
        CurveMethod::Both => vec![Method::Markov, Method::Implicit],
    }
}

fn per_cmd(cmd: &PerCmd, seed: u64, config: &NetworkConfig, out: &mut Outputs) -> Result<String> {
    config.validated()?;
    let (figure, sweep, grid, method) = match cmd {
        PerCmd::Solve { outage_trials } => {
            let s = per_design::solve_per(config)?;
            let mut header = "r0_interference_free,r0_markov,r0_implicit,binding".to_string();
            let mut row = format!(
                "{},{},{},{}",
                s.r0_interference_free,
                s.r0_markov,
                s.r0_implicit.unwrap_or(f64::NAN),
                s.binding_constraint.as_str()
            );
            if *outage_trials > 0 {
                let est = per_design::simulate_outage(config, s.r0_markov, *outage_trials, seed)?;
                header.push_str(",outage_rate,outage_stderr,outage_trials");
                row.push_str(&format!(",{},{},{}", est.rate(), est.stderr(), est.trials));
                println!(
                    "outage at the Markov radius: {:.5} ± {:.5}",
                    est.rate(),
                    est.stderr()
                );
            }
            let mut w = out.create("per_solution.csv")?;
            write!(w, "{header}\n{row}\n")?;
            w.flush()?;
            println!(
                "R0 interference-free {:.6}, Markov {:.6}, implicit {}, binding {}",
                s.r0_interference_free,
                s.r0_markov,
                s.r0_implicit
                    .map_or("n/a".to_string(), |r| format!("{r:.6}")),
                s.binding_constraint.as_str()
            );
            return Ok("per-radius-solve".to_string());
        }
        PerCmd::CurveFig10 { c0, eps_p, method } => (
            "fig10",
            Sweep::R0VsEpsP {
                c0_list: c0.clone(),
            },
            eps_p,
            *method,
        ),
        PerCmd::CurveFig11 { eps_p, r0, method } => (
            "fig11",
            Sweep::P0VsR0 {
                eps_p_list: eps_p.clone(),
            },
            r0,
            *method,
        ),
    };
    let both = method == CurveMethod::Both;
    for m in curve_methods(method) {
        let points = match per_design::tradeoff_curve(config, &sweep, grid, m) {
            Err(Error::Unsupported(msg)) if both => {
                log::warn!("skipping the implicit curve: {msg}");
                continue;
            }
            r => r?,
        };
        let binding = points.first().map_or("none", |p| p.binding.as_str());
        for p in &points {
            match sweep {
                Sweep::R0VsEpsP { .. } => println!(
                    "C0 = {}  eps_p = {}  R0 = {:.6}  binding = {}",
                    p.series,
                    p.x,
                    p.y,
                    p.binding.as_str()
                ),
                Sweep::P0VsR0 { .. } => println!(
                    "eps_p = {}  R0 = {}  P0 = {:.6}  binding = {}",
                    p.series,
                    p.x,
                    p.y,
                    p.binding.as_str()
                ),
            }
        }
        out.table(
            &format!("{figure}_{binding}.csv"),
            &per_design::curve_table(&sweep, &points),
        )?;
    }
    Ok(format!("per-radius-curve-{figure}"))
}
