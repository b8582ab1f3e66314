//! Per-user rates of the cognitive network and Monte Carlo checks of the
//! linear sum-rate scaling law and its concentration.

use rayon::prelude::*;

use crate::channel::{power_gain, tx_power};
use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::geometry::{place_network, NodeCount, NodePlacement};
use crate::interference::{
    interference_limit, mc_interference_at, worst_case_primary_interference, Probe, Sources,
};
use crate::report::Table;
use crate::rng::{self, label};
use crate::stats::{ls_slope, Welford};

/// Default user counts of the scaling experiment.
pub const DEFAULT_N_GRID: [usize; 6] = [50, 100, 200, 400, 800, 1600];

/// Lattice truncation and angle grid used for the primary interference term
/// of the rate lower bound.
pub const LOWER_BOUND_TRUNCATION: usize = 100;
pub const LOWER_BOUND_THETA_GRID: usize = 360;

/// Received signal and interference at one cognitive receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub signal: f64,
    pub cognitive_interference: f64,
    pub primary_interference: f64,
}

impl Link {
    pub fn sinr(&self, noise: f64) -> f64 {
        self.signal / (self.cognitive_interference + self.primary_interference + noise)
    }
}

/// Signal and interference terms for every pair of a placement.
pub fn per_user_links(placement: &NodePlacement, config: &NetworkConfig) -> Result<Vec<Link>> {
    if placement.cognitive_rx.len() != placement.cognitive_tx.len() {
        return Err(Error::domain("placement has unpaired transmitters"));
    }
    (0..placement.len())
        .into_par_iter()
        .map(|i| {
            let tx = placement.cognitive_tx[i];
            let rx = placement.cognitive_rx[i];
            let probe = Probe::Cognitive {
                point: rx,
                own_pair: Some(i),
            };
            Ok(Link {
                signal: tx_power(tx.norm(), config) * power_gain(tx.dist(rx), config.path_loss)?,
                cognitive_interference: mc_interference_at(
                    &probe,
                    placement,
                    config,
                    Sources::Cognitive,
                )?,
                primary_interference: mc_interference_at(
                    &probe,
                    placement,
                    config,
                    Sources::Primary,
                )?,
            })
        })
        .collect()
}

/// `C_i = log(1 + SINR_i)` for every pair, in the configured log base.
pub fn per_user_rates(placement: &NodePlacement, config: &NetworkConfig) -> Result<Vec<f64>> {
    Ok(per_user_links(placement, config)?
        .iter()
        .map(|l| config.log_base.log1p(l.sinr(config.noise)))
        .collect())
}

/// Upper bound on the interference any cognitive receiver sees from the
/// primaries: the worst-case lattice sum plus its truncation tail.
pub fn primary_interference_ceiling(config: &NetworkConfig) -> Result<f64> {
    let r0 = config.per_radius;
    let wc = worst_case_primary_interference(
        config.rx_protect / r0,
        config.path_loss,
        LOWER_BOUND_TRUNCATION,
        LOWER_BOUND_THETA_GRID,
        true,
    )?;
    Ok(config.primary_power * (wc.value + wc.tail_bound) / r0.powf(config.path_loss))
}

/// Lower bound on the mean per-user rate:
/// `log(1 + P_rmin / (σ² + I_P + I_∞))` with `P_rmin = P / D_max^α`, or with
/// distance-scaled power `log(1 + P_c / ((σ² + I_P + I_∞) K_d^α))`.
pub fn rate_lower_bound(config: &NetworkConfig) -> Result<f64> {
    rate_lower_bound_with(config, primary_interference_ceiling(config)?)
}

/// [`rate_lower_bound`] with a precomputed primary interference term.
pub fn rate_lower_bound_with(config: &NetworkConfig, primary_interference: f64) -> Result<f64> {
    let denominator = config.noise + primary_interference + interference_limit(config)?;
    // The same expression covers both modes: D_max in constant mode, K_d in
    // scaled mode.
    let weakest = config.power_coefficient() / config.dmax_or_default().powf(config.path_loss);
    Ok(config.log_base.log1p(weakest / denominator))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPoint {
    pub n: usize,
    /// `T_n`: per-user rate averaged over users and seeds.
    pub mean_per_user_rate: f64,
    /// `S_n = n T_n`.
    pub sum_rate: f64,
    /// Standard deviation of the per-seed mean rate.
    pub std_across_seeds: f64,
    pub lower_bound_c1bar: f64,
    pub seeds_used: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRun {
    pub n_values: Vec<usize>,
    pub per_n: Vec<ScalingPoint>,
}

impl ScalingRun {
    /// Columns `n,T_n,S_n,std,C1bar`.
    pub fn table(&self) -> Table {
        let mut t = Table::new(["n", "T_n", "S_n", "std", "C1bar"]);
        for p in &self.per_n {
            t.push(vec![
                p.n as f64,
                p.mean_per_user_rate,
                p.sum_rate,
                p.std_across_seeds,
                p.lower_bound_c1bar,
            ]);
        }
        t
    }

    /// Least-squares slope of `S_n` against `n`.
    pub fn sum_rate_slope(&self) -> f64 {
        let x: Vec<f64> = self.per_n.iter().map(|p| p.n as f64).collect();
        let y: Vec<f64> = self.per_n.iter().map(|p| p.sum_rate).collect();
        ls_slope(&x, &y)
    }

    /// Largest over smallest `T_n` across the grid.
    pub fn flatness(&self) -> f64 {
        let rates = self.per_n.iter().map(|p| p.mean_per_user_rate);
        rates.clone().fold(f64::MIN, f64::max) / rates.fold(f64::MAX, f64::min)
    }
}

/// Configuration for `n` users at the fixed density: the network radius
/// grows as `√(n/(λπ) + (R₀+ε_p)²)` around a single central PER.
pub fn config_for_count(config: &NetworkConfig, n: usize) -> NetworkConfig {
    NetworkConfig {
        network_radius: config.radius_for_count(n as f64),
        primary_spacing: None,
        ..config.clone()
    }
}

fn check_n_values(n_values: &[usize]) -> Result<()> {
    if n_values.is_empty() || n_values[0] == 0 || n_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain(
            "n values must be positive and strictly increasing",
        ));
    }
    Ok(())
}

/// Mean per-user rate of one independent placement of `n` users.
fn placement_mean_rate(config: &NetworkConfig, n: usize, seed: u64) -> Result<f64> {
    let placement = place_network(config, NodeCount::Fixed(n), seed)?;
    let rates = per_user_rates(&placement, config)?;
    Ok(rates.iter().sum::<f64>() / n as f64)
}

/// Mean per-user rate `T_n` and sum rate `S_n` for each `n`, averaged over
/// `seeds_per_n` independent placements.
pub fn scaling_experiment(
    config: &NetworkConfig,
    n_values: &[usize],
    seeds_per_n: usize,
    seed: u64,
) -> Result<ScalingRun> {
    config.validated()?;
    check_n_values(n_values)?;
    if seeds_per_n == 0 {
        return Err(Error::domain("at least one seed per n is required"));
    }
    let c1bar = rate_lower_bound(config)?;
    let jobs: Vec<(usize, usize)> = n_values
        .iter()
        .flat_map(|&n| (0..seeds_per_n).map(move |s| (n, s)))
        .collect();
    let means = jobs
        .par_iter()
        .map(|&(n, s)| {
            let cfg = config_for_count(config, n);
            placement_mean_rate(
                &cfg,
                n,
                rng::derive(seed, &[label::SEED, n as u64, s as u64]),
            )
        })
        .collect::<Result<Vec<f64>>>()?;
    let per_n = n_values
        .iter()
        .zip(means.chunks(seeds_per_n))
        .map(|(&n, chunk)| {
            let w: Welford = chunk.iter().copied().collect();
            ScalingPoint {
                n,
                mean_per_user_rate: w.mean(),
                sum_rate: n as f64 * w.mean(),
                std_across_seeds: if seeds_per_n > 1 { w.std_dev() } else { 0.0 },
                lower_bound_c1bar: c1bar,
                seeds_used: seeds_per_n,
            }
        })
        .collect();
    Ok(ScalingRun {
        n_values: n_values.to_vec(),
        per_n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationPoint {
    pub n: usize,
    pub trials: usize,
    /// Mean of `S_n / n` across trials.
    pub mean_per_user_rate: f64,
    /// Standard deviation of `S_n / n` across trials.
    pub std_per_user_rate: f64,
    /// Fraction of trials with `|S_n − mean S_n| / n ≥ δ`.
    pub p_delta: f64,
    /// `var(S_n) / n`.
    pub var_sum_over_n: f64,
    /// Variance of the individual rates pooled over trials.
    pub var_user_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationRun {
    pub delta: f64,
    pub per_n: Vec<ConcentrationPoint>,
}

impl ConcentrationRun {
    /// Columns `n,mean,std,p_delta,var_sn_over_n,var_rate,delta`.
    pub fn table(&self) -> Table {
        let mut t = Table::new([
            "n",
            "mean",
            "std",
            "p_delta",
            "var_sn_over_n",
            "var_rate",
            "delta",
        ]);
        for p in &self.per_n {
            t.push(vec![
                p.n as f64,
                p.mean_per_user_rate,
                p.std_per_user_rate,
                p.p_delta,
                p.var_sum_over_n,
                p.var_user_rate,
                self.delta,
            ]);
        }
        t
    }

    /// Least-squares slope of `log std(S_n/n)` against `log n`.
    pub fn std_decay_slope(&self) -> f64 {
        let x: Vec<f64> = self.per_n.iter().map(|p| (p.n as f64).ln()).collect();
        let y: Vec<f64> = self
            .per_n
            .iter()
            .map(|p| p.std_per_user_rate.ln())
            .collect();
        ls_slope(&x, &y)
    }
}

/// Minimum number of trials per `n` for the concentration experiment.
pub const MIN_CONCENTRATION_TRIALS: usize = 100;

/// Deviation probability of the per-user sum rate over independent
/// placements. With `delta = None` the threshold is `0.1·T` at the smallest
/// `n`.
pub fn concentration_experiment(
    config: &NetworkConfig,
    n_values: &[usize],
    trials: usize,
    delta: Option<f64>,
    seed: u64,
) -> Result<ConcentrationRun> {
    config.validated()?;
    check_n_values(n_values)?;
    if trials < MIN_CONCENTRATION_TRIALS {
        return Err(Error::domain(format!(
            "at least {MIN_CONCENTRATION_TRIALS} trials per n are required"
        )));
    }
    if let Some(d) = delta {
        if !(d > 0.0) {
            return Err(Error::domain("δ must be positive"));
        }
    }
    let jobs: Vec<(usize, usize)> = n_values
        .iter()
        .flat_map(|&n| (0..trials).map(move |t| (n, t)))
        .collect();
    // (S_n / n, pooled rate accumulator) per trial.
    let outcomes = jobs
        .par_iter()
        .map(|&(n, t)| {
            let cfg = config_for_count(config, n);
            let placement = place_network(
                &cfg,
                NodeCount::Fixed(n),
                rng::derive(seed, &[label::TRIAL, n as u64, t as u64]),
            )?;
            let rates: Welford = per_user_rates(&placement, &cfg)?.into_iter().collect();
            Ok(rates)
        })
        .collect::<Result<Vec<Welford>>>()?;
    let chunks: Vec<&[Welford]> = outcomes.chunks(trials).collect();
    let delta = match delta {
        Some(d) => d,
        None => 0.1 * chunks[0].iter().map(Welford::mean).sum::<f64>() / trials as f64,
    };
    let per_n = n_values
        .iter()
        .zip(chunks)
        .map(|(&n, chunk)| {
            let per_user: Welford = chunk.iter().map(Welford::mean).collect();
            let mean = per_user.mean();
            let exceed = chunk
                .iter()
                .filter(|w| (w.mean() - mean).abs() >= delta)
                .count();
            let pooled: Welford = chunk.iter().fold(Welford::new(), |acc, w| acc.merge(w));
            ConcentrationPoint {
                n,
                trials,
                mean_per_user_rate: mean,
                std_per_user_rate: per_user.std_dev(),
                p_delta: exceed as f64 / trials as f64,
                var_sum_over_n: per_user.variance() * n as f64,
                var_user_rate: pooled.variance(),
            }
        })
        .collect();
    Ok(ConcentrationRun { delta, per_n })
}
