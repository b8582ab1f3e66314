//! Radius of the primary exclusive region (PER) under an outage constraint:
//! the interference-free limit, the Markov-inequality radius, and the exact
//! implicit condition for `α = 4`, plus trade-off curves.

use std::f64::consts::PI;

use crate::bounds::upper_bound;
use crate::config::{as_integer, NetworkConfig, Radius};
use crate::error::{Error, Result};
use crate::geometry::NodeCount;
use crate::interference::mc_primary_rx_draws;
use crate::report::Table;

/// Grid resolution used to bracket the roots of the implicit condition.
pub const IMPLICIT_SCAN_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binding {
    /// No cognitive interference; only noise limits the radius.
    Noise,
    MarkovBound,
    Implicit,
}

impl Binding {
    pub fn as_str(self) -> &'static str {
        match self {
            Binding::Noise => "noise",
            Binding::MarkovBound => "markov",
            Binding::Implicit => "implicit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerSolution {
    pub r0_interference_free: f64,
    pub r0_markov: f64,
    pub r0_implicit: Option<f64>,
    pub binding_constraint: Binding,
}

impl PerSolution {
    /// Radius to deploy: the implicit root when available, else the Markov
    /// radius.
    pub fn design_radius(&self) -> f64 {
        self.r0_implicit.unwrap_or(self.r0_markov)
    }
}

/// `2^{C₀} − 1`, the SINR the primary link must reach.
fn sinr_target(config: &NetworkConfig) -> Result<f64> {
    let c0 = config.outage_rate();
    if !(c0 > 0.0) {
        return Err(Error::domain(format!(
            "outage rate C₀ must be positive, got {c0}"
        )));
    }
    Ok(c0.exp2() - 1.0)
}

fn check_beta(config: &NetworkConfig) -> Result<f64> {
    let beta = config.outage_prob;
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::domain(format!(
            "outage probability must lie in (0, 1), got {beta}"
        )));
    }
    Ok(beta)
}

/// Largest radius at which the primary link meets `C₀` with noise alone.
pub fn interference_free_radius(config: &NetworkConfig) -> Result<f64> {
    let target = sinr_target(config)?;
    Ok((config.primary_power / (config.noise * target)).powf(1.0 / config.path_loss))
}

/// Radius guaranteed by Markov's inequality with the infinite-network upper
/// bound on the mean interference.
pub fn markov_radius(config: &NetworkConfig) -> Result<f64> {
    let target = sinr_target(config)?;
    let beta = check_beta(config)?;
    let ub = upper_bound(config, Radius::Infinite)?;
    Ok((config.primary_power / target / (ub / beta + config.noise)).powf(1.0 / config.path_loss))
}

fn require_alpha4(config: &NetworkConfig) -> Result<()> {
    if as_integer(config.path_loss) != Some(4) || config.gamma() != 0.0 {
        return Err(Error::Unsupported(format!(
            "implicit radius needs α = 4 and γ = 0 (got α = {}, γ = {})",
            config.path_loss,
            config.gamma()
        )));
    }
    Ok(())
}

/// Left side of the implicit condition: the `R₀`-dependent factor of the
/// exact mean interference.
pub fn implicit_lhs(r0: f64, eps_p: f64) -> f64 {
    (r0 + eps_p).powi(2) / (eps_p * eps_p * (2.0 * r0 + eps_p).powi(2))
}

/// Right side of the implicit condition.
pub fn implicit_rhs(config: &NetworkConfig, r0: f64, target: f64) -> f64 {
    let scale = config.outage_prob / (config.density * PI * config.power_coefficient());
    scale * (config.primary_power / r0.powi(4) / target - config.noise)
}

/// Largest `R₀ ≤ R₀ᵘ` satisfying the exact `α = 4` outage condition.
///
/// Sign changes are bracketed on a uniform grid over `(0, R₀ᵘ]` and the last
/// one is refined by bisection. More than one crossing is logged as a
/// warning.
pub fn implicit_radius_alpha4(config: &NetworkConfig) -> Result<f64> {
    require_alpha4(config)?;
    check_beta(config)?;
    let target = sinr_target(config)?;
    let upper = interference_free_radius(config)?;
    let eps_p = config.guard_band;
    let f = |r: f64| implicit_rhs(config, r, target) - implicit_lhs(r, eps_p);

    let step = upper / IMPLICIT_SCAN_POINTS as f64;
    let mut crossings = Vec::new();
    let mut any_feasible = false;
    let mut prev = f(step);
    for i in 2..=IMPLICIT_SCAN_POINTS {
        let x = step * i as f64;
        let cur = f(x);
        any_feasible |= prev >= 0.0;
        if prev >= 0.0 && cur < 0.0 {
            crossings.push((x - step, x));
        }
        prev = cur;
    }
    any_feasible |= prev >= 0.0;
    if !any_feasible {
        return Err(Error::Infeasible(
            "outage condition fails for every R₀ in (0, R₀ᵘ]".into(),
        ));
    }
    if crossings.len() > 1 {
        log::warn!(
            "implicit PER condition has {} crossings; using the largest",
            crossings.len()
        );
    }
    let Some(&(mut lo, mut hi)) = crossings.last() else {
        // Feasible on the whole grid, which ends at R₀ᵘ.
        return Ok(upper);
    };
    while hi - lo > 1e-13 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// All radius solvers at one parameter point.
pub fn solve_per(config: &NetworkConfig) -> Result<PerSolution> {
    let free = interference_free_radius(config)?;
    let markov = markov_radius(config)?;
    let implicit = match implicit_radius_alpha4(config) {
        Ok(r) => Some(r),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    let binding = if config.density * config.power_coefficient() == 0.0 {
        Binding::Noise
    } else if implicit.is_some() {
        Binding::Implicit
    } else {
        Binding::MarkovBound
    };
    Ok(PerSolution {
        r0_interference_free: free,
        r0_markov: markov,
        r0_implicit: implicit,
        binding_constraint: binding,
    })
}

/// Which outage condition a trade-off curve uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Implicit condition when `α = 4` and `γ = 0`, Markov radius otherwise.
    Auto,
    Markov,
    Implicit,
}

impl Method {
    fn resolve(self, config: &NetworkConfig) -> Binding {
        match self {
            Method::Markov => Binding::MarkovBound,
            Method::Implicit => Binding::Implicit,
            Method::Auto => {
                if require_alpha4(config).is_ok() {
                    Binding::Implicit
                } else {
                    Binding::MarkovBound
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    /// `R₀` against `ε_p`, one series per outage rate `C₀`.
    R0VsEpsP { c0_list: Vec<f64> },
    /// Required `P₀` against `R₀`, one series per `ε_p`.
    P0VsR0 { eps_p_list: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    /// `C₀` or `ε_p`, depending on the sweep.
    pub series: f64,
    pub x: f64,
    pub y: f64,
    pub binding: Binding,
}

/// Primary power needed for outage rate `C₀` at radius `R₀`.
pub fn required_primary_power(config: &NetworkConfig, r0: f64, method: Method) -> Result<f64> {
    let target = sinr_target(config)?;
    let beta = check_beta(config)?;
    match method.resolve(config) {
        Binding::Implicit => {
            require_alpha4(config)?;
            let interference = implicit_lhs(r0, config.guard_band)
                * config.density
                * PI
                * config.power_coefficient();
            Ok(r0.powi(4) * target * (interference / beta + config.noise))
        }
        _ => {
            let ub = upper_bound(config, Radius::Infinite)?;
            Ok(r0.powf(config.path_loss) * target * (ub / beta + config.noise))
        }
    }
}

/// Points of a trade-off curve. A grid point whose radius cannot be solved
/// is skipped with a warning.
pub fn tradeoff_curve(
    config: &NetworkConfig,
    sweep: &Sweep,
    grid: &[f64],
    method: Method,
) -> Result<Vec<CurvePoint>> {
    if grid.is_empty() {
        return Err(Error::domain("trade-off grid is empty"));
    }
    let binding = method.resolve(config);
    let mut points = Vec::new();
    match sweep {
        Sweep::R0VsEpsP { c0_list } => {
            for &c0 in c0_list {
                for &eps_p in grid {
                    let cfg = NetworkConfig {
                        outage_rate: Some(c0),
                        eta: None,
                        guard_band: eps_p,
                        ..config.clone()
                    };
                    let r0 = match binding {
                        Binding::Implicit => implicit_radius_alpha4(&cfg),
                        _ => markov_radius(&cfg),
                    };
                    match r0 {
                        Ok(y) => points.push(CurvePoint {
                            series: c0,
                            x: eps_p,
                            y,
                            binding,
                        }),
                        Err(e @ (Error::Infeasible(_) | Error::Numeric { .. })) => {
                            log::warn!("C0 = {c0}, eps_p = {eps_p}: {e}")
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        Sweep::P0VsR0 { eps_p_list } => {
            for &eps_p in eps_p_list {
                let cfg = NetworkConfig {
                    guard_band: eps_p,
                    ..config.clone()
                };
                for &r0 in grid {
                    let y = required_primary_power(&cfg, r0, method)?;
                    points.push(CurvePoint {
                        series: eps_p,
                        x: r0,
                        y,
                        binding,
                    });
                }
            }
        }
    }
    Ok(points)
}

/// Curve points as a table: `C0,eps_p,R0` or `eps_p,R0,P0`.
pub fn curve_table(sweep: &Sweep, points: &[CurvePoint]) -> Table {
    let mut table = match sweep {
        Sweep::R0VsEpsP { .. } => Table::new(["C0", "eps_p", "R0"]),
        Sweep::P0VsR0 { .. } => Table::new(["eps_p", "R0", "P0"]),
    };
    for p in points {
        table.push(vec![p.series, p.x, p.y]);
    }
    table
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimate {
    pub r0: f64,
    /// Interference level at or above which the primary link is in outage.
    pub threshold: f64,
    pub outages: usize,
    pub trials: usize,
}

impl OutageEstimate {
    pub fn rate(&self) -> f64 {
        self.outages as f64 / self.trials as f64
    }

    /// Binomial standard error of [`rate`](Self::rate).
    pub fn stderr(&self) -> f64 {
        let p = self.rate();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

/// Empirical outage probability of the worst-case primary receiver on the
/// edge of a PER of radius `r0`, over independent Poisson placements.
pub fn simulate_outage(
    config: &NetworkConfig,
    r0: f64,
    trials: usize,
    seed: u64,
) -> Result<OutageEstimate> {
    let target = sinr_target(config)?;
    let cfg = NetworkConfig {
        per_radius: r0,
        ..config.clone()
    };
    let threshold = cfg.primary_power / r0.powf(cfg.path_loss) / target - cfg.noise;
    let draws = mc_primary_rx_draws(&cfg, NodeCount::Poisson, trials, seed)?;
    Ok(OutageEstimate {
        r0,
        threshold,
        outages: draws.iter().filter(|&&i| i >= threshold).count(),
        trials,
    })
}
