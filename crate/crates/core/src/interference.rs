//! Interference powers: Monte Carlo sums over sampled placements, the
//! closed-form worst-case cognitive average, and truncated sums over the
//! hexagonal primary lattice.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::channel::{gain_from_dist2, tx_power};
use crate::config::{NetworkConfig, Radius};
use crate::error::{Error, Result};
use crate::geometry::{sample_transmitters, uniform_in_annulus, NodeCount, NodePlacement, Point};
use crate::rng::{self, label};
use crate::stats::Welford;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceEstimate {
    pub mean: f64,
    pub variance: f64,
    pub stderr: f64,
    pub n_trials: u64,
    pub seed: u64,
}

impl InterferenceEstimate {
    pub fn from_draws(draws: &[f64], seed: u64) -> Self {
        let w: Welford = draws.iter().copied().collect();
        Self {
            mean: w.mean(),
            variance: w.variance(),
            stderr: w.stderr(),
            n_trials: w.count(),
            seed,
        }
    }

    /// Number of standard errors between the estimate and `value`.
    pub fn z_score(&self, value: f64) -> f64 {
        (self.mean - value).abs() / self.stderr
    }
}

/// Which transmitters contribute to an interference sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sources {
    Cognitive,
    Primary,
    Both,
}

/// The receiver at which interference is measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Probe {
    /// A cognitive receiver; `own_pair` is excluded from the sum. Every
    /// contributing transmitter must be at least `ε_c` away.
    Cognitive {
        point: Point,
        own_pair: Option<usize>,
    },
    /// A primary receiver; cognitive transmitters must be at least `ε_p` away.
    Primary { point: Point },
}

impl Probe {
    fn point(&self) -> Point {
        match *self {
            Probe::Cognitive { point, .. } | Probe::Primary { point } => point,
        }
    }
}

/// Sum of received powers from the selected transmitters at `probe`.
pub fn mc_interference_at(
    probe: &Probe,
    placement: &NodePlacement,
    config: &NetworkConfig,
    sources: Sources,
) -> Result<f64> {
    let at = probe.point();
    let alpha = config.path_loss;
    let (protect, own) = match *probe {
        Probe::Cognitive { own_pair, .. } => (config.rx_protect, own_pair),
        Probe::Primary { .. } => (config.guard_band, None),
    };
    let p2 = protect * protect * (1.0 - 1e-12);
    let mut total = 0.0;
    if sources != Sources::Primary {
        for (j, tx) in placement.cognitive_tx.iter().enumerate() {
            if Some(j) == own {
                continue;
            }
            let d2 = tx.dist2(at);
            if d2 < p2 {
                return Err(Error::domain(format!(
                    "cognitive tx {j} at distance {} violates the protected radius {protect}",
                    d2.sqrt()
                )));
            }
            total += tx_power(tx.norm(), config) * gain_from_dist2(d2, alpha);
        }
    }
    if sources != Sources::Cognitive {
        let eps_c2 = config.rx_protect * config.rx_protect * (1.0 - 1e-12);
        for (k, tx) in placement.primary_tx.iter().enumerate() {
            let d2 = tx.dist2(at);
            if d2 < eps_c2 || d2 == 0.0 {
                return Err(Error::domain(format!(
                    "primary tx {k} at distance {} violates the protected radius",
                    d2.sqrt()
                )));
            }
            total += config.primary_power * gain_from_dist2(d2, alpha);
        }
    }
    Ok(total)
}

/// Closed-form mean interference at a cognitive receiver at the centre of a
/// disc of radius `radius` filled with transmitters at density `λ`, outside
/// the protected radius. With distance-scaled power the exponent is
/// `α - γ` and the coefficient `P_c`.
pub fn avg_cog_interference(config: &NetworkConfig, radius: Radius) -> Result<f64> {
    let e = config.effective_path_loss() - 2.0;
    if !(e > 0.0) {
        return Err(Error::domain("average interference needs α − 2 − γ > 0"));
    }
    let eps_c = config.rx_protect;
    if let Radius::Finite(r) = radius {
        if r < eps_c {
            return Err(Error::domain("network radius below the protected radius"));
        }
        if r == eps_c {
            return Ok(0.0);
        }
    }
    Ok(2.0 * PI * config.density * config.power_coefficient() / e
        * (eps_c.powf(-e) - radius.inv_pow(e)))
}

/// `I_∞`: the infinite-network limit of [`avg_cog_interference`].
pub fn interference_limit(config: &NetworkConfig) -> Result<f64> {
    avg_cog_interference(config, Radius::Infinite)
}

/// Monte Carlo counterpart of [`avg_cog_interference`]: Poisson transmitters
/// on the annulus `[ε_c, R]` around a receiver at the origin.
pub fn mc_central_cog_interference(
    config: &NetworkConfig,
    radius: f64,
    n_trials: usize,
    seed: u64,
) -> Result<InterferenceEstimate> {
    let draws = mc_central_cog_draws(config, radius, n_trials, seed)?;
    Ok(InterferenceEstimate::from_draws(&draws, seed))
}

pub fn mc_central_cog_draws(
    config: &NetworkConfig,
    radius: f64,
    n_trials: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let eps_c = config.rx_protect;
    if !(radius > eps_c) {
        return Err(Error::domain("network radius must exceed ε_c"));
    }
    let mean = config.density * PI * (radius * radius - eps_c * eps_c);
    let poisson = rand_distr::Poisson::new(mean).map_err(|e| Error::domain(e.to_string()))?;
    Ok((0..n_trials)
        .into_par_iter()
        .map(|t| {
            use rand_distr::Distribution;
            let mut r = rng::stream(seed, &[label::TRIAL, t as u64]);
            let n = poisson.sample(&mut r) as usize;
            (0..n)
                .map(|_| {
                    let p = uniform_in_annulus(&mut r, eps_c, radius);
                    tx_power(p.norm(), config)
                        * gain_from_dist2(p.dist2(Point::ORIGIN), config.path_loss)
                })
                .sum()
        })
        .collect())
}

/// Raw interference draws at the primary receiver on the PER edge `(R₀, 0)`.
pub fn mc_primary_rx_draws(
    config: &NetworkConfig,
    count: NodeCount,
    n_trials: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    config.validated()?;
    if config.primary_spacing.is_some() {
        return Err(Error::Config(
            "primary-receiver interference needs a single central PER".into(),
        ));
    }
    let primaries = [Point::ORIGIN];
    let probe = Point::new(config.per_radius, 0.0);
    (0..n_trials)
        .into_par_iter()
        .map(|t| {
            let (tx, _) = sample_transmitters(
                config,
                count,
                &primaries,
                rng::derive(seed, &[label::TRIAL, t as u64]),
            )?;
            Ok(tx
                .iter()
                .map(|p| {
                    tx_power(p.norm(), config) * gain_from_dist2(p.dist2(probe), config.path_loss)
                })
                .sum())
        })
        .collect()
}

/// Monte Carlo estimate of the mean interference at the worst-case primary
/// receiver.
pub fn mc_primary_rx_interference(
    config: &NetworkConfig,
    count: NodeCount,
    n_trials: usize,
    seed: u64,
) -> Result<InterferenceEstimate> {
    let draws = mc_primary_rx_draws(config, count, n_trials, seed)?;
    Ok(InterferenceEstimate::from_draws(&draws, seed))
}

/// Default lattice truncation index.
pub const DEFAULT_TRUNCATION: usize = 200;
/// Default number of receiver angles scanned for the worst case.
pub const DEFAULT_THETA_GRID: usize = 720;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSumResult {
    pub value: f64,
    pub truncation: usize,
    /// Upper bound on the contribution of every lattice point outside the
    /// truncation box.
    pub tail_bound: f64,
    pub theta: f64,
}

/// Neumaier-compensated accumulator.
#[derive(Default, Clone, Copy)]
struct KahanSum {
    sum: f64,
    c: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(self) -> f64 {
        self.sum + self.c
    }
}

/// Bound on `Σ_{m,k>=0} [(a k + b)^2 + (c m + d)^2]^(-α/2)` for `b + d > 0`,
/// from `(x^2+y^2)^(-α/2) <= 2^(α/2) (x+y)^(-α)` and the integral test.
fn generic_sum_bound(a: f64, b: f64, c: f64, d: f64, alpha: f64) -> f64 {
    let s = b + d;
    debug_assert!(s > 0.0);
    2f64.powf(alpha / 2.0)
        * (s.powf(-alpha)
            + s.powf(1.0 - alpha) / ((alpha - 1.0) * c)
            + (s.powf(1.0 - alpha) + s.powf(2.0 - alpha) / ((alpha - 2.0) * c))
                / ((alpha - 1.0) * a))
}

/// Tail bound for both sublattices truncated at index `k`, for a receiver at
/// offset `(x0, y0)` with `|x0|, |y0| < 1`.
///
/// Each quadrant of each sublattice splits into the strip beyond the box in
/// `x` (all `y`) and the strip beyond it in `y` (box `x`). Using `|x0|` and
/// `|y0|` makes all four quadrants share one bound.
fn lattice_tail_bound(k: usize, x0: f64, y0: f64, alpha: f64) -> f64 {
    let s3 = 3f64.sqrt();
    let (u, v) = (x0.abs(), y0.abs());
    let kp1 = (k + 1) as f64;
    let a = 2.0 * s3;
    let even = generic_sum_bound(a, a * kp1 - u, 2.0, -v, alpha)
        + generic_sum_bound(a, -u, 2.0, 2.0 * kp1 - v, alpha);
    let odd = generic_sum_bound(a, s3 * (2.0 * kp1 + 1.0) - u, 2.0, 1.0 - v, alpha)
        + generic_sum_bound(a, s3 - u, 2.0, 2.0 * kp1 + 1.0 - v, alpha);
    4.0 * (even + odd)
}

/// Interference from unit-power primaries on the hexagonal lattice (unit
/// length `R₀`) at the point at angle `theta` on the circle of radius `eps_c`
/// around the origin primary.
///
/// The even sublattice `(2√3k, 2m)` runs over `|k|, |m| <= K`; the odd
/// sublattice `(√3(2k+1), 2m+1)` over `-K-1 <= k, m <= K`, which keeps the
/// truncated set point-symmetric about the origin.
pub fn lattice_interference(
    theta: f64,
    eps_c: f64,
    alpha: f64,
    truncation: usize,
    include_origin: bool,
) -> Result<LatticeSumResult> {
    if !(eps_c > 0.0 && eps_c < 1.0) {
        return Err(Error::domain(format!(
            "normalized protected radius must lie in (0, 1), got {eps_c}"
        )));
    }
    if !(alpha > 2.0) {
        return Err(Error::domain("path loss must exceed 2"));
    }
    if truncation == 0 {
        return Err(Error::domain("lattice truncation must be at least 1"));
    }
    let (x0, y0) = (eps_c * theta.cos(), eps_c * theta.sin());
    let s3 = 3f64.sqrt();
    let k = truncation as i64;
    let mut acc = KahanSum::default();
    for m in -k..=k {
        let dy = 2.0 * m as f64 - y0;
        let dy2 = dy * dy;
        for j in -k..=k {
            if !include_origin && j == 0 && m == 0 {
                continue;
            }
            let dx = 2.0 * s3 * j as f64 - x0;
            acc.add(gain_from_dist2(dx * dx + dy2, alpha));
        }
    }
    for m in -k - 1..=k {
        let dy = (2 * m + 1) as f64 - y0;
        let dy2 = dy * dy;
        for j in -k - 1..=k {
            let dx = s3 * (2 * j + 1) as f64 - x0;
            acc.add(gain_from_dist2(dx * dx + dy2, alpha));
        }
    }
    Ok(LatticeSumResult {
        value: acc.total(),
        truncation,
        tail_bound: lattice_tail_bound(truncation, x0, y0, alpha),
        theta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorstCasePrimary {
    /// Largest truncated lattice sum over the angle grid.
    pub value: f64,
    pub theta: f64,
    /// Largest tail bound over the grid; `value + tail_bound` encloses the
    /// grid maximum of the untruncated sum.
    pub tail_bound: f64,
}

/// Worst-case primary interference: maximum of [`lattice_interference`] over
/// a uniform grid of `grid` angles on `[0, 2π)`.
pub fn worst_case_primary_interference(
    eps_c: f64,
    alpha: f64,
    truncation: usize,
    grid: usize,
    include_origin: bool,
) -> Result<WorstCasePrimary> {
    if grid == 0 {
        return Err(Error::domain("angle grid must be non-empty"));
    }
    let scan = lattice_scan(eps_c, alpha, truncation, grid, include_origin)?;
    let best = scan
        .iter()
        .copied()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("non-empty grid");
    Ok(WorstCasePrimary {
        value: best.value,
        theta: best.theta,
        tail_bound: scan.iter().map(|s| s.tail_bound).fold(0.0, f64::max),
    })
}

/// Lattice sums at `grid` equally spaced angles, in angle order.
pub fn lattice_scan(
    eps_c: f64,
    alpha: f64,
    truncation: usize,
    grid: usize,
    include_origin: bool,
) -> Result<Vec<LatticeSumResult>> {
    (0..grid)
        .into_par_iter()
        .map(|i| {
            let theta = 2.0 * PI * i as f64 / grid as f64;
            lattice_interference(theta, eps_c, alpha, truncation, include_origin)
        })
        .collect()
}

/// Worst-case primary interference in physical units for a configuration:
/// the normalized lattice maximum scaled by `P₀ / R₀^α`.
pub fn primary_interference_bound(
    config: &NetworkConfig,
    truncation: usize,
    grid: usize,
) -> Result<f64> {
    let r0 = config.per_radius;
    let wc = worst_case_primary_interference(
        config.rx_protect / r0,
        config.path_loss,
        truncation,
        grid,
        true,
    )?;
    Ok(config.primary_power * wc.value / r0.powf(config.path_loss))
}
