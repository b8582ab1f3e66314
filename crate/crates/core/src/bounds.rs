//! Expected interference at the primary receiver on the edge of a single
//! exclusive region: two lower bounds, an upper bound, the exact expression
//! for `α = 4`, and a numerical quadrature oracle for any `α`.
//!
//! With distance-scaled power every closed form is the constant-power formula
//! evaluated at exponent `α − γ` and power `P_c`. The quadrature oracle is the
//! one exception: it integrates the actual `P_c r^γ` law.

use std::f64::consts::PI;

use crate::config::{as_integer, NetworkConfig, Radius};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Tolerance};
use crate::report::Table;

/// Absolute tolerance of the quadrature oracle.
pub const ORACLE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSet {
    pub lb1: f64,
    pub lb2: f64,
    pub ub: f64,
    pub exact_alpha4: Option<f64>,
    pub finite_r: bool,
    pub gamma_used: f64,
}

/// Exponent excess `α − 2 − γ` and power coefficient for the closed forms.
fn effective(config: &NetworkConfig) -> Result<(f64, f64)> {
    let e = config.effective_path_loss() - 2.0;
    if !(e > 0.0) {
        return Err(Error::domain(format!("bounds need α − 2 − γ > 0, got {e}")));
    }
    Ok((e, config.power_coefficient()))
}

/// First lower bound: ring re-centred on the primary receiver with inner
/// radius `2R₀ + ε_p` and outer radius `R − R₀`.
pub fn lower_bound_1(config: &NetworkConfig, radius: Radius) -> Result<f64> {
    let (e, p) = effective(config)?;
    let inner = 2.0 * config.per_radius + config.guard_band;
    let outer = match radius {
        Radius::Finite(r) => {
            let o = r - config.per_radius;
            if !(o > inner) {
                return Err(Error::domain(format!(
                    "first lower bound needs R > 2R₀+ε_p, got R = {r}"
                )));
            }
            Radius::Finite(o)
        }
        Radius::Infinite => Radius::Infinite,
    };
    Ok(2.0 * PI * config.density * p / e * (inner.powf(-e) - outer.inv_pow(e)))
}

/// Second lower bound: interference from two half-planes tangent to the
/// guard circle on either side of the receiver.
pub fn lower_bound_2(config: &NetworkConfig, radius: Radius) -> Result<f64> {
    let (e, p) = effective(config)?;
    let a = a_alpha(e + 2.0)?;
    let eps_p = config.guard_band;
    let far = 2.0 * config.per_radius + eps_p;
    Ok(p * config.density / e * (a * eps_p.powf(-e) + a * far.powf(-e) - PI * radius.inv_pow(e)))
}

/// Upper bound: exclusion shrunk to radius `ε_p` around the receiver and the
/// network enlarged to radius `R + R₀`.
pub fn upper_bound(config: &NetworkConfig, radius: Radius) -> Result<f64> {
    let (e, p) = effective(config)?;
    let outer = match radius {
        Radius::Finite(r) => Radius::Finite(r + config.per_radius),
        Radius::Infinite => Radius::Infinite,
    };
    Ok(2.0 * PI * p * config.density / e * (config.guard_band.powf(-e) - outer.inv_pow(e)))
}

/// Exact expected interference for `α = 4` without power scaling.
pub fn exact_interference_alpha4(config: &NetworkConfig, radius: Radius) -> Result<f64> {
    if as_integer(config.path_loss) != Some(4) || config.gamma() != 0.0 {
        return Err(Error::Unsupported(format!(
            "closed form needs α = 4 and γ = 0 (got α = {}, γ = {}); use the quadrature oracle",
            config.path_loss,
            config.gamma()
        )));
    }
    let (r0, eps_p) = (config.per_radius, config.guard_band);
    let near = (r0 + eps_p).powi(2) / (eps_p * eps_p * (2.0 * r0 + eps_p).powi(2));
    let far = match radius {
        Radius::Infinite => 0.0,
        Radius::Finite(r) => {
            if !(r > r0 + eps_p) {
                return Err(Error::domain("network radius must exceed R₀+ε_p"));
            }
            r * r / (r * r - r0 * r0).powi(2)
        }
    };
    Ok(config.density * PI * config.power_coefficient() * (near - far))
}

/// Legendre polynomial `P_n(x)` by the three-term recurrence.
fn legendre(n: u32, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return p0;
    }
    for k in 1..n {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `∫_0^{2π} (r² + R₀² − 2R₀ r cos θ)^(−α/2) dθ` for `r > R₀`.
///
/// For even integer `α = 2n` this is `2π (r²−R₀²)^(−n) P_{n−1}((r²+R₀²)/(r²−R₀²))`;
/// otherwise it is integrated numerically.
fn angular_integral(r: f64, r0: f64, alpha: f64) -> Result<f64> {
    let a = r * r + r0 * r0;
    match as_integer(alpha) {
        Some(k) if k % 2 == 0 && k >= 2 => {
            let n = (k / 2) as u32;
            let diff = (r - r0) * (r + r0);
            Ok(2.0 * PI * diff.powi(-(n as i32)) * legendre(n - 1, a / diff))
        }
        _ => {
            let b = 2.0 * r0 * r;
            let q = integrate(
                |t: f64| (a - b * t.cos()).powf(-0.5 * alpha),
                0.0,
                PI,
                Tolerance::rel(1e-13),
            )?;
            Ok(2.0 * q.value)
        }
    }
}

/// Number of doubling panels integrated numerically for an infinite network.
const INFINITE_PANELS: i32 = 60;

/// Numerical value of
/// `λ P_c ∫_{R₀+ε_p}^{R} ∫_0^{2π} r^{γ+1} (r² + R₀² − 2R₀ r cos θ)^(−α/2) dθ dr`.
///
/// The radial range is split into doubling panels. For an infinite network
/// the panels stop at `(R₀+ε_p)·2^60`, beyond which the angular integral is
/// `2π r^(−α)` to within `(R₀/r)^2` and the remainder is added in closed form.
pub fn quadrature_oracle(config: &NetworkConfig, radius: Radius) -> Result<f64> {
    let alpha = config.path_loss;
    let gamma = config.gamma();
    if !(alpha > 2.0) {
        return Err(Error::domain("path loss must exceed 2"));
    }
    let scale = config.density * config.power_coefficient();
    if scale == 0.0 {
        return Ok(0.0);
    }
    let r0 = config.per_radius;
    let start = r0 + config.guard_band;
    let end = match radius {
        Radius::Finite(r) => {
            if !(r > start) {
                return Err(Error::domain("network radius must exceed R₀+ε_p"));
            }
            r
        }
        Radius::Infinite => {
            if !(alpha - gamma > 2.0) {
                return Err(Error::domain("infinite network needs α − γ > 2"));
            }
            start * 2f64.powi(INFINITE_PANELS)
        }
    };
    let mut edges = vec![start];
    while *edges.last().unwrap() * 2.0 < end {
        let next = edges.last().unwrap() * 2.0;
        edges.push(next);
    }
    edges.push(end);
    let panels = edges.len() - 1;
    let tol = Tolerance::abs(ORACLE_TOLERANCE / scale / (panels as f64 + 1.0)).with_rel(1e-13);
    let inner_err = std::cell::Cell::new(None);
    let integrand = |r: f64| match angular_integral(r, r0, alpha) {
        Ok(v) => r.powf(gamma + 1.0) * v,
        Err(e) => {
            inner_err.set(Some(e.to_string()));
            f64::NAN
        }
    };
    let mut total = 0.0;
    for w in edges.windows(2) {
        let q = integrate(integrand, w[0], w[1], tol).map_err(|e| match inner_err.take() {
            Some(inner) => Error::Numeric {
                message: inner,
                achieved: f64::NAN,
            },
            None => e,
        })?;
        total += q.value;
    }
    if radius == Radius::Infinite {
        let e = alpha - gamma - 2.0;
        total += 2.0 * PI * end.powf(-e) / e;
    }
    Ok(scale * total)
}

/// Closed-form values of `A(α) = ∫_{−π/2}^{π/2} cos^(α−2) φ dφ` for integer α.
fn a_alpha_table(k: i64) -> Option<f64> {
    Some(match k {
        2 => PI,
        3 => 2.0,
        4 => PI / 2.0,
        5 => 4.0 / 3.0,
        6 => 3.0 * PI / 8.0,
        7 => 16.0 / 15.0,
        8 => 5.0 * PI / 16.0,
        9 => 32.0 / 35.0,
        10 => 35.0 * PI / 128.0,
        _ => return None,
    })
}

/// `A(α)` by adaptive quadrature. The substitution `φ = π/2 − w²` removes
/// the endpoint singularity of the derivative for `2 < α < 3`.
pub fn a_alpha_quadrature(alpha: f64) -> Result<f64> {
    if !(alpha >= 2.0) {
        return Err(Error::domain(format!("A(α) needs α ≥ 2, got {alpha}")));
    }
    let p = alpha - 2.0;
    let q = integrate(
        |w: f64| (w * w).sin().powf(p) * w,
        0.0,
        (PI / 2.0).sqrt(),
        Tolerance::abs(1e-14).with_rel(1e-14),
    )?;
    Ok(4.0 * q.value)
}

/// `A(α)`: exact table values for integer `α` in `[2, 10]`, quadrature
/// otherwise.
pub fn a_alpha(alpha: f64) -> Result<f64> {
    if !(alpha >= 2.0) {
        return Err(Error::domain(format!("A(α) needs α ≥ 2, got {alpha}")));
    }
    match as_integer(alpha).and_then(a_alpha_table) {
        Some(v) => Ok(v),
        None => a_alpha_quadrature(alpha),
    }
}

/// All closed-form bounds at one parameter point.
pub fn bound_set(config: &NetworkConfig, radius: Radius) -> Result<BoundSet> {
    let exact = match exact_interference_alpha4(config, radius) {
        Ok(v) => Some(v),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(BoundSet {
        lb1: lower_bound_1(config, radius)?,
        lb2: lower_bound_2(config, radius)?,
        ub: upper_bound(config, radius)?,
        exact_alpha4: exact,
        finite_r: radius != Radius::Infinite,
        gamma_used: config.gamma(),
    })
}

/// The three comparison figures: path loss 3, 4 and 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Alpha3,
    Alpha4,
    Alpha5,
}

impl Figure {
    pub fn alpha(self) -> f64 {
        match self {
            Figure::Alpha3 => 3.0,
            Figure::Alpha4 => 4.0,
            Figure::Alpha5 => 5.0,
        }
    }
}

/// Configuration used by the figures: `λ = 1`, `P = 1`, `ε_p = 2`.
pub fn figure_config(alpha: f64, r0: f64) -> NetworkConfig {
    NetworkConfig {
        density: 1.0,
        cognitive_power: 1.0,
        guard_band: 2.0,
        per_radius: r0,
        path_loss: alpha,
        ..Default::default()
    }
}

/// Bound curves over `R₀` for an infinite network.
///
/// Path loss 4 has columns `R0,lb1,lb2,ub,exact`; the others report the
/// quadrature oracle and the `α = 4` closed form as a reference curve:
/// `R0,lb1,lb2,ub,oracle,exact_alpha4`.
pub fn figure_table(figure: Figure, r0_grid: &[f64]) -> Result<Table> {
    let alpha = figure.alpha();
    let mut table = if figure == Figure::Alpha4 {
        Table::new(["R0", "lb1", "lb2", "ub", "exact"])
    } else {
        Table::new(["R0", "lb1", "lb2", "ub", "oracle", "exact_alpha4"])
    };
    for &r0 in r0_grid {
        let cfg = figure_config(alpha, r0);
        let b = bound_set(&cfg, Radius::Infinite)?;
        let mut row = vec![r0, b.lb1, b.lb2, b.ub];
        match b.exact_alpha4 {
            Some(x) => row.push(x),
            None => {
                row.push(quadrature_oracle(&cfg, Radius::Infinite)?);
                row.push(exact_interference_alpha4(
                    &figure_config(4.0, r0),
                    Radius::Infinite,
                )?);
            }
        }
        table.push(row);
    }
    Ok(table)
}

/// Bound set, and oracle where requested, over a grid of `(R₀, ε_p)` points.
pub fn grid_table(
    base: &NetworkConfig,
    r0_grid: &[f64],
    eps_grid: &[f64],
    radius: Radius,
    with_oracle: bool,
) -> Result<Table> {
    let mut table = Table::new(["R0", "eps_p", "lb1", "lb2", "ub", "exact_or_oracle"]);
    for &eps_p in eps_grid {
        for &r0 in r0_grid {
            let cfg = NetworkConfig {
                per_radius: r0,
                guard_band: eps_p,
                ..base.clone()
            };
            let b = bound_set(&cfg, radius)?;
            let reference = match b.exact_alpha4 {
                Some(x) => x,
                None if with_oracle => quadrature_oracle(&cfg, radius)?,
                None => f64::NAN,
            };
            table.push(vec![r0, eps_p, b.lb1, b.lb2, b.ub, reference]);
        }
    }
    Ok(table)
}
