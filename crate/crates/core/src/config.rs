//! Scenario parameters shared by every experiment.
//!
//! All lengths share one abstract unit and the channel constant is fixed at 1,
//! so a received power is simply `P / d^alpha`. A configuration is usually
//! loaded from a flat TOML file whose keys match the serialized field names
//! below; every key is optional and unknown keys are rejected.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum distance between a cognitive transmitter and its own receiver.
///
/// Only interfering transmitters are bound by the protected radius, so the own
/// link needs a separate floor to keep the SINR finite.
pub const MIN_PAIR_DISTANCE: f64 = 1e-3;

/// Tolerance used to decide that a real exponent is an integer.
pub const INTEGER_TOLERANCE: f64 = 1e-12;

/// Returns `Some(k)` when `x` is within [`INTEGER_TOLERANCE`] of the integer `k`.
pub fn as_integer(x: f64) -> Option<i64> {
    let r = x.round();
    if (x - r).abs() < INTEGER_TOLERANCE && r.abs() < 1e15 {
        Some(r as i64)
    } else {
        None
    }
}

/// Outer network radius: a finite length or the infinite-network limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Radius {
    Finite(f64),
    Infinite,
}

impl Radius {
    /// `R^-e`, which is 0 for an infinite network when `e > 0`.
    pub fn inv_pow(self, e: f64) -> f64 {
        match self {
            Radius::Finite(r) => r.powf(-e),
            Radius::Infinite => 0.0,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Radius::Finite(r) => Some(r),
            Radius::Infinite => None,
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Radius {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "inf" | "infinity" | "Infinity" => Ok(Radius::Infinite),
            t => t.parse::<f64>().map_err(|e| e.to_string()).and_then(|r| {
                if r.is_infinite() {
                    Ok(Radius::Infinite)
                } else if r > 0.0 {
                    Ok(Radius::Finite(r))
                } else {
                    Err(format!("radius must be positive, got {r}"))
                }
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum PowerMode {
    #[default]
    #[serde(alias = "constant_power", alias = "constant")]
    ConstantPower,
    /// Transmit power `P_c * r^gamma`, where `r` is the distance to the
    /// central primary transmitter.
    #[serde(alias = "distance_scaled_power", alias = "scaled")]
    DistanceScaledPower,
}

/// What happens to a cognitive receiver drawn outside the network disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EdgePolicy {
    /// Redraw until the receiver lies inside the network disc of radius R.
    #[default]
    Clip,
    /// Accept receivers outside the network disc.
    WrapNone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum LogBase {
    #[default]
    #[serde(alias = "2")]
    Two,
    #[serde(alias = "e")]
    Natural,
}

impl LogBase {
    /// `log(1 + x)` in this base.
    pub fn log1p(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.ln_1p() / std::f64::consts::LN_2,
            LogBase::Natural => x.ln_1p(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NetworkConfig {
    #[serde(rename = "network_radius_R")]
    pub network_radius: f64,
    #[serde(rename = "per_radius_R0")]
    pub per_radius: f64,
    #[serde(rename = "guard_band_eps_p")]
    pub guard_band: f64,
    #[serde(rename = "rx_protect_eps_c")]
    pub rx_protect: f64,
    #[serde(rename = "density_lambda")]
    pub density: f64,
    #[serde(rename = "path_loss_alpha")]
    pub path_loss: f64,
    #[serde(rename = "cognitive_power_P")]
    pub cognitive_power: f64,
    #[serde(rename = "cognitive_power_Pc")]
    pub cognitive_power_coeff: f64,
    #[serde(rename = "power_exponent_gamma")]
    pub power_exponent: f64,
    #[serde(rename = "primary_power_P0")]
    pub primary_power: f64,
    #[serde(rename = "noise_sigma2")]
    pub noise: f64,
    /// Explicit primary outage rate. Mutually exclusive with `eta_fraction`.
    #[serde(rename = "outage_rate_C0", skip_serializing_if = "Option::is_none")]
    pub outage_rate: Option<f64>,
    #[serde(rename = "outage_prob_beta")]
    pub outage_prob: f64,
    /// Fraction of the interference-free capacity to guarantee.
    #[serde(rename = "eta_fraction", skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    /// Maximum tx-rx distance (constant mode) or the coefficient `K_d` of the
    /// growth law `D_max <= K_d r^(gamma/alpha)` (scaled mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dmax: Option<f64>,
    pub mode: PowerMode,
    /// Nearest-neighbour spacing of a hexagonal primary layout. When absent a
    /// single primary sits at the origin.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primary_spacing: Option<f64>,
    pub edge_policy: EdgePolicy,
    pub log_base: LogBase,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self {
            network_radius: 10.0,
            per_radius: 2.0,
            guard_band: 2.0,
            rx_protect: 0.5,
            density: 1.0,
            path_loss: 4.0,
            cognitive_power: 1.0,
            cognitive_power_coeff: 1.0,
            power_exponent: 0.0,
            primary_power: 100.0,
            noise: 1.0,
            outage_rate: None,
            outage_prob: 0.1,
            eta: None,
            dmax: None,
            mode: PowerMode::ConstantPower,
            primary_spacing: None,
            edge_policy: EdgePolicy::Clip,
            log_base: LogBase::Two,
        }
    }
}

/// Outage rate used when neither `outage_rate_C0` nor `eta_fraction` is set.
pub const DEFAULT_OUTAGE_RATE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    NonFinite,
    PathLossAboveTwo,
    GammaNonNegative,
    GammaBelowAlphaMinusTwo,
    NetworkRadiusPositive,
    PerRadiusPositive,
    GuardBandPositive,
    RxProtectPositive,
    ProtectBelowPerRadius,
    NetworkBeyondGuard,
    DensityPositive,
    CognitivePowerPositive,
    PrimaryPowerPositive,
    NoisePositive,
    OutageProbabilityOpen,
    OutageRateNonNegative,
    EtaInUnitInterval,
    OutageSpecifiedTwice,
    DmaxPositive,
    PerRadiusAboveOneWhenScaled,
    PrimarySpacing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub rule: Rule,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn check(&mut self, ok: bool, rule: Rule, message: &str) {
        if !ok {
            self.violations.push(Violation {
                rule,
                message: message.to_string(),
            });
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<_> = self.violations.iter().map(|v| v.message.as_str()).collect();
        f.write_str(&msgs.join("; "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    /// Expected number of cognitive transmitters around a single central PER.
    pub expected_nodes: f64,
    /// Interference-free primary capacity `log2(1 + P0/sigma^2)`.
    pub capacity: f64,
    pub outage_rate: f64,
}

impl NetworkConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Applies a single `key = value` override using the file syntax.
    pub fn set(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected key=value, got `{assignment}`")))?;
        let mut table: toml::Table =
            toml::from_str(&self.to_toml_string()).map_err(|e| Error::Config(e.to_string()))?;
        let key = key.trim();
        let raw = value.trim();
        // Bare words such as `clip` are strings; everything else parses as TOML.
        let parsed: toml::Value = match toml::from_str::<toml::Table>(&format!("v = {raw}")) {
            Ok(mut t) => t.remove("v").expect("key present"),
            Err(_) => toml::Value::String(raw.to_string()),
        };
        table.insert(key.to_string(), parsed);
        *self = table
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        Ok(())
    }

    /// Checks every admissibility rule and reports each violated one once.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let scaled = self.mode == PowerMode::DistanceScaledPower;
        let scalars = [
            self.network_radius,
            self.per_radius,
            self.guard_band,
            self.rx_protect,
            self.density,
            self.path_loss,
            self.cognitive_power,
            self.cognitive_power_coeff,
            self.power_exponent,
            self.primary_power,
            self.noise,
            self.outage_prob,
        ];
        let optionals = [self.outage_rate, self.eta, self.dmax, self.primary_spacing];
        r.check(
            scalars.iter().all(|x| x.is_finite())
                && optionals.iter().flatten().all(|x| x.is_finite()),
            Rule::NonFinite,
            "all parameters must be finite",
        );
        r.check(
            self.path_loss > 2.0,
            Rule::PathLossAboveTwo,
            "path loss must exceed 2",
        );
        r.check(
            self.power_exponent >= 0.0,
            Rule::GammaNonNegative,
            "power exponent γ must be non-negative",
        );
        if scaled {
            r.check(
                self.power_exponent < self.path_loss - 2.0,
                Rule::GammaBelowAlphaMinusTwo,
                "γ < α−2 required",
            );
            r.check(
                self.per_radius > 1.0,
                Rule::PerRadiusAboveOneWhenScaled,
                "R₀ must exceed 1 with distance-scaled power",
            );
        }
        r.check(
            self.network_radius > 0.0,
            Rule::NetworkRadiusPositive,
            "network radius R must be positive",
        );
        r.check(
            self.per_radius > 0.0,
            Rule::PerRadiusPositive,
            "exclusive-region radius R₀ must be positive",
        );
        r.check(
            self.guard_band > 0.0,
            Rule::GuardBandPositive,
            "guard band ε_p must be positive",
        );
        r.check(
            self.rx_protect > 0.0,
            Rule::RxProtectPositive,
            "protected radius ε_c must be positive",
        );
        r.check(
            self.rx_protect < self.per_radius,
            Rule::ProtectBelowPerRadius,
            "protected radius ε_c must be smaller than R₀",
        );
        r.check(
            self.network_radius > self.per_radius + self.guard_band,
            Rule::NetworkBeyondGuard,
            "network radius R must exceed R₀+ε_p",
        );
        r.check(
            self.density > 0.0,
            Rule::DensityPositive,
            "density λ must be positive",
        );
        r.check(
            self.cognitive_power > 0.0 && self.cognitive_power_coeff > 0.0,
            Rule::CognitivePowerPositive,
            "cognitive powers P and P_c must be positive",
        );
        r.check(
            self.primary_power > 0.0,
            Rule::PrimaryPowerPositive,
            "primary power P₀ must be positive",
        );
        r.check(
            self.noise > 0.0,
            Rule::NoisePositive,
            "noise power σ² must be positive",
        );
        r.check(
            self.outage_prob > 0.0 && self.outage_prob < 1.0,
            Rule::OutageProbabilityOpen,
            "outage probability β must lie in (0,1)",
        );
        r.check(
            self.outage_rate.is_none_or(|c| c >= 0.0),
            Rule::OutageRateNonNegative,
            "outage rate C₀ must be non-negative",
        );
        r.check(
            self.eta.is_none_or(|e| (0.0..=1.0).contains(&e)),
            Rule::EtaInUnitInterval,
            "η must lie in [0,1]",
        );
        r.check(
            !(self.outage_rate.is_some() && self.eta.is_some()),
            Rule::OutageSpecifiedTwice,
            "set only one of outage_rate_C0 and eta_fraction",
        );
        r.check(
            self.dmax.is_none_or(|d| d > 0.0),
            Rule::DmaxPositive,
            "dmax must be positive",
        );
        r.check(
            self.primary_spacing
                .is_none_or(|s| s >= 2.0 * self.per_radius),
            Rule::PrimarySpacing,
            "primary spacing must be at least 2R₀ so exclusive regions do not overlap",
        );
        r
    }

    /// Returns the config unchanged when admissible, otherwise a config error.
    pub fn validated(&self) -> Result<&Self> {
        let report = self.validate();
        if report.is_admissible() {
            Ok(self)
        } else {
            Err(Error::Config(report.to_string()))
        }
    }

    pub fn capacity(&self) -> f64 {
        (self.primary_power / self.noise).ln_1p() / std::f64::consts::LN_2
    }

    /// Effective primary outage rate `C₀`.
    pub fn outage_rate(&self) -> f64 {
        match (self.eta, self.outage_rate) {
            (Some(eta), _) => eta * self.capacity(),
            (None, Some(c0)) => c0,
            (None, None) => DEFAULT_OUTAGE_RATE,
        }
    }

    /// Maximum tx-rx distance in constant mode, `K_d` in scaled mode.
    pub fn dmax_or_default(&self) -> f64 {
        self.dmax.unwrap_or(match self.mode {
            PowerMode::ConstantPower => 5.0 * self.rx_protect,
            PowerMode::DistanceScaledPower => 1.0,
        })
    }

    /// Maximum tx-rx distance for a transmitter at distance `r` from the
    /// central primary.
    pub fn dmax_at(&self, r: f64) -> f64 {
        let d = self.dmax_or_default();
        match self.mode {
            PowerMode::ConstantPower => d,
            PowerMode::DistanceScaledPower => d * r.powf(self.power_exponent / self.path_loss),
        }
    }

    /// Exponent that governs aggregate interference: `alpha - gamma` in scaled
    /// mode, `alpha` otherwise.
    pub fn effective_path_loss(&self) -> f64 {
        self.path_loss - self.gamma()
    }

    /// `gamma` in scaled mode, 0 in constant mode.
    pub fn gamma(&self) -> f64 {
        match self.mode {
            PowerMode::ConstantPower => 0.0,
            PowerMode::DistanceScaledPower => self.power_exponent,
        }
    }

    /// `P` in constant mode, `P_c` in scaled mode.
    pub fn power_coefficient(&self) -> f64 {
        match self.mode {
            PowerMode::ConstantPower => self.cognitive_power,
            PowerMode::DistanceScaledPower => self.cognitive_power_coeff,
        }
    }

    /// Network radius holding `n` expected cognitive users at fixed density
    /// around a single central PER.
    pub fn radius_for_count(&self, n: f64) -> f64 {
        let inner = self.per_radius + self.guard_band;
        (n / (self.density * PI) + inner * inner).sqrt()
    }

    pub fn derived_quantities(&self) -> DerivedQuantities {
        let inner = self.per_radius + self.guard_band;
        DerivedQuantities {
            expected_nodes: self.density * PI * (self.network_radius.powi(2) - inner.powi(2)),
            capacity: self.capacity(),
            outage_rate: self.outage_rate(),
        }
    }
}
