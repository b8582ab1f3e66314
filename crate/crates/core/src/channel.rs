//! Path-loss channel and the cognitive transmit-power law.

use crate::config::{as_integer, NetworkConfig, PowerMode};
use crate::error::{Error, Result};

/// Distance and the corresponding power gain `d^-alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGain {
    pub distance: f64,
    pub gain: f64,
}

impl LinkGain {
    pub fn new(distance: f64, alpha: f64) -> Result<Self> {
        Ok(Self {
            distance,
            gain: power_gain(distance, alpha)?,
        })
    }
}

/// Power gain `d^-alpha` of a link of length `d`.
pub fn power_gain(d: f64, alpha: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::domain(format!(
            "link distance must be positive, got {d}"
        )));
    }
    Ok(gain_from_dist2(d * d, alpha))
}

/// `(d^2)^(-alpha/2)` without the square root; `d2` must be positive.
#[inline]
pub fn gain_from_dist2(d2: f64, alpha: f64) -> f64 {
    match as_integer(alpha) {
        Some(4) => 1.0 / (d2 * d2),
        Some(a) if a % 2 == 0 && (2..=64).contains(&a) => d2.powi(-(a as i32) / 2),
        _ => d2.powf(-0.5 * alpha),
    }
}

/// Transmit power of a cognitive node at distance `r` from the central primary.
pub fn tx_power(r: f64, config: &NetworkConfig) -> f64 {
    match config.mode {
        PowerMode::ConstantPower => config.cognitive_power,
        PowerMode::DistanceScaledPower => {
            config.cognitive_power_coeff * r.powf(config.power_exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn worked_gains() {
        assert_eq!(power_gain(1.0, 3.7).unwrap(), 1.0);
        assert_eq!(power_gain(2.0, 4.0).unwrap(), 1.0 / 16.0);
        assert!((power_gain(0.5, 3.0).unwrap() - 8.0).abs() < 1e-12);
        assert!(power_gain(0.0, 4.0).is_err());
        assert!(power_gain(-1.0, 4.0).is_err());
        let g = LinkGain::new(3.0, 6.0).unwrap();
        assert!((g.gain * 3f64.powi(6) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn power_law() {
        let mut cfg = NetworkConfig::default();
        assert_eq!(tx_power(123.0, &cfg), 1.0);
        cfg.mode = PowerMode::DistanceScaledPower;
        cfg.power_exponent = 1.0;
        assert_eq!(tx_power(4.0, &cfg), 4.0);
        cfg.power_exponent = 0.0;
        cfg.cognitive_power_coeff = 2.5;
        assert_eq!(tx_power(7.0, &cfg), 2.5);
    }

    proptest! {
        #[test]
        fn gain_times_distance_power_is_one(d in 1e-3f64..1e3, alpha in 2.0001f64..8.0) {
            let g = power_gain(d, alpha).unwrap();
            prop_assert!((g * d.powf(alpha) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn gain_monotonicity(d in 1e-2f64..1e2, step in 1e-3f64..1.0, alpha in 2.01f64..6.0) {
            prop_assert!(power_gain(d + step, alpha).unwrap() < power_gain(d, alpha).unwrap());
            let a2 = alpha + step;
            let (g1, g2) = (power_gain(d, alpha).unwrap(), power_gain(d, a2).unwrap());
            if d > 1.0 + 1e-9 { prop_assert!(g2 < g1); }
            if d < 1.0 - 1e-9 { prop_assert!(g2 > g1); }
        }

        #[test]
        fn zero_gamma_matches_constant_mode(r in 1e-3f64..1e3, p in 1e-3f64..1e3) {
            let constant = NetworkConfig { cognitive_power: p, ..Default::default() };
            let scaled = NetworkConfig {
                mode: PowerMode::DistanceScaledPower,
                cognitive_power_coeff: p,
                power_exponent: 0.0,
                ..Default::default()
            };
            prop_assert_eq!(tx_power(r, &constant), tx_power(r, &scaled));
        }
    }
}
