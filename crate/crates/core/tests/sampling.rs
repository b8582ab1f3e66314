use std::f64::consts::PI;

use cognet::geometry::sample_annulus;
use cognet::interference::mc_primary_rx_interference;
use cognet::{NetworkConfig, NodeCount};
use statrs::distribution::{ChiSquared, ContinuousCDF};

const BINS: usize = 20;

fn chi_square_p(counts: &[usize], n: usize) -> f64 {
    let expected = n as f64 / counts.len() as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    1.0 - ChiSquared::new((counts.len() - 1) as f64)
        .unwrap()
        .cdf(stat)
}

#[test]
fn annulus_is_uniform_in_angle_and_area() {
    let (inner, outer) = (1.5, 12.0);
    let n = 100_000;
    let pts = sample_annulus(n, inner, outer, 2718).unwrap();
    let mut angle = [0usize; BINS];
    let mut radial = [0usize; BINS];
    for p in &pts {
        let t = p.y.atan2(p.x).rem_euclid(2.0 * PI);
        angle[((t / (2.0 * PI) * BINS as f64) as usize).min(BINS - 1)] += 1;
        // Equal-area radial bins: r² is uniform on [a², b²].
        let u = (p.norm().powi(2) - inner * inner) / (outer * outer - inner * inner);
        radial[((u * BINS as f64) as usize).min(BINS - 1)] += 1;
    }
    let (pa, pr) = (chi_square_p(&angle, n), chi_square_p(&radial, n));
    assert!(pa > 0.01, "angular p-value {pa}");
    assert!(pr > 0.01, "radial p-value {pr}");
}

#[test]
fn primary_rx_estimate_does_not_depend_on_the_seed() {
    let cfg = NetworkConfig::default();
    let estimates: Vec<_> = (0..10)
        .map(|s| mc_primary_rx_interference(&cfg, NodeCount::Poisson, 1000, 100 + s).unwrap())
        .collect();
    let pooled = estimates.iter().map(|e| e.mean).sum::<f64>() / estimates.len() as f64;
    for e in &estimates {
        assert!(
            e.z_score(pooled) < 3.0,
            "mean {} pooled {pooled} se {}",
            e.mean,
            e.stderr
        );
    }
}
