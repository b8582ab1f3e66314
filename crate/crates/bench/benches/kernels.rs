use std::hint::black_box;

use cognet::bounds::quadrature_oracle;
use cognet::geometry::place_network;
use cognet::interference::{lattice_interference, mc_primary_rx_draws};
use cognet::throughput::per_user_rates;
use cognet::{NetworkConfig, NodeCount, Radius};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn lattice(c: &mut Criterion) {
    let mut g = c.benchmark_group("lattice_sum");
    for k in [50usize, 200] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| lattice_interference(black_box(0.3), 0.5, 4.0, k, true).unwrap())
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("quadrature_oracle");
    for alpha in [3.0, 3.5, 4.0] {
        let cfg = NetworkConfig {
            path_loss: alpha,
            guard_band: 2.0,
            per_radius: 5.0,
            ..Default::default()
        };
        for (name, radius) in [("R1e3", Radius::Finite(1e3)), ("Rinf", Radius::Infinite)] {
            g.bench_function(format!("alpha{alpha}/{name}"), |b| {
                b.iter(|| quadrature_oracle(black_box(&cfg), radius).unwrap())
            });
        }
    }
    g.finish();
}

fn rates(c: &mut Criterion) {
    let mut g = c.benchmark_group("per_user_rates");
    g.sample_size(20);
    for n in [100usize, 400] {
        let cfg = NetworkConfig {
            network_radius: (n as f64 / std::f64::consts::PI).sqrt() + 4.0,
            ..Default::default()
        };
        let placement = place_network(&cfg, NodeCount::Fixed(n), 7).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &placement, |b, p| {
            b.iter(|| per_user_rates(black_box(p), &cfg).unwrap())
        });
    }
    g.finish();
}

fn primary_mc(c: &mut Criterion) {
    let cfg = NetworkConfig::default();
    c.bench_function("primary_rx_mc/100_trials", |b| {
        b.iter(|| mc_primary_rx_draws(&cfg, NodeCount::Poisson, 100, black_box(3)).unwrap())
    });
}

criterion_group!(benches, lattice, oracle, rates, primary_mc);
criterion_main!(benches);
