use cognet::bounds::{
    bound_set, exact_interference_alpha4, lower_bound_2, quadrature_oracle, upper_bound,
    ORACLE_TOLERANCE,
};
use cognet::{NetworkConfig, PowerMode, Radius};

fn config(alpha: f64, gamma: f64, r0: f64, eps_p: f64) -> NetworkConfig {
    NetworkConfig {
        path_loss: alpha,
        power_exponent: gamma,
        mode: if gamma == 0.0 {
            PowerMode::ConstantPower
        } else {
            PowerMode::DistanceScaledPower
        },
        per_radius: r0,
        guard_band: eps_p,
        density: 1.0,
        cognitive_power: 1.0,
        cognitive_power_coeff: 1.0,
        ..Default::default()
    }
}

#[test]
fn bounds_are_ordered_on_the_grid() {
    let mut checked = 0;
    for alpha in [2.5, 3.0, 4.0, 5.0, 6.0] {
        for gamma in [0.0, 0.25, 1.0, 2.0] {
            if alpha - gamma <= 2.0 {
                continue;
            }
            for r0 in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
                for eps_p in [0.1, 0.5, 2.0, 8.0] {
                    let cfg = config(alpha, gamma, r0, eps_p);
                    for radius in [Radius::Infinite, Radius::Finite(1e3)] {
                        let b = bound_set(&cfg, radius).unwrap();
                        assert!(b.lb1 <= b.ub, "lb1 {} > ub {} at {cfg:?}", b.lb1, b.ub);
                        assert!(b.lb2 <= b.ub, "lb2 {} > ub {} at {cfg:?}", b.lb2, b.ub);
                        if alpha - gamma == 4.0 && gamma == 0.0 {
                            let exact = b.exact_alpha4.unwrap();
                            let slack = 1e-9 * exact;
                            assert!(b.lb1.max(b.lb2) <= exact + slack);
                            assert!(exact <= b.ub + slack);
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 500);
}

#[test]
fn oracle_lies_between_the_bounds() {
    let radius = Radius::Finite(1e3);
    for alpha in [3.0, 4.0, 5.0] {
        for r0 in [1.0, 2.0, 5.0, 10.0, 20.0] {
            for eps_p in [0.5, 2.0] {
                let cfg = config(alpha, 0.0, r0, eps_p);
                let b = bound_set(&cfg, radius).unwrap();
                let v = quadrature_oracle(&cfg, radius).unwrap();
                let tol = 10.0 * ORACLE_TOLERANCE;
                assert!(v >= b.lb1.max(b.lb2) - tol, "oracle {v} below {b:?}");
                assert!(v <= b.ub + tol, "oracle {v} above {b:?}");
                if alpha == 4.0 {
                    let exact = exact_interference_alpha4(&cfg, radius).unwrap();
                    assert!((v - exact).abs() <= 1e-8 * exact.max(1.0));
                }
            }
        }
    }
}

#[test]
fn oracle_bracket_alpha3_at_radius_200() {
    let cfg = config(3.0, 0.0, 2.0, 2.0);
    let radius = Radius::Finite(200.0);
    let v = quadrature_oracle(&cfg, radius).unwrap();
    let (lo, hi) = (
        lower_bound_2(&cfg, radius).unwrap(),
        upper_bound(&cfg, radius).unwrap(),
    );
    assert!(lo < v && v < hi, "{lo} < {v} < {hi}");
    // A(3) = 2, far edge at 2R₀ + ε_p = 6, network enlarged to R + R₀ = 202.
    let pi = std::f64::consts::PI;
    assert!((lo - (2.0 * (0.5 + 1.0 / 6.0) - pi / 200.0)).abs() < 1e-12);
    assert!((hi - 2.0 * pi * (0.5 - 1.0 / 202.0)).abs() < 1e-12);
}
