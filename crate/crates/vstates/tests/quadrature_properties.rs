use std::f64::consts::PI;

use proptest::prelude::*;
use vstates::quadrature::{adaptive_oracle, convolve_singular, mean_integral, singular_fourier_weights, PeriodicGrid};

fn trig(coeffs: &[(f64, f64)], x: f64) -> f64 {
    coeffs.iter().enumerate().map(|(j, (a, b))| a * (j as f64 * x).cos() + b * (j as f64 * x).sin()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mean_integral_exact_for_trig_polynomials(
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..32),
    ) {
        let grid = PeriodicGrid::new(64).unwrap();
        let v = grid.sample(|x| trig(&coeffs, x));
        prop_assert!((mean_integral(&v) - coeffs[0].0).abs() < 1e-14);
    }

    #[test]
    fn convolution_matches_adaptive_oracle(
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..9),
        which in 0usize..3,
        node in 0usize..32,
    ) {
        let alpha = [0.5, 1.0, 1.5][which];
        let grid = PeriodicGrid::new(32).unwrap();
        let w = singular_fourier_weights(alpha, 32).unwrap();
        let g = |x: f64| trig(&coeffs, x);
        let conv = convolve_singular(&w, &grid.sample(g)).unwrap();
        let x = grid.nodes()[node];
        let kernel = |t: f64| (4.0 * (0.5 * t).sin().powi(2)).powf(-0.5 * alpha);
        let sym = |t: f64| -> f64 {
            coeffs
                .iter()
                .enumerate()
                .map(|(j, (a, b))| {
                    let j = j as f64;
                    -2.0 * (0.5 * j * t).sin().powi(2) * (a * (j * x).cos() + b * (j * x).sin())
                })
                .sum()
        };
        let reference = adaptive_oracle(
            |t| {
                let tt = if t > PI { t - 2.0 * PI } else { t };
                if tt == 0.0 {
                    return 0.0;
                }
                kernel(tt) * sym(tt)
            },
            Some(0.0),
            1e-12,
        )
        .unwrap();
        let ours = conv[node] - w.weights[0] * g(x);
        prop_assert!((ours - reference).abs() < 1e-8, "alpha {} ours {} ref {}", alpha, ours, reference);
    }
}
