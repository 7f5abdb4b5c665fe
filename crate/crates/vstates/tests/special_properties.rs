use proptest::prelude::*;
use statrs::function::gamma::gamma as statrs_gamma;
use vstates::specialfn::{
    gamma_fn, gauss_2f1, lambda_bessel_oracle, lambda_coeff, ln_gamma, theta_coeff, theta_coeff_direct,
};

const ALPHAS: [f64; 5] = [0.25, 0.5, 1.0 - 1e-6, 1.0 + 1e-6, 1.5];

#[test]
fn theta_first_mode_is_zero_for_all_alpha() {
    for k in 1..200 {
        let a = 0.01 * k as f64;
        assert_eq!(theta_coeff(a, 1).unwrap(), 0.0, "alpha = {a}");
    }
}

#[test]
fn theta_positive_and_increasing() {
    for &a in ALPHAS.iter().chain(&[1.0]) {
        let mut prev = 0.0;
        for j in 2..=64 {
            let t = theta_coeff(a, j).unwrap();
            assert!(t > prev, "alpha = {a}, j = {j}: {t} <= {prev}");
            prev = t;
        }
    }
}

#[test]
fn lambda_decreasing_in_mode_increasing_in_b() {
    for &a in &ALPHAS {
        for &b in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            let mut prev = f64::INFINITY;
            for j in 1..=32 {
                let l = lambda_coeff(a, b, j).unwrap();
                assert!(l < prev && l > 0.0, "alpha = {a}, b = {b}, j = {j}");
                prev = l;
            }
        }
        for j in [1, 2, 5, 16] {
            let mut prev = 0.0;
            for k in 1..20 {
                let l = lambda_coeff(a, 0.05 * k as f64, j).unwrap();
                assert!(l > prev, "alpha = {a}, j = {j}, b = {}", 0.05 * k as f64);
                prev = l;
            }
        }
    }
}

#[test]
fn theta_growth_rates() {
    let t = |a: f64, j: usize| theta_coeff(a, j).unwrap();
    for &a in &[0.25, 0.5, 0.75] {
        let (t16, t32, t64) = (t(a, 16), t(a, 32), t(a, 64));
        assert!(t64 / t32 < t32 / t16 && t64 / t32 < 1.2, "alpha = {a} not saturating");
    }
    let (t16, t32, t64) = (t(1.0, 16), t(1.0, 32), t(1.0, 64));
    let (d1, d2) = (t32 - t16, t64 - t32);
    assert!((d2 / d1 - 1.0).abs() < 0.05, "log growth increments {d1} {d2}");
    for &a in &[1.25, 1.5, 1.75] {
        let (t32, t64, t128) = (t(a, 32), t(a, 64), t(a, 128));
        let rate = ((t128 - t64) / (t64 - t32)).log2();
        assert!((rate - (a - 1.0)).abs() < 0.1, "alpha = {a}: rate {rate}");
    }
}

#[test]
fn lambda_two_routes_agree_on_grid() {
    for &a in &[0.5, 1.5] {
        for &b in &[0.2, 0.5] {
            for &j in &[1, 2, 4] {
                let h = lambda_coeff(a, b, j).unwrap();
                let o = lambda_bessel_oracle(a, b, j).unwrap();
                assert!((h - o).abs() < 1e-8 * h.abs().max(1.0), "a={a} b={b} j={j}: {h} vs {o}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_matches_independent_implementation(x in 0.05f64..30.0) {
        let ours = gamma_fn(x).unwrap();
        let reference = statrs_gamma(x);
        prop_assert!((ours - reference).abs() <= 1e-12 * reference.abs());
        prop_assert!((ln_gamma(x).unwrap() - reference.ln()).abs() <= 1e-12 * reference.ln().abs().max(1.0));
    }

    #[test]
    fn hypergeometric_at_origin_is_one(a in -5.0f64..5.0, b in -5.0f64..5.0, c in 0.1f64..5.0) {
        prop_assert_eq!(gauss_2f1(a, b, c, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn hypergeometric_elementary_case(z in 1e-6f64..0.9) {
        let v = gauss_2f1(1.0, 1.0, 2.0, z).unwrap();
        let expect = -(1.0 - z).ln() / z;
        prop_assert!((v - expect).abs() < 1e-13 * expect.abs());
    }

    #[test]
    fn theta_routes_agree(alpha in 0.05f64..1.95, j in 2usize..40) {
        prop_assume!((alpha - 1.0).abs() > 1e-3);
        let t = theta_coeff(alpha, j).unwrap();
        let d = theta_coeff_direct(alpha, j).unwrap();
        prop_assert!((t - d).abs() < 1e-10 * t.abs().max(1.0));
    }
}
