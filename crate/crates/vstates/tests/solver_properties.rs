use std::f64::consts::PI;

use vstates::contour::{FourierPair, PatchConfig};
use vstates::error::Error;
use vstates::quadrature::PeriodicGrid;
use vstates::solver::{
    continuation, eps_ladder, mirror_coefficients, newton_solve, recheck, speed_select, SolveOptions,
};

fn opts() -> SolveOptions {
    SolveOptions { order_j: 12, grid_m: 96, ..Default::default() }
}

#[test]
fn solutions_recheck_on_fresh_grid() {
    let o = opts();
    for cfg in [
        PatchConfig::corotating(0.0, 3, 0.5, 0.4, 1.0, 0.04),
        PatchConfig::corotating(0.5, 2, 0.0, 0.3, 1.0, 0.03),
        PatchConfig::travelling(0.0, 0.5, 0.5, 1.0, 0.04),
    ] {
        let sol = newton_solve(&cfg, &FourierPair::zeros(12), &o).unwrap();
        assert!(sol.residual_norm <= o.tol);
        assert!(recheck(&sol, 2 * o.grid_m).unwrap() < 2.0 * o.tol, "{cfg:?}");
        assert_eq!(sol.f.link_defect(&cfg), 0.0);
    }
}

#[test]
fn mirror_reparameterization() {
    let o = opts();
    for alpha in [0.0, 0.5] {
        let cfg = PatchConfig::corotating(alpha, 2, 0.5, 0.5, 1.0, 0.04);
        let plus = newton_solve(&cfg, &FourierPair::zeros(12), &o).unwrap();
        let minus = newton_solve(&cfg.with_eps(-0.04), &FourierPair::zeros(12), &o).unwrap();
        let m = mirror_coefficients(&plus.f);
        let dev = m.a.iter().zip(&minus.f.a).chain(m.b.iter().zip(&minus.f.b)).map(|(x, y)| (x - y).abs());
        assert!(dev.fold(0.0, f64::max) < 1e-9);
        assert!((plus.speed - minus.speed).abs() < 1e-12);
    }
}

#[test]
fn newton_tail_is_quadratic() {
    let cfg = PatchConfig::corotating(0.0, 2, 0.5, 0.5, 1.0, 0.05);
    let o = SolveOptions { tol: 1e-13, ..opts() };
    let sol = newton_solve(&cfg, &FourierPair::zeros(12), &o).unwrap();
    let h = &sol.diagnostics.history;
    assert!(h.len() >= 3);
    assert!(sol.diagnostics.quadratic_constant.is_some());
}

#[test]
fn continuation_path_is_smooth() {
    let cfg = PatchConfig::corotating(0.0, 2, 0.5, 0.5, 1.0, 0.05);
    let path = continuation(&cfg, &eps_ladder(0.05, 5), &opts());
    assert!(path.failure.is_none());
    let sp: Vec<f64> = path.solutions.iter().map(|s| s.speed).collect();
    assert!(sp.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn travelling_speed_selection_limit() {
    let grid = PeriodicGrid::new(64).unwrap();
    let cfg = PatchConfig::travelling(0.0, 0.5, 0.5, 1.0, 1e-6);
    let fit = speed_select(&cfg, &FourierPair::zeros(4), &grid).unwrap();
    assert!((fit.speed - 1.0 / (4.0 * PI)).abs() < 1e-5);
}

#[test]
fn guards_and_errors() {
    let o = opts();
    let cfg = PatchConfig::corotating(0.0, 2, 0.5, 0.5, 1.0, 0.2);
    assert!(matches!(newton_solve(&cfg, &FourierPair::zeros(12), &o), Err(Error::Config { .. })));
    let big = SolveOptions { allow_large_eps: true, max_iter: 1, ..opts() };
    match newton_solve(&cfg.with_eps(0.12), &FourierPair::zeros(12), &big) {
        Err(Error::NotConverged { best, .. }) => assert!(!best.converged),
        other => panic!("expected a non-converged report, got {other:?}"),
    }
    assert!(matches!(
        newton_solve(&cfg.with_eps(0.01), &FourierPair::zeros(5), &o),
        Err(Error::SizeMismatch { .. })
    ));
}
