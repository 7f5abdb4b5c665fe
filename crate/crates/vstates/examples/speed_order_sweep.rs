//! Continuation in eps and the fitted order of the speed correction.
use vstates::solver::{continuation, fitted_order};
use vstates::{PatchConfig, SolveOptions};

fn main() {
    let opts = SolveOptions { order_j: 24, grid_m: 192, ..Default::default() };
    for (alpha, gamma, b, eps) in [(0.0, 0.5, 0.5, vec![0.0125, 0.025, 0.05]), (0.5, 0.0, 0.3, vec![0.01, 0.02, 0.04])] {
        let cfg = PatchConfig::corotating(alpha, 2, gamma, b, 1.0, eps[0]);
        let path = continuation(&cfg, &eps, &opts);
        if let Some((e, err)) = &path.failure {
            println!("alpha {alpha}: stopped at eps {e}: {err}");
        }
        let errs: Vec<f64> = path.solutions.iter().map(|s| (s.speed - s.speed_star).abs()).collect();
        for (s, e) in path.solutions.iter().zip(&errs) {
            println!("alpha {alpha} eps {}: |speed - speed*| = {e:.3e}", s.config.eps);
        }
        println!("alpha {alpha}: fitted order {:?}", fitted_order(&eps[..errs.len()], &errs));
    }
}
