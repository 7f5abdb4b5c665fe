//! Independent Biot-Savart check of a converged solution.
use vstates::oracle::{stationarity_at_speed, stationarity_residual};
use vstates::{newton_solve, FourierPair, PatchConfig, SolveOptions};

fn main() -> vstates::Result<()> {
    let cfg = PatchConfig::corotating(0.0, 2, 0.5, 0.5, 1.0, 0.05);
    let opts = SolveOptions { order_j: 32, grid_m: 256, ..Default::default() };
    let sol = newton_solve(&cfg, &FourierPair::zeros(opts.order_j), &opts)?;
    let good = stationarity_residual(&sol, 64)?;
    println!("solution speed: max defect {:.3e}, rms {:.3e}", good.max, good.rms);
    for factor in [0.5, 1.01, 2.0] {
        let r = stationarity_at_speed(&cfg, &sol.f, factor * sol.speed, 64)?;
        println!("speed x {factor}: max defect {:.3e}", r.max);
    }
    Ok(())
}
