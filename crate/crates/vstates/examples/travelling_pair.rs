//! Counter-rotating travelling pair of Euler annuli.
use vstates::oracle::stationarity_residual;
use vstates::{newton_solve, FourierPair, PatchConfig, SolveOptions};

fn main() -> vstates::Result<()> {
    let opts = SolveOptions { order_j: 32, grid_m: 256, ..Default::default() };
    for eps in [0.02, 0.05, 0.08] {
        let cfg = PatchConfig::travelling(0.0, 0.5, 0.5, 1.0, eps);
        let sol = newton_solve(&cfg, &FourierPair::zeros(opts.order_j), &opts)?;
        let defect = stationarity_residual(&sol, 32)?.max;
        println!(
            "eps {eps}: W = {:.12}, W - W* = {:+.3e}, oracle defect {defect:.2e}",
            sol.speed,
            sol.speed - sol.speed_star
        );
    }
    Ok(())
}
