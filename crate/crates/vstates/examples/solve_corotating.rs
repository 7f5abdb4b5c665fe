//! Newton solve of a two-fold co-rotating doubly connected Euler patch.
use vstates::contour::boundary_curves;
use vstates::{newton_solve, FourierPair, PatchConfig, SolveOptions};

fn main() -> vstates::Result<()> {
    let cfg = PatchConfig::corotating(0.0, 2, 0.5, 0.5, 1.0, 0.05);
    let opts = SolveOptions { order_j: 32, grid_m: 256, ..Default::default() };
    let sol = newton_solve(&cfg, &FourierPair::zeros(opts.order_j), &opts)?;
    println!("omega = {:.15}, omega* = {:.15}", sol.speed, sol.speed_star);
    println!("residual {:.2e} after {} iterations", sol.residual_norm, sol.newton_iters);
    println!("history {:?}", sol.diagnostics.history);
    for k in 0..4 {
        println!("a_{} = {:+.3e}  b_{} = {:+.3e}", k + 1, sol.f.a[k], k + 1, sol.f.b[k]);
    }
    let curves = boundary_curves(&cfg, &sol.f, 8)?;
    for c in curves.iter().filter(|c| c.copy == 0) {
        println!("component {} first point {:?}", c.component, c.points[0]);
    }
    Ok(())
}
