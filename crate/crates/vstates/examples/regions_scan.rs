//! Inner radii for which the linearized operator is invertible.
use vstates::spectral::{b_grid, invertible_b_scan};

fn main() -> vstates::Result<()> {
    let grid = b_grid(0.001, 0.99, 0.001);
    for (alpha, gamma) in [(0.0, 0.5), (0.0, 2.0), (0.0, 0.0), (0.5, 0.0), (1.0, 0.0)] {
        let scan = invertible_b_scan(alpha, gamma, 64, &grid)?;
        let nonsingular = scan.rows.iter().filter(|r| r.min_det.abs() > 1e-10).count();
        println!(
            "alpha {alpha} gamma {gamma}: admissible {:?}; determinants nonzero up to j = 64 at {nonsingular} of {} grid points",
            scan.intervals,
            scan.rows.len()
        );
    }
    Ok(())
}
