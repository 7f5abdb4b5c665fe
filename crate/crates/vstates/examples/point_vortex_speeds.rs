//! Point-vortex limits and the first few linearized blocks.
use vstates::spectral::{m_block, omega_star, w_star};

fn main() -> vstates::Result<()> {
    for alpha in [0.0, 0.5, 1.0] {
        for n in 2..=5 {
            println!("alpha {alpha} N {n}: omega* = {:.12}", omega_star(alpha, n, 1.0)?);
        }
        println!("alpha {alpha} pair: W* = {:.12}", w_star(alpha, 1.0)?);
    }
    for j in 1..=4 {
        let m = m_block(0.0, 0.5, 0.5, j)?;
        println!("M_{j} = {:?}, det {:.6}", m.entries, m.det());
    }
    Ok(())
}
