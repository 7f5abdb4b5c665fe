//! Quadrature check of the kernel Fourier identities.
use vstates::oracle::identity_suite;

fn main() -> vstates::Result<()> {
    let report = identity_suite(&[0.3, 0.5, 0.7], 8)?;
    for e in &report.entries {
        println!(
            "{:<12} b={:<5} m={} numeric {:+.15e} closed form {:+.15e}{}",
            e.kind.as_str(),
            e.b.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
            e.m,
            e.numeric,
            e.closed_form,
            if e.asserted { "" } else { "  (reported only)" }
        );
    }
    println!("max asserted error {:.2e}", report.max_asserted_error());
    Ok(())
}
