//! Sweeps the dihedral family and writes the rows as CSV to stdout.
//!
//! Run with `cargo run --release --example family_sweep`.

use edlab::sweep::{sweep, write_csv, Family};
use edlab::Config;

fn main() -> edlab::Result<()> {
    let config = Config::default();
    let rows = sweep(Family::Dihedral, 2..=6, 1..=4, &config)?;
    write_csv(&rows, std::io::stdout().lock())?;
    let small = sweep(Family::AllSmall, 8..=8, 1..=2, &config)?;
    eprintln!("order 8:");
    for r in &small {
        eprintln!("  {:<6} m={} d={:<5} d^∧={:<5} |M|={}", r.group, r.m, r.d, r.d_wedge, r.multiplier);
    }
    Ok(())
}
