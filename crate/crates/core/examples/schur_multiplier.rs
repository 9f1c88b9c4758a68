//! Schur multipliers and stem cocycles of a few small groups.
//!
//! Run with `cargo run --release --example schur_multiplier`.

use std::time::Instant;

use edlab::group::{build_dihedral, build_quaternion, build_symmetric, FiniteGroup};
use edlab::homology::{second_homology, stem_cocycle_from};
use edlab::Caps;

fn main() -> edlab::Result<()> {
    let caps = Caps::default();
    let groups: Vec<(&str, FiniteGroup)> = vec![
        ("D8", build_dihedral(4)?),
        ("Q8", build_quaternion(2)?),
        ("S4", build_symmetric(4)?),
        ("Q24", build_quaternion(6)?),
        ("D32", build_dihedral(16)?),
        ("Q32", build_quaternion(8)?),
    ];
    for (name, g) in groups {
        let start = Instant::now();
        let h2 = second_homology(&g, &caps)?;
        let f = stem_cocycle_from(&h2)?;
        println!(
            "{name:>4}  |G| = {:>2}  M(G) = {:<6}  cocycle target {}  ({:.2?})",
            g.order(),
            h2.invariants.to_string(),
            f.target,
            start.elapsed()
        );
    }
    Ok(())
}
