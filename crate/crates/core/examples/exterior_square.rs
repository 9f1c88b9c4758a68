//! Builds `G ∧ G` from its defining relations and compares its order with
//! `|M(G)| |G'|` from bar homology.
//!
//! Run with `cargo run --release --example exterior_square`.

use std::time::Instant;

use edlab::fp::{pair_product, PairKind};
use edlab::group::{build_cyclic, build_dihedral, build_quaternion, direct_product, FiniteGroup};
use edlab::homology::schur_multiplier;
use edlab::Config;

fn main() -> edlab::Result<()> {
    let mut config = Config::default();
    config.caps.fp_pair = 16;
    let c2 = build_cyclic(2)?;
    let c4 = build_cyclic(4)?;
    let v = direct_product(&c2, &c2)?.group;
    let e8 = direct_product(&v, &c2)?.group;
    let groups: Vec<(&str, FiniteGroup)> = vec![
        ("C2 x C2", v.clone()),
        ("D8", build_dihedral(4)?),
        ("Q8", build_quaternion(2)?),
        ("C2^3", e8.clone()),
        ("D12", build_dihedral(6)?),
        ("C4 x C4", direct_product(&c4, &c4)?.group),
        ("C2^4", direct_product(&e8, &c2)?.group),
        ("D16", build_dihedral(8)?),
        ("Q16", build_quaternion(4)?),
        ("D8 x C2", direct_product(&build_dihedral(4)?, &c2)?.group),
    ];
    println!("{:<8} {:>4} {:>8} {:>10} {:>10}", "group", "|G|", "|G∧G|", "|M||G'|", "time");
    for (name, g) in groups {
        let start = Instant::now();
        let w = g.whole();
        let e = pair_product(&g, &w, &w, PairKind::Exterior, &config)?;
        let expected = schur_multiplier(&g, &config.caps)?.order() as usize * g.derived_subgroup().order();
        println!(
            "{name:<8} {:>4} {:>8} {:>10} {:>10.2?}   presentation {:?}",
            g.order(),
            e.order(),
            expected,
            start.elapsed(),
            e.presentation_size
        );
    }
    Ok(())
}
