//! `H ∧ K` for normal subgroups built from relations, set against the
//! pairing evaluated in `G ∧ G` through a stem cover.
//!
//! Run with `cargo run --release --example pair_products`.

use edlab::cover::build_cover;
use edlab::exterior::exterior_degree_of;
use edlab::fp::{pair_product, PairKind};
use edlab::group::normal_subgroups;
use edlab::spec::parse_group;
use edlab::verify::describe_subgroup;
use edlab::Config;

fn main() -> edlab::Result<()> {
    let config = Config::default();
    for text in ["C(4)", "D(4)", "Q(2)", "D(3)"] {
        let g = parse_group(text, &config)?;
        let cover = build_cover(&g, &config.caps)?;
        let normals = normal_subgroups(&g);
        println!("{text}: {} normal subgroups, |G∧G| = {}", normals.len(), cover.exterior_square_order());
        for h in &normals {
            for k in &normals {
                if !h.join(k)?.is_whole() {
                    continue;
                }
                let fp = pair_product(&g, h, k, PairKind::Exterior, &config)?;
                let tensor = pair_product(&g, h, k, PairKind::Tensor, &config)?;
                let via_fp = fp.degree(1)?;
                let via_cover = exterior_degree_of(&cover.pairing(h, k)?, 1)?;
                println!(
                    "  H={:<10} K={:<10} |H⊗K| = {:>2} |H∧K| = {:>2} |[H,K]| = {} d^∧ in H∧K {:<6} in G∧G {}",
                    describe_subgroup(h),
                    describe_subgroup(k),
                    tensor.order(),
                    fp.order(),
                    fp.kappa_image.order(),
                    via_fp.to_string(),
                    via_cover
                );
            }
        }
    }
    Ok(())
}
