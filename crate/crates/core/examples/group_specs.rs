//! Parses group expressions and prints basic invariants of each group.
//!
//! Run with `cargo run --release --example group_specs`.

use edlab::group::normal_subgroups;
use edlab::spec::{parse_subgroup, GroupSpec};
use edlab::Config;

fn main() -> edlab::Result<()> {
    let config = Config::default();
    let specs = [
        "C(12)",
        "D(4)",
        "Q(2)",
        "S(4)",
        "D(3) x C(5)",
        "perm:[(1 2 3), (1 2)(3 4)]",
        "fp:<a,b | a^8, b^2, b a b^-1 = a^3>",
    ];
    println!("{:<38} {:>4} {:>7} {:>4} {:>4} {:>4} {:>7}", "spec", "|G|", "classes", "Z", "G'", "exp", "normal");
    for text in specs {
        let spec: GroupSpec = text.parse()?;
        let g = spec.build(&config)?;
        println!(
            "{:<38} {:>4} {:>7} {:>4} {:>4} {:>4} {:>7}",
            spec.to_string(),
            g.order(),
            g.class_count(),
            g.center().order(),
            g.derived_subgroup().order(),
            g.exponent(),
            normal_subgroups(&g).len()
        );
    }

    let d8 = "D(4)".parse::<GroupSpec>()?.build(&config)?;
    for sub in ["center", "derived", "gen:[1]", "gen:[4]", "gen:[1,4]"] {
        let h = parse_subgroup(&d8, sub)?;
        println!("D(4) {sub:<10} order {} normal {}", h.order(), h.is_normal());
    }

    match "E(3)".parse::<GroupSpec>() {
        Ok(_) => unreachable!(),
        Err(e) => println!("E(3): {e}"),
    }
    Ok(())
}
