//! Todd-Coxeter enumeration under both strategies, and the regular
//! representation of a finite presentation.
//!
//! Run with `cargo run --release --example coset_enumeration`.

use std::time::Instant;

use edlab::fp::{parse_presentation, regular_representation, todd_coxeter};
use edlab::{Config, Strategy};

fn main() -> edlab::Result<()> {
    let config = Config::default();
    let presentations = [
        "<a | a^30>",
        "<a,b | a^3, b^2, (ab)^2>",
        "<a,b | a^4 = b^2 = (ab)^2>",
        "<a,b | a^6 = b^2 = (ab)^2>",
        "<a,b | a^2, b^3, (ab)^4>",
        "<a,b | a^2, b^3, (ab)^5>",
        "<a,b | a^8, b^2, b a b^-1 = a^3>",
    ];
    for text in presentations {
        let p = parse_presentation(text)?;
        for strategy in [Strategy::Hlt, Strategy::Felsch] {
            let start = Instant::now();
            let table = todd_coxeter(&p, &[], config.caps.coset_rows, strategy)?;
            table.verify()?;
            println!("{text:<36} {strategy:?}: index {:>3} ({:.2?})", table.index(), start.elapsed());
        }
    }

    let p = parse_presentation("<a,b | a^4 = b^2 = (ab)^2>")?;
    let rep = regular_representation(&p, &config)?;
    let g = &rep.group;
    println!("Q(2) from its presentation: order {}, center {}, exponent {}", g.order(), g.center().order(), g.exponent());
    println!("generator images {:?}", rep.generator_images);
    Ok(())
}
