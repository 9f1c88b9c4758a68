//! Commutativity, relative, nilpotency and power commutativity degrees.
//!
//! Run with `cargo run --release --example classical_degrees`.

use edlab::degree::{commutativity_degree, nilpotency_degree, power_commutativity_degree, relative_degree, DEFAULT_TUPLE_BUDGET};
use edlab::spec::{parse_group, parse_subgroup};
use edlab::Config;

fn main() -> edlab::Result<()> {
    let config = Config::default();
    for text in ["D(4)", "Q(2)", "D(5)", "S(4)", "Q(2) x C(3)"] {
        let g = parse_group(text, &config)?;
        let whole = g.whole();
        let pc: Vec<String> =
            (1..=4).map(|m| power_commutativity_degree(m, &whole, &whole).map(|d| d.to_string())).collect::<Result<_, _>>()?;
        println!(
            "{text:<12} d = {:<6} d^(2) = {:<6} power commutativity m=1..4: {}",
            commutativity_degree(&g)?,
            nilpotency_degree(2, &whole, DEFAULT_TUPLE_BUDGET)?,
            pc.join(" ")
        );
    }

    let s4 = parse_group("S(4)", &config)?;
    let whole = s4.whole();
    for sub in ["derived", "center", "gen:[1]"] {
        let h = parse_subgroup(&s4, sub)?;
        println!("S(4) d(H,G) with H = {sub:<8} (|H| = {:>2}): {}", h.order(), relative_degree(&h, &whole)?);
    }
    Ok(())
}
