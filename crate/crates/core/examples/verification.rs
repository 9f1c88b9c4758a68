//! Runs a few verification suites and prints a verdict count per check.
//!
//! Run with `cargo run --release --example verification -- [suite ...]`.

use std::collections::BTreeMap;

use edlab::verify::{exit_code, run_suites, Scope, Verdict};
use edlab::Config;

fn main() -> edlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let names: Vec<&str> = if args.is_empty() {
        vec!["theorem-t1", "cor-c2", "prop-p3-quotient", "dwedge-vs-d"]
    } else {
        args.iter().map(String::as_str).collect()
    };
    let reports = run_suites(&names, &Scope::new(12, 4, Config::default()))?;
    let mut counts: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for r in &reports {
        counts.entry(&r.check).or_default()[r.verdict as usize] += 1;
    }
    println!("{:<28} {:>5} {:>8} {:>5}", "check", "pass", "finding", "fail");
    for (check, [p, f, x]) in &counts {
        println!("{check:<28} {p:>5} {f:>8} {x:>5}");
    }
    if let Some(r) = reports.iter().find(|r| r.verdict != Verdict::Pass) {
        println!("\nfirst non-passing report: {} {} [{}]", r.verdict, r.check, r.instance);
        for w in r.witnesses.iter().take(3) {
            println!("  {w}");
        }
    }
    println!("exit code would be {}", exit_code(&reports));
    Ok(())
}
