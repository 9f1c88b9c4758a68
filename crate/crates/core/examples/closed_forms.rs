//! Computed `d^∧_m` of the dihedral and quaternion families next to their
//! closed forms, with the class data of the two-sided bound.
//!
//! Run with `cargo run --release --example closed_forms`.

use edlab::cover::{build_cover, degree_via_classes};
use edlab::exterior::{closed_form_dihedral, closed_form_quaternion};
use edlab::group::{build_dihedral, build_quaternion};
use edlab::Caps;

fn main() -> edlab::Result<()> {
    let caps = Caps::default();
    for n in [3u64, 4, 6] {
        let d = build_dihedral(n as usize)?;
        let q = build_quaternion(n as usize)?;
        let (cd, cq) = (build_cover(&d, &caps)?, build_cover(&q, &caps)?);
        println!("n = {n}: |M(D_2n)| = {}, |M(Q_n)| = {}", cd.kernel().order(), cq.kernel().order());
        for m in 1..=2 * n {
            let (vd, td) = degree_via_classes(&cd, &d.whole(), &d.whole(), m)?;
            let (vq, _) = degree_via_classes(&cq, &q.whole(), &q.whole(), m)?;
            println!(
                "  m = {m:>2}  D_2n {:<6} closed {:<6}  Q_n {:<6} closed {:<6}  α = {:?}",
                vd.to_string(),
                closed_form_dihedral(n, m)?.to_string(),
                vq.to_string(),
                closed_form_quaternion(n, m)?.to_string(),
                td.alpha
            );
        }
    }
    Ok(())
}
