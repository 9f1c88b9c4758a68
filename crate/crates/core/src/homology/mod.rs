//! Integer homology of finite groups through the normalized bar complex.
//!
//! Chains of degree `k` have one basis vector per `k`-tuple of non-identity
//! elements; tuples containing the identity are zero. The action on `Z` is
//! trivial, so
//!
//! ```text
//! d2[g|h]   = [h] - [gh] + [g]
//! d3[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]
//! ```
//!
//! `H_2(G) = ker d2 / im d3` is finite, so its invariant factors are the
//! nontrivial diagonal entries of the Smith form of `d3`. The same Smith
//! transform yields generating cycles (columns of `U^-1`) and dual cochains
//! (rows of `U`); reducing those cochains modulo the invariant factors gives
//! a normalized 2-cocycle that evaluates to the identity on `H_2`.

mod abelian;
mod snf;
mod sparse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub use abelian::{invariants_of_group, invariants_of_subgroup, AbelianInvariants};
pub use snf::{smith_normal_form, smith_normal_form_with, SmithForm, SnfOptions};
pub use sparse::{SparseIntMatrix, SparseVec};

fn check_cap(g: &FiniteGroup, caps: &Caps) -> Result<()> {
    if g.order() > caps.homology {
        return Err(Error::CapExceeded {
            what: "group order for bar homology".into(),
            size: g.order(),
            cap: caps.homology,
        });
    }
    Ok(())
}

/// Basis index of the 2-chain `[g|h]` (both non-identity).
pub fn chain2_index(order: usize, g: usize, h: usize) -> usize {
    (g - 1) * (order - 1) + (h - 1)
}

/// Inverse of [`chain2_index`].
pub fn chain2_pair(order: usize, index: usize) -> (usize, usize) {
    (index / (order - 1) + 1, index % (order - 1) + 1)
}

/// Boundary matrix `d2: C_2 -> C_1` or `d3: C_3 -> C_2` of the normalized
/// bar complex; rows index the target basis, columns the source basis.
pub fn bar_boundary(g: &FiniteGroup, degree: usize, caps: &Caps) -> Result<SparseIntMatrix> {
    check_cap(g, caps)?;
    let n = g.order();
    let m = n - 1;
    match degree {
        2 => {
            let mut d = SparseIntMatrix::zeros(m, m * m);
            for a in 1..n {
                for b in 1..n {
                    let col = chain2_index(n, a, b);
                    let ab = g.mul(a, b);
                    d.add_to(b - 1, col, 1);
                    if ab != 0 {
                        d.add_to(ab - 1, col, -1);
                    }
                    d.add_to(a - 1, col, 1);
                }
            }
            Ok(d)
        }
        3 => {
            let mut d = SparseIntMatrix::zeros(m * m, m * m * m);
            for a in 1..n {
                for b in 1..n {
                    let ab = g.mul(a, b);
                    for c in 1..n {
                        let col = ((a - 1) * m + (b - 1)) * m + (c - 1);
                        let bc = g.mul(b, c);
                        d.add_to(chain2_index(n, b, c), col, 1);
                        if ab != 0 {
                            d.add_to(chain2_index(n, ab, c), col, -1);
                        }
                        if bc != 0 {
                            d.add_to(chain2_index(n, a, bc), col, 1);
                        }
                        d.add_to(chain2_index(n, a, b), col, -1);
                    }
                }
            }
            Ok(d)
        }
        _ => Err(Error::invalid("bar boundaries are built for degrees 2 and 3 only")),
    }
}

/// An integral 2-cycle whose homology class has the given order.
#[derive(Clone, Debug)]
pub struct HomologyCycle {
    pub chain: SparseVec,
    pub order: u64,
}

/// `H_2(G, Z)` with generating cycles and their dual integral cochains.
#[derive(Clone, Debug)]
pub struct SecondHomology {
    pub group: FiniteGroup,
    pub invariants: AbelianInvariants,
    pub generators: Vec<HomologyCycle>,
    /// Integral cochains on `C_2`; `cochains[i]` pairs to `delta_ij` with
    /// `generators[j]` and vanishes on `im d3` modulo `d_i`.
    pub cochains: Vec<SparseVec>,
}

pub fn second_homology(g: &FiniteGroup, caps: &Caps) -> Result<SecondHomology> {
    check_cap(g, caps)?;
    let n = g.order();
    if n <= 2 {
        return Ok(SecondHomology {
            group: g.clone(),
            invariants: AbelianInvariants::trivial(),
            generators: Vec::new(),
            cochains: Vec::new(),
        });
    }
    let d2 = bar_boundary(g, 2, caps)?;
    let d3 = bar_boundary(g, 3, caps)?;
    let rank2 = smith_normal_form_with(&d2, SnfOptions::NONE).rank();
    let snf3 = smith_normal_form_with(
        &d3,
        SnfOptions { track_u: true, track_u_inv: true, track_v: false },
    );
    let kernel_rank = (n - 1) * (n - 1) - rank2;
    if kernel_rank != snf3.rank() {
        return Err(Error::Invariant(format!(
            "H_2 has free rank {} for a finite group",
            kernel_rank as i64 - snf3.rank() as i64
        )));
    }
    let u = snf3.u.as_ref().expect("tracked");
    let u_inv = snf3.u_inv.as_ref().expect("tracked");
    let u_rows = u.row_vectors();
    let mut divisors = Vec::new();
    let mut generators = Vec::new();
    let mut cochains = Vec::new();
    for (pos, d) in snf3.torsion() {
        let order = d
            .to_u64()
            .ok_or_else(|| Error::Invariant("invariant factor does not fit in u64".into()))?;
        let chain: SparseVec =
            u_inv.iter().filter(|&(_, c, _)| c == pos).map(|(r, _, v)| (r, v.clone())).collect();
        if !d2.apply(&chain).is_empty() {
            return Err(Error::Invariant(format!("generator {pos} is not a cycle")));
        }
        divisors.push(order);
        generators.push(HomologyCycle { chain, order });
        cochains.push(u_rows[pos].clone());
    }
    Ok(SecondHomology {
        group: g.clone(),
        invariants: AbelianInvariants::new(divisors)?,
        generators,
        cochains,
    })
}

/// The Schur multiplier `M(G) = H_2(G, Z)`.
pub fn schur_multiplier(g: &FiniteGroup, caps: &Caps) -> Result<AbelianInvariants> {
    Ok(second_homology(g, caps)?.invariants)
}

pub fn homology_generators(g: &FiniteGroup, caps: &Caps) -> Result<Vec<HomologyCycle>> {
    Ok(second_homology(g, caps)?.generators)
}

/// A normalized 2-cocycle `f: G x G -> A` with `A = Z/d_1 + ... + Z/d_t`.
#[derive(Clone, Debug)]
pub struct StemCocycle {
    pub group: FiniteGroup,
    pub target: AbelianInvariants,
    values: Vec<u64>,
}

impl StemCocycle {
    pub fn zero(g: &FiniteGroup) -> Self {
        StemCocycle { group: g.clone(), target: AbelianInvariants::trivial(), values: Vec::new() }
    }

    fn width(&self) -> usize {
        self.target.rank()
    }

    /// `f(g, h)` as residues, one per invariant factor.
    pub fn value(&self, g: usize, h: usize) -> &[u64] {
        let t = self.width();
        let at = (g * self.group.order() + h) * t;
        &self.values[at..at + t]
    }

    /// Sum in `A`.
    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.target.divisors().iter().zip(a.iter().zip(b)).map(|(d, (x, y))| (x + y) % d).collect()
    }

    /// Checks normalization and `f(g,h) + f(gh,k) = f(h,k) + f(g,hk)` on all triples.
    pub fn verify_cocycle(&self) -> Result<()> {
        let g = &self.group;
        for x in g.elements() {
            if self.value(0, x).iter().any(|&v| v != 0) || self.value(x, 0).iter().any(|&v| v != 0) {
                return Err(Error::Invariant(format!("cocycle not normalized at {x}")));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                for c in g.elements() {
                    let lhs = self.add(self.value(a, b), self.value(ab, c));
                    let rhs = self.add(self.value(b, c), self.value(a, g.mul(b, c)));
                    if lhs != rhs {
                        return Err(Error::Invariant(format!("cocycle identity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluation of coordinate `i` on an integral 2-chain, modulo `d_i`.
    pub fn evaluate(&self, i: usize, chain: &[(usize, BigInt)]) -> u64 {
        let n = self.group.order();
        let d = BigInt::from(self.target.divisors()[i]);
        let mut acc = BigInt::zero();
        for (idx, coeff) in chain {
            let (g, h) = chain2_pair(n, *idx);
            acc += coeff * BigInt::from(self.value(g, h)[i]);
        }
        acc.mod_floor(&d).to_u64().expect("residue fits")
    }
}

/// A cocycle whose class maps `H_2(G)` isomorphically onto `A ≅ M(G)`.
pub fn stem_cocycle(g: &FiniteGroup, caps: &Caps) -> Result<StemCocycle> {
    let h2 = second_homology(g, caps)?;
    stem_cocycle_from(&h2)
}

pub fn stem_cocycle_from(h2: &SecondHomology) -> Result<StemCocycle> {
    let g = &h2.group;
    if h2.invariants.is_trivial() {
        return Ok(StemCocycle::zero(g));
    }
    let n = g.order();
    let t = h2.invariants.rank();
    let mut values = vec![0u64; n * n * t];
    for (i, (cochain, &d)) in h2.cochains.iter().zip(h2.invariants.divisors()).enumerate() {
        let d = BigInt::from(d);
        for (idx, v) in cochain {
            let (a, b) = chain2_pair(n, *idx);
            values[(a * n + b) * t + i] = v.mod_floor(&d).to_u64().expect("residue fits");
        }
    }
    let f = StemCocycle { group: g.clone(), target: h2.invariants.clone(), values };
    f.verify_cocycle()?;
    for (i, &d) in f.target.divisors().iter().enumerate() {
        for (j, z) in h2.generators.iter().enumerate() {
            let expected = u64::from(i == j) % d;
            if f.evaluate(i, &z.chain) != expected {
                return Err(Error::Invariant(format!(
                    "cocycle coordinate {i} evaluates wrongly on generator {j}"
                )));
            }
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, build_dihedral, build_quaternion, direct_product};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn boundary_of_c2() {
        let c2 = build_cyclic(2).unwrap();
        let d2 = bar_boundary(&c2, 2, &caps()).unwrap();
        assert_eq!(d2.to_dense(), vec![vec![BigInt::from(2)]]);
        let d3 = bar_boundary(&c2, 3, &caps()).unwrap();
        assert_eq!(d3.nnz(), 0);
        assert!(schur_multiplier(&c2, &caps()).unwrap().is_trivial());
    }

    #[test]
    fn trivial_group() {
        let c1 = build_cyclic(1).unwrap();
        let d2 = bar_boundary(&c1, 2, &caps()).unwrap();
        assert_eq!((d2.rows(), d2.cols()), (0, 0));
        assert!(schur_multiplier(&c1, &caps()).unwrap().is_trivial());
    }

    #[test]
    fn boundaries_compose_to_zero() {
        for g in [build_dihedral(3).unwrap(), build_quaternion(2).unwrap()] {
            let d2 = bar_boundary(&g, 2, &caps()).unwrap();
            let d3 = bar_boundary(&g, 3, &caps()).unwrap();
            assert_eq!(d2.mul(&d3).unwrap().nnz(), 0);
        }
    }

    #[test]
    fn multiplier_examples() {
        let c2 = build_cyclic(2).unwrap();
        let v = direct_product(&c2, &c2).unwrap().group;
        assert_eq!(schur_multiplier(&v, &caps()).unwrap().divisors(), &[2]);
        let d8 = build_dihedral(4).unwrap();
        assert_eq!(schur_multiplier(&d8, &caps()).unwrap().divisors(), &[2]);
        assert!(schur_multiplier(&build_quaternion(2).unwrap(), &caps()).unwrap().is_trivial());
        assert!(schur_multiplier(&build_cyclic(6).unwrap(), &caps()).unwrap().is_trivial());
        assert!(schur_multiplier(&build_dihedral(3).unwrap(), &caps()).unwrap().is_trivial());
    }

    #[test]
    fn elementary_abelian_and_homocyclic() {
        let c2 = build_cyclic(2).unwrap();
        let v = direct_product(&c2, &c2).unwrap().group;
        let e8 = direct_product(&v, &c2).unwrap().group;
        let h2 = second_homology(&e8, &caps()).unwrap();
        assert_eq!(h2.invariants.divisors(), &[2, 2, 2]);
        stem_cocycle_from(&h2).unwrap();
        let c4 = build_cyclic(4).unwrap();
        let c4c4 = direct_product(&c4, &c4).unwrap().group;
        assert_eq!(schur_multiplier(&c4c4, &caps()).unwrap().divisors(), &[4]);
        let c6 = build_cyclic(6).unwrap();
        let c2c6 = direct_product(&c2, &c6).unwrap().group;
        assert_eq!(schur_multiplier(&c2c6, &caps()).unwrap().divisors(), &[2]);
    }

    #[test]
    fn generators_and_cocycles() {
        let c2 = build_cyclic(2).unwrap();
        let v = direct_product(&c2, &c2).unwrap().group;
        let gens = homology_generators(&v, &caps()).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].order, 2);
        let f = stem_cocycle(&v, &caps()).unwrap();
        assert_eq!(f.target.divisors(), &[2]);
        let q8 = build_quaternion(2).unwrap();
        let f = stem_cocycle(&q8, &caps()).unwrap();
        assert!(f.target.is_trivial());
    }

    #[test]
    fn cap_is_enforced() {
        let c = build_cyclic(49).unwrap();
        assert!(matches!(schur_multiplier(&c, &caps()), Err(Error::CapExceeded { .. })));
        assert!(bar_boundary(&build_cyclic(3).unwrap(), 4, &caps()).is_err());
    }
}
