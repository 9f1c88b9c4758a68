//! Stem covers `A -> G* -> G` built from a stem cocycle, realizing the
//! exterior square: `x ∧ y` corresponds to the commutator of lifts
//! `[(0,x), (0,y)]`, which lies in `G*'` and does not depend on the lifts.

use crate::config::Caps;
use crate::degree::{DegreeValue, Method};
use crate::error::{Error, Result};
use crate::exterior::{
    degree_via_classes_of, exterior_centralizer_in, exterior_degree_of, relative_exterior_center_of,
    AlphaTable, ExteriorPairing,
};
use crate::group::{FiniteGroup, SubgroupHandle};
use crate::homology::{stem_cocycle, AbelianInvariants, StemCocycle};

/// `G* = A x G` with `(a,g)(b,h) = (a + b + f(g,h), gh)`; the pair `(a,g)`
/// has index `a_index * |G| + g`, where `a_index` reads the residues of `a`
/// in mixed radix with the first coordinate least significant.
#[derive(Clone, Debug)]
pub struct StemCover {
    base: FiniteGroup,
    cocycle: StemCocycle,
    cover: FiniteGroup,
}

fn encode(residues: &[u64], divisors: &[u64]) -> usize {
    residues.iter().zip(divisors).rev().fold(0usize, |acc, (&r, &d)| acc * d as usize + r as usize)
}

fn decode(mut index: usize, divisors: &[u64]) -> Vec<u64> {
    divisors
        .iter()
        .map(|&d| {
            let r = (index % d as usize) as u64;
            index /= d as usize;
            r
        })
        .collect()
}

impl StemCover {
    /// Builds the extension from `f` and checks every stem-cover invariant.
    pub fn from_cocycle(f: StemCocycle, caps: &Caps) -> Result<Self> {
        let base = f.group.clone();
        let n = base.order();
        let divisors = f.target.divisors().to_vec();
        let a_order = f.target.order() as usize;
        let order = a_order * n;
        if order > caps.cayley {
            return Err(Error::CapExceeded { what: "stem cover order".into(), size: order, cap: caps.cayley });
        }
        let residues: Vec<Vec<u64>> = (0..a_order).map(|i| decode(i, &divisors)).collect();
        let mut table = vec![0u32; order * order];
        for (ai, a) in residues.iter().enumerate() {
            for g in 0..n {
                let row = (ai * n + g) * order;
                for (bi, b) in residues.iter().enumerate() {
                    let ab = f.add(a, b);
                    for h in 0..n {
                        let c = f.add(&ab, f.value(g, h));
                        table[row + bi * n + h] = (encode(&c, &divisors) * n + base.mul(g, h)) as u32;
                    }
                }
            }
        }
        let labels = (0..order)
            .map(|x| {
                let (ai, g) = (x / n, x % n);
                if a_order == 1 {
                    base.label(g).to_string()
                } else {
                    format!("({:?},{})", residues[ai], base.label(g))
                }
            })
            .collect();
        let cover = FiniteGroup::from_flat_capped(order, table, Some(labels), caps.cayley)?;
        let cov = StemCover { base, cocycle: f, cover };
        cov.verify()?;
        Ok(cov)
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn cover(&self) -> &FiniteGroup {
        &self.cover
    }

    pub fn kernel(&self) -> &AbelianInvariants {
        &self.cocycle.target
    }

    pub fn cocycle(&self) -> &StemCocycle {
        &self.cocycle
    }

    /// `g -> (0, g)`.
    pub fn section(&self, g: usize) -> usize {
        g
    }

    /// `(a, g) -> g`.
    pub fn projection(&self, x: usize) -> usize {
        x % self.base.order()
    }

    /// The elements `(a, 1)`.
    pub fn kernel_elements(&self) -> Vec<usize> {
        (0..self.kernel().order() as usize).map(|i| i * self.base.order()).collect()
    }

    /// `x ∧ y` as an element of `G*' ≅ G ∧ G`.
    pub fn wedge(&self, x: usize, y: usize) -> usize {
        self.cover.commutator(self.section(x), self.section(y))
    }

    pub fn wedge_trivial(&self, x: usize, y: usize) -> bool {
        self.wedge(x, y) == 0
    }

    /// `|G ∧ G| = |G*'|`.
    pub fn exterior_square_order(&self) -> usize {
        self.cover.derived_subgroup().order()
    }

    /// Centrality, stem property, lift independence of commutators and
    /// `|G*'| = |M(G)| |G'|`, all checked exhaustively.
    pub fn verify(&self) -> Result<()> {
        let kernel = self.kernel_elements();
        let fail = |msg: String| Err(Error::Invariant(msg));
        for &z in &kernel {
            if let Some(x) = self.cover.elements().find(|&x| !self.cover.commutes(z, x)) {
                return fail(format!("kernel element {z} does not commute with {x}"));
            }
        }
        let derived = self.cover.derived_subgroup();
        if let Some(z) = kernel.iter().find(|&&z| !derived.contains(z)) {
            return fail(format!("kernel element {z} lies outside the derived subgroup"));
        }
        let n = self.base.order();
        for x in self.cover.elements() {
            for y in self.cover.elements() {
                let c = self.cover.commutator(x, y);
                if c != self.wedge(x % n, y % n) {
                    return fail(format!("commutator of lifts depends on the lift at ({x},{y})"));
                }
            }
        }
        let expected = self.kernel().order() as usize * self.base.derived_subgroup().order();
        if derived.order() != expected {
            return fail(format!("|G*'| = {} but |M(G)||G'| = {expected}", derived.order()));
        }
        Ok(())
    }

    /// Exterior pairing restricted to `H x K`, evaluated in `G ∧ G`.
    pub fn pairing(&self, h: &SubgroupHandle, k: &SubgroupHandle) -> Result<CoverPairing<'_>> {
        if !h.parent().same_group(&self.base) || !k.parent().same_group(&self.base) {
            return Err(Error::ParentMismatch);
        }
        Ok(CoverPairing { cover: self, h: h.clone(), k: k.clone() })
    }

    pub fn whole_pairing(&self) -> CoverPairing<'_> {
        CoverPairing { cover: self, h: self.base.whole(), k: self.base.whole() }
    }

    /// `C^∧_G(x) = {y : x ∧ y = 1}`.
    pub fn exterior_centralizer(&self, x: usize) -> Result<SubgroupHandle> {
        exterior_centralizer_in(&self.whole_pairing(), x)
    }

    /// `Z^∧(G)`, checked to lie in `Z(G)`.
    pub fn exterior_center(&self) -> Result<SubgroupHandle> {
        let z = relative_exterior_center_of(&self.whole_pairing())?;
        if !z.is_subgroup_of(&self.base.center()) {
            return Err(Error::Invariant("exterior center is not central".into()));
        }
        Ok(z)
    }
}

/// `H x K` pairs evaluated through a stem cover of the ambient group.
#[derive(Clone, Debug)]
pub struct CoverPairing<'a> {
    cover: &'a StemCover,
    h: SubgroupHandle,
    k: SubgroupHandle,
}

impl ExteriorPairing for CoverPairing<'_> {
    fn left(&self) -> &SubgroupHandle {
        &self.h
    }

    fn right(&self) -> &SubgroupHandle {
        &self.k
    }

    fn wedge_trivial(&self, h: usize, k: usize) -> bool {
        self.cover.wedge_trivial(h, k)
    }

    fn method(&self) -> Method {
        Method::ViaCover
    }
}

pub fn build_cover(g: &FiniteGroup, caps: &Caps) -> Result<StemCover> {
    StemCover::from_cocycle(stem_cocycle(g, caps)?, caps)
}

/// `d^∧_m(G) = |{(x,y) : x^m ∧ y = 1}| / |G|^2`.
pub fn exterior_degree_m(cov: &StemCover, m: u64) -> Result<DegreeValue> {
    exterior_degree_of(&cov.whole_pairing(), m)
}

/// The class-sum form of `d^∧_m(H,K)` with `h ∧ k` evaluated in `G ∧ G`.
pub fn degree_via_classes(
    cov: &StemCover,
    h: &SubgroupHandle,
    k: &SubgroupHandle,
    m: u64,
) -> Result<(DegreeValue, AlphaTable)> {
    degree_via_classes_of(&cov.pairing(h, k)?, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::commutativity_degree;
    use crate::group::{build_cyclic, build_dihedral, build_quaternion, direct_product, subgroup_closure};

    fn frac(d: &DegreeValue) -> (u64, u64) {
        (d.numerator(), d.denominator())
    }

    fn klein() -> FiniteGroup {
        let c2 = build_cyclic(2).unwrap();
        direct_product(&c2, &c2).unwrap().group
    }

    #[test]
    fn mixed_radix_round_trip() {
        let d = [2, 4, 12];
        for i in 0..96 {
            assert_eq!(encode(&decode(i, &d), &d), i);
        }
    }

    #[test]
    fn cover_examples() {
        let caps = Caps::default();
        let c5 = build_cover(&build_cyclic(5).unwrap(), &caps).unwrap();
        assert!(c5.base().same_table(c5.cover()));
        let v = build_cover(&klein(), &caps).unwrap();
        assert_eq!(v.cover().order(), 8);
        assert_eq!(v.exterior_square_order(), 2);
        assert!(!v.cover().is_abelian());
        let d8 = build_cover(&build_dihedral(4).unwrap(), &caps).unwrap();
        assert_eq!(d8.cover().order(), 16);
        assert_eq!(d8.exterior_square_order(), 4);
        assert_eq!(d8.cover().center().order(), 2);
    }

    #[test]
    fn wedge_examples() {
        let caps = Caps::default();
        let v = build_cover(&klein(), &caps).unwrap();
        // (1,0) and (0,1) in C2 x C2 have indices 2 and 1
        assert!(!v.wedge_trivial(2, 1));
        for x in 0..4 {
            assert!(v.wedge_trivial(x, x));
        }
        let q8 = build_quaternion(2).unwrap();
        let cq = build_cover(&q8, &caps).unwrap();
        for x in q8.elements() {
            for y in q8.elements() {
                assert_eq!(cq.wedge_trivial(x, y), q8.commutes(x, y));
            }
        }
    }

    #[test]
    fn exterior_centralizers_and_centers() {
        let caps = Caps::default();
        let d8 = build_dihedral(4).unwrap();
        let cov = build_cover(&d8, &caps).unwrap();
        let a = subgroup_closure(&d8, &[1]).unwrap();
        assert_eq!(cov.exterior_centralizer(2).unwrap(), a);
        assert_eq!(cov.exterior_centralizer(4).unwrap().elements(), &[0, 4]);
        assert!(cov.exterior_center().unwrap().is_trivial());
        let q8 = build_quaternion(2).unwrap();
        let cq = build_cover(&q8, &caps).unwrap();
        assert!(cq.exterior_centralizer(2).unwrap().is_whole());
        assert_eq!(cq.exterior_center().unwrap(), q8.center());
        let c6 = build_cyclic(6).unwrap();
        assert!(build_cover(&c6, &caps).unwrap().exterior_center().unwrap().is_whole());
    }

    #[test]
    fn degree_examples() {
        let caps = Caps::default();
        let d8 = build_dihedral(4).unwrap();
        let cov = build_cover(&d8, &caps).unwrap();
        assert_eq!(frac(&exterior_degree_m(&cov, 1).unwrap()), (7, 16));
        assert_eq!(frac(&exterior_degree_m(&cov, 2).unwrap()), (7, 8));
        assert_eq!(frac(&exterior_degree_m(&cov, 4).unwrap()), (1, 1));
        let w = d8.whole();
        let (v, alpha) = degree_via_classes(&cov, &w, &w, 1).unwrap();
        assert_eq!(frac(&v), (7, 16));
        assert!(alpha.alpha.iter().all(|&a| a == 1));
        let (v, _) = degree_via_classes(&cov, &w, &w, 2).unwrap();
        assert_eq!(frac(&v), (7, 8));
        let q8 = build_quaternion(2).unwrap();
        let cq = build_cover(&q8, &caps).unwrap();
        assert_eq!(exterior_degree_m(&cq, 1).unwrap(), commutativity_degree(&q8).unwrap());
        assert_eq!(frac(&exterior_degree_m(&cq, 1).unwrap()), (5, 8));
    }

    #[test]
    fn cover_respects_cap() {
        let caps = Caps { cayley: 8, ..Caps::default() };
        assert!(matches!(
            build_cover(&build_dihedral(4).unwrap(), &caps),
            Err(Error::CapExceeded { .. })
        ));
    }
}
