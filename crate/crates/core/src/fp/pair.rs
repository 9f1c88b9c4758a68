//! `H ⊗ K` and `H ∧ K` for normal subgroups `H, K` of a finite group,
//! presented on symbols `s(h,k)` subject to
//!
//! ```text
//! s(h h', k)  = s(^h h', ^h k) s(h, k)
//! s(h, k k')  = s(h, k) s(^k h, ^k k')
//! s(y, y)     = 1            (exterior case, y in H ∩ K)
//! ```
//!
//! with `^x y = x y x^-1`. The commutator map `κ: s(h,k) -> [h,k]` is
//! extended along the enumerated group and its kernel read off.

use serde::Serialize;

use crate::config::Config;
use crate::degree::{DegreeValue, Method};
use crate::error::{Error, Result};
use crate::exterior::{exterior_degree_of, relative_exterior_center_of, ExteriorPairing};
use crate::group::{commutator_subgroup, subgroup_closure, FiniteGroup, SubgroupHandle};
use crate::homology::{invariants_of_subgroup, AbelianInvariants};

use super::presentation::{generator_letter, Presentation, Word};
use super::regular_representation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    Tensor,
    Exterior,
}

#[derive(Clone, Debug)]
pub struct PairProduct {
    pub ambient: FiniteGroup,
    pub left: SubgroupHandle,
    pub right: SubgroupHandle,
    pub kind: PairKind,
    pub product: FiniteGroup,
    /// `pairing[pos(h) * |K| + pos(k)]`.
    pairing: Vec<usize>,
    /// Position of each ambient element in `H` and in `K`.
    h_pos: Vec<usize>,
    k_pos: Vec<usize>,
    /// `κ` on product elements.
    kappa: Vec<usize>,
    pub kappa_image: SubgroupHandle,
    pub kernel_subgroup: SubgroupHandle,
    pub kernel: AbelianInvariants,
    /// Generator and relator counts before and after simplification.
    pub presentation_size: [usize; 4],
}

/// JSON form of a [`PairProduct`].
#[derive(Clone, Debug, Serialize)]
pub struct PairProductReport {
    pub kind: PairKind,
    pub h_elements: Vec<usize>,
    pub k_elements: Vec<usize>,
    pub product_order: usize,
    pub kappa_image_order: usize,
    pub kernel: AbelianInvariants,
    pub kernel_order: u64,
    /// Row `i`, column `j`: product element of `s(h_i, k_j)`.
    pub pairing: Vec<Vec<usize>>,
}

fn positions(s: &SubgroupHandle) -> Vec<usize> {
    let mut pos = vec![usize::MAX; s.parent().order()];
    for (i, &x) in s.elements().iter().enumerate() {
        pos[x] = i;
    }
    pos
}

impl PairProduct {
    /// Product element of `h ⊗ k` (or `h ∧ k`).
    pub fn pairing(&self, h: usize, k: usize) -> usize {
        self.pairing[self.h_pos[h] * self.right.order() + self.k_pos[k]]
    }

    pub fn kappa(&self, x: usize) -> usize {
        self.kappa[x]
    }

    pub fn order(&self) -> usize {
        self.product.order()
    }

    /// Re-checks the defining relations on the computed pairing.
    pub fn verify_relations(&self) -> Result<()> {
        let g = &self.ambient;
        let p = &self.product;
        let (hs, ks) = (self.left.elements(), self.right.elements());
        for &h in hs {
            for &k in ks {
                let s = self.pairing(h, k);
                for &h2 in hs {
                    let lhs = self.pairing(g.mul(h, h2), k);
                    let rhs = p.mul(self.pairing(g.conj(h, h2), g.conj(h, k)), s);
                    if lhs != rhs {
                        return Err(Error::Invariant(format!("left expansion fails at ({h},{h2},{k})")));
                    }
                }
                for &k2 in ks {
                    let lhs = self.pairing(h, g.mul(k, k2));
                    let rhs = p.mul(s, self.pairing(g.conj(k, h), g.conj(k, k2)));
                    if lhs != rhs {
                        return Err(Error::Invariant(format!("right expansion fails at ({h},{k},{k2})")));
                    }
                }
                if self.kappa[s] != g.commutator(h, k) {
                    return Err(Error::Invariant(format!("κ({h},{k}) is not the commutator")));
                }
            }
        }
        if self.kind == PairKind::Exterior {
            if let Some(&y) = hs.iter().find(|&&y| self.right.contains(y) && self.pairing(y, y) != 0) {
                return Err(Error::Invariant(format!("y ∧ y is nontrivial for y = {y}")));
            }
        }
        Ok(())
    }

    pub fn report(&self) -> PairProductReport {
        let pairing = self
            .left
            .elements()
            .iter()
            .map(|&h| self.right.elements().iter().map(|&k| self.pairing(h, k)).collect())
            .collect();
        PairProductReport {
            kind: self.kind,
            h_elements: self.left.elements().to_vec(),
            k_elements: self.right.elements().to_vec(),
            product_order: self.order(),
            kappa_image_order: self.kappa_image.order(),
            kernel: self.kernel.clone(),
            kernel_order: self.kernel.order(),
            pairing,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.report())?)
    }

    /// `d^∧_m(H,K)` (or its tensor analogue) from the enumerated pairing.
    pub fn degree(&self, m: u64) -> Result<DegreeValue> {
        exterior_degree_of(self, m)
    }

    pub fn exterior_center(&self) -> Result<SubgroupHandle> {
        relative_exterior_center_of(self)
    }
}

impl ExteriorPairing for PairProduct {
    fn left(&self) -> &SubgroupHandle {
        &self.left
    }

    fn right(&self) -> &SubgroupHandle {
        &self.right
    }

    fn wedge_trivial(&self, h: usize, k: usize) -> bool {
        self.pairing(h, k) == 0
    }

    fn method(&self) -> Method {
        Method::Presentation
    }
}

/// The presentation on `s(h,k)`, generator `pos(h) * |K| + pos(k)`.
pub(crate) fn pair_presentation(h: &SubgroupHandle, k: &SubgroupHandle, kind: PairKind) -> Result<Presentation> {
    let g = h.parent();
    let (hp, kp) = (positions(h), positions(k));
    let nk = k.order();
    let s = |x: usize, y: usize| hp[x] * nk + kp[y];
    let gen = |i: usize| generator_letter(i, false);
    let inv = |i: usize| generator_letter(i, true);
    let mut relators: Vec<Word> = Vec::new();
    for &x in h.elements() {
        for &y in k.elements() {
            for &x2 in h.elements() {
                relators.push(vec![gen(s(g.conj(x, x2), g.conj(x, y))), gen(s(x, y)), inv(s(g.mul(x, x2), y))]);
            }
            for &y2 in k.elements() {
                relators.push(vec![gen(s(x, y)), gen(s(g.conj(y, x), g.conj(y, y2))), inv(s(x, g.mul(y, y2)))]);
            }
        }
    }
    if kind == PairKind::Exterior {
        for &y in h.elements() {
            if k.contains(y) {
                relators.push(vec![gen(s(y, y))]);
            }
        }
    }
    let names = h
        .elements()
        .iter()
        .flat_map(|&x| k.elements().iter().map(move |&y| format!("s{x}_{y}")))
        .collect();
    Ok(Presentation::new(names, relators)?.deduplicated())
}

/// Builds `H ⊗ K` or `H ∧ K` by coset enumeration.
pub fn pair_product(
    g: &FiniteGroup,
    h: &SubgroupHandle,
    k: &SubgroupHandle,
    kind: PairKind,
    config: &Config,
) -> Result<PairProduct> {
    if !h.parent().same_group(g) || !k.parent().same_group(g) {
        return Err(Error::ParentMismatch);
    }
    if !h.is_normal() || !k.is_normal() {
        return Err(Error::NotNormal);
    }
    let cap = config.caps.fp_pair;
    for s in [h, k] {
        if s.order() > cap {
            return Err(Error::CapExceeded { what: "pair product factor order".into(), size: s.order(), cap });
        }
    }
    let full = pair_presentation(h, k, kind)?;
    let simplified = full.simplify();
    let small = &simplified.presentation;
    let instance = format!("{kind:?} product of subgroups of orders {} and {}", h.order(), k.order());
    let rep = regular_representation(small, config).map_err(|e| match e {
        Error::Enumeration { cap, .. } => Error::Enumeration { instance: instance.clone(), cap },
        other => other,
    })?;
    let nk = k.order();
    let commutator_of = |i: usize| g.commutator(h.elements()[i / nk], k.elements()[i % nk]);
    let kappa = rep.extend_homomorphism(g, |l| {
        let c = commutator_of(simplified.kept[(l / 2) as usize]);
        if l & 1 == 0 {
            c
        } else {
            g.inv(c)
        }
    })?;
    let pairing: Vec<usize> = simplified.images.iter().map(|w| rep.evaluate(w)).collect();
    let product = rep.group.clone();

    let generated = subgroup_closure(&product, &pairing)?;
    if !generated.is_whole() {
        return Err(Error::Invariant(format!("{instance}: pairing values do not generate")));
    }
    let mut image: Vec<usize> = kappa.clone();
    image.sort_unstable();
    image.dedup();
    let kappa_image = SubgroupHandle::from_elements(g, image)?;
    if kappa_image != commutator_subgroup(h, k)? {
        return Err(Error::Invariant(format!("{instance}: κ is not onto [H,K]")));
    }
    let kernel_elements: Vec<usize> = product.elements().filter(|&x| kappa[x] == 0).collect();
    let kernel_subgroup = SubgroupHandle::from_elements(&product, kernel_elements)?;
    if !kernel_subgroup.is_abelian() {
        return Err(Error::Invariant(format!("{instance}: kernel of κ is not abelian")));
    }
    let kernel = invariants_of_subgroup(&kernel_subgroup)?;
    if kernel.order() as usize * kappa_image.order() != product.order() {
        return Err(Error::Invariant(format!("{instance}: |kernel| |[H,K]| differs from |product|")));
    }
    let pp = PairProduct {
        ambient: g.clone(),
        left: h.clone(),
        right: k.clone(),
        kind,
        product,
        pairing,
        h_pos: positions(h),
        k_pos: positions(k),
        kappa,
        kappa_image,
        kernel_subgroup,
        kernel,
        presentation_size: [
            full.num_generators(),
            full.relators().len(),
            small.num_generators(),
            small.relators().len(),
        ],
    };
    pp.verify_relations()?;
    Ok(pp)
}

/// `M(G,H,K) = ker(κ': H ∧ K -> [H,K])`, defined here for `G = HK`.
pub fn triple_multiplier(
    g: &FiniteGroup,
    h: &SubgroupHandle,
    k: &SubgroupHandle,
    config: &Config,
) -> Result<AbelianInvariants> {
    if !h.product_is_whole(k)? {
        return Err(Error::invalid("M(G,H,K) is computed only when G = HK"));
    }
    Ok(pair_product(g, h, k, PairKind::Exterior, config)?.kernel)
}

/// `d^∧_m(H,K)` with `h^m ∧ k` evaluated in the enumerated `H ∧ K`.
pub fn relative_exterior_degree(
    g: &FiniteGroup,
    h: &SubgroupHandle,
    k: &SubgroupHandle,
    m: u64,
    config: &Config,
) -> Result<DegreeValue> {
    pair_product(g, h, k, PairKind::Exterior, config)?.degree(m)
}

/// `Z^∧(H,K) = {h in H : h ∧ k = 1 for all k in K}`.
pub fn relative_exterior_center(
    g: &FiniteGroup,
    h: &SubgroupHandle,
    k: &SubgroupHandle,
    config: &Config,
) -> Result<SubgroupHandle> {
    pair_product(g, h, k, PairKind::Exterior, config)?.exterior_center()
}
