use std::collections::BTreeSet;
use std::fmt;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup of a concrete [`FiniteGroup`], stored as a sorted index set.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: FiniteGroup,
    elements: Vec<usize>,
    member: Vec<bool>,
    is_normal: bool,
}

impl fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupHandle")
            .field("order", &self.order())
            .field("elements", &self.elements)
            .field("is_normal", &self.is_normal)
            .finish()
    }
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_group(&other.parent) && self.elements == other.elements
    }
}

impl Eq for SubgroupHandle {}

impl SubgroupHandle {
    /// Wraps a set already known to be a subgroup; normality is computed.
    pub(crate) fn from_verified(parent: &FiniteGroup, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut member = vec![false; parent.order()];
        for &x in &elements {
            member[x] = true;
        }
        let is_normal = parent.elements().all(|g| elements.iter().all(|&h| member[parent.conj(g, h)]));
        SubgroupHandle { parent: parent.clone(), elements, member, is_normal }
    }

    /// Checks closure of `elements` and wraps it.
    pub fn from_elements(parent: &FiniteGroup, elements: Vec<usize>) -> Result<Self> {
        let h = Self::from_verified(parent, elements);
        if h.elements.first() != Some(&0) {
            return Err(Error::invalid("subgroup must contain the identity"));
        }
        if h.elements.iter().any(|&x| x >= parent.order()) {
            return Err(Error::invalid("element index out of range"));
        }
        for &x in &h.elements {
            if !h.member[parent.inv(x)] || h.elements.iter().any(|&y| !h.member[parent.mul(x, y)]) {
                return Err(Error::invalid("set is not closed under the group operation"));
            }
        }
        Ok(h)
    }

    pub(crate) fn whole(parent: &FiniteGroup) -> Self {
        SubgroupHandle {
            parent: parent.clone(),
            elements: parent.elements().collect(),
            member: vec![true; parent.order()],
            is_normal: true,
        }
    }

    pub(crate) fn trivial(parent: &FiniteGroup) -> Self {
        let mut member = vec![false; parent.order()];
        member[0] = true;
        SubgroupHandle { parent: parent.clone(), elements: vec![0], member, is_normal: true }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.member.get(x).copied().unwrap_or(false)
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        self.elements.iter().all(|&x| self.elements.iter().all(|&y| g.commutes(x, y)))
    }

    pub fn exponent(&self) -> usize {
        self.elements.iter().map(|&x| self.parent.element_order(x)).fold(1, num_integer::lcm)
    }

    fn check_parent(&self, other: &SubgroupHandle) -> Result<()> {
        if self.parent.same_group(&other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// `C_K(x) = {k in K : kx = xk}` for this subgroup `K`.
    pub fn centralizer(&self, x: usize) -> SubgroupHandle {
        let g = &self.parent;
        let elems = self.elements.iter().copied().filter(|&k| g.commutes(k, x)).collect();
        SubgroupHandle::from_verified(g, elems)
    }

    /// `C_K(H)`: elements of this subgroup commuting with all of `other`.
    pub fn centralizer_of(&self, other: &SubgroupHandle) -> Result<SubgroupHandle> {
        self.check_parent(other)?;
        let g = &self.parent;
        let elems = self
            .elements
            .iter()
            .copied()
            .filter(|&k| other.elements.iter().all(|&h| g.commutes(k, h)))
            .collect();
        Ok(SubgroupHandle::from_verified(g, elems))
    }

    pub fn intersection(&self, other: &SubgroupHandle) -> Result<SubgroupHandle> {
        self.check_parent(other)?;
        let elems = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        Ok(SubgroupHandle::from_verified(&self.parent, elems))
    }

    /// The subgroup generated by both.
    pub fn join(&self, other: &SubgroupHandle) -> Result<SubgroupHandle> {
        self.check_parent(other)?;
        let seed: Vec<usize> = self.elements.iter().chain(&other.elements).copied().collect();
        subgroup_closure(&self.parent, &seed)
    }

    /// Whether the product set `HK` is the whole parent group.
    pub fn product_is_whole(&self, other: &SubgroupHandle) -> Result<bool> {
        let meet = self.intersection(other)?;
        Ok(self.order() * other.order() == meet.order() * self.parent.order())
    }

    /// Index `|G : H|` in the parent.
    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }
}

/// Smallest subgroup of `g` containing `seed`.
pub fn subgroup_closure(g: &FiniteGroup, seed: &[usize]) -> Result<SubgroupHandle> {
    if let Some(&bad) = seed.iter().find(|&&x| x >= g.order()) {
        return Err(Error::invalid(format!("element {bad} out of range")));
    }
    let gens: BTreeSet<usize> = seed.iter().copied().filter(|&x| x != 0).collect();
    let mut member = vec![false; g.order()];
    member[0] = true;
    let mut elements = vec![0];
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head];
        for &s in &gens {
            let y = g.mul(x, s);
            if !member[y] {
                member[y] = true;
                elements.push(y);
            }
        }
        head += 1;
    }
    Ok(SubgroupHandle::from_verified(g, elements))
}

/// The `K`-conjugacy classes that make up `H`.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub acting: SubgroupHandle,
    pub domain: SubgroupHandle,
    classes: Vec<Vec<usize>>,
    representatives: Vec<usize>,
}

impl ClassPartition {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Minimal element index of each class, in class order.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// `k_K(H)`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Partition of `h` into orbits under conjugation by `k`.
pub fn conjugacy_classes_under(k: &SubgroupHandle, h: &SubgroupHandle) -> Result<ClassPartition> {
    k.check_parent(h)?;
    let g = &h.parent;
    for &x in &h.elements {
        for &y in &k.elements {
            if !h.contains(g.conj(y, x)) {
                return Err(Error::NotStable);
            }
        }
    }
    let mut assigned = vec![false; g.order()];
    let mut classes = Vec::new();
    let mut representatives = Vec::new();
    for &x in &h.elements {
        if assigned[x] {
            continue;
        }
        let mut class: Vec<usize> = k.elements.iter().map(|&y| g.conj(y, x)).collect();
        class.sort_unstable();
        class.dedup();
        for &c in &class {
            assigned[c] = true;
        }
        representatives.push(x);
        classes.push(class);
    }
    Ok(ClassPartition { acting: k.clone(), domain: h.clone(), classes, representatives })
}

/// `[H, K]`, generated by the commutators `h k h^-1 k^-1`.
pub fn commutator_subgroup(h: &SubgroupHandle, k: &SubgroupHandle) -> Result<SubgroupHandle> {
    h.check_parent(k)?;
    let g = &h.parent;
    let mut seed = BTreeSet::new();
    for &x in &h.elements {
        for &y in &k.elements {
            seed.insert(g.commutator(x, y));
        }
    }
    subgroup_closure(g, &seed.into_iter().collect::<Vec<_>>())
}

/// All normal subgroups, sorted by order and then lexicographically.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<SubgroupHandle> {
    let normal_closure = |x: usize| -> Vec<bool> {
        let seed: Vec<usize> = g.elements().map(|y| g.conj(y, x)).collect();
        let s = subgroup_closure(g, &seed).expect("indices in range");
        s.member
    };
    let closures: Vec<Vec<bool>> = {
        let mut set = BTreeSet::new();
        for x in g.elements() {
            set.insert(normal_closure(x));
        }
        set.into_iter().collect()
    };
    let close = |bits: &[bool]| -> Vec<bool> {
        let seed: Vec<usize> = (0..bits.len()).filter(|&i| bits[i]).collect();
        subgroup_closure(g, &seed).expect("indices in range").member
    };
    let mut found: BTreeSet<Vec<bool>> = closures.iter().cloned().collect();
    let mut frontier: Vec<Vec<bool>> = found.iter().cloned().collect();
    while let Some(current) = frontier.pop() {
        for c in &closures {
            let union: Vec<bool> = current.iter().zip(c).map(|(a, b)| *a || *b).collect();
            let joined = close(&union);
            if found.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    let mut result: Vec<SubgroupHandle> = found
        .into_iter()
        .map(|bits| {
            let elems = (0..bits.len()).filter(|&i| bits[i]).collect();
            SubgroupHandle::from_verified(g, elems)
        })
        .collect();
    result.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    result
}

/// A quotient group `G/N` with its projection map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[g]` is the index of the coset `gN`.
    pub projection: Vec<usize>,
}

impl Quotient {
    /// Image of a subgroup of the original group.
    pub fn image(&self, h: &SubgroupHandle) -> SubgroupHandle {
        let elems = h.elements.iter().map(|&x| self.projection[x]).collect();
        SubgroupHandle::from_verified(&self.group, elems)
    }
}

/// `G/N`; cosets are numbered by increasing minimal representative.
pub fn quotient(g: &FiniteGroup, n: &SubgroupHandle) -> Result<Quotient> {
    if !n.parent.same_group(g) {
        return Err(Error::ParentMismatch);
    }
    if !n.is_normal {
        return Err(Error::NotNormal);
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        for &y in &n.elements {
            projection[g.mul(x, y)] = id;
        }
        reps.push(x);
    }
    let order = reps.len();
    let mut table = Vec::with_capacity(order * order);
    for &x in &reps {
        for &y in &reps {
            table.push(projection[g.mul(x, y)] as u32);
        }
    }
    let labels = reps.iter().map(|&x| format!("{}N", g.label(x))).collect();
    let group = FiniteGroup::from_flat(order, table, Some(labels))?;
    Ok(Quotient { group, projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, build_dihedral, build_quaternion, build_symmetric};

    #[test]
    fn closure_examples() {
        let d8 = build_dihedral(4).unwrap();
        assert_eq!(subgroup_closure(&d8, &[]).unwrap().elements(), &[0]);
        let a2 = subgroup_closure(&d8, &[2]).unwrap();
        assert_eq!(a2.order(), 2);
        assert!(a2.is_normal());
        let b = subgroup_closure(&d8, &[4]).unwrap();
        assert_eq!(b.order(), 2);
        assert!(!b.is_normal());
        assert!(subgroup_closure(&d8, &[8]).is_err());
    }

    #[test]
    fn centralizer_examples() {
        let c5 = build_cyclic(5).unwrap();
        assert_eq!(c5.whole().centralizer(3).order(), 5);
        let d8 = build_dihedral(4).unwrap();
        let cb = d8.whole().centralizer(4);
        assert_eq!(cb.elements(), &[0, 2, 4, 6]);
        let rot = subgroup_closure(&d8, &[1]).unwrap();
        assert_eq!(rot.centralizer(1), rot);
    }

    #[test]
    fn class_examples() {
        let d8 = build_dihedral(4).unwrap();
        let triv = d8.trivial();
        let w = d8.whole();
        assert_eq!(conjugacy_classes_under(&triv, &w).unwrap().len(), 8);
        let p = conjugacy_classes_under(&w, &w).unwrap();
        let mut sizes: Vec<usize> = p.classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        for (rep, class) in p.representatives().iter().zip(p.classes()) {
            assert_eq!(*rep, class[0]);
        }
        let s3 = build_symmetric(3).unwrap();
        assert_eq!(s3.class_count(), 3);
        let b = subgroup_closure(&d8, &[4]).unwrap();
        assert!(matches!(conjugacy_classes_under(&w, &b), Err(Error::NotStable)));
    }

    #[test]
    fn commutator_examples() {
        let c6 = build_cyclic(6).unwrap();
        assert!(c6.derived_subgroup().is_trivial());
        let d8 = build_dihedral(4).unwrap();
        assert_eq!(d8.derived_subgroup().elements(), &[0, 2]);
        let q8 = build_quaternion(2).unwrap();
        assert_eq!(q8.derived_subgroup().elements(), &[0, 2]);
    }

    #[test]
    fn quotient_examples() {
        let d8 = build_dihedral(4).unwrap();
        let all = quotient(&d8, &d8.whole()).unwrap();
        assert_eq!(all.group.order(), 1);
        let v = quotient(&d8, &subgroup_closure(&d8, &[2]).unwrap()).unwrap();
        assert_eq!(v.group.order(), 4);
        assert_eq!(v.group.exponent(), 2);
        let same = quotient(&d8, &d8.trivial()).unwrap();
        assert_eq!(same.group.order_statistics(), d8.order_statistics());
        let b = subgroup_closure(&d8, &[4]).unwrap();
        assert!(matches!(quotient(&d8, &b), Err(Error::NotNormal)));
    }

    #[test]
    fn normal_subgroup_lattice() {
        let d8 = build_dihedral(4).unwrap();
        // 1, <a^2>, <a>, <a^2,b>, <a^2,ab>, D8
        assert_eq!(normal_subgroups(&d8).len(), 6);
        let q8 = build_quaternion(2).unwrap();
        assert_eq!(normal_subgroups(&q8).len(), 6);
        let s4 = build_symmetric(4).unwrap();
        let orders: Vec<usize> = normal_subgroups(&s4).iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn join_and_product() {
        let d8 = build_dihedral(4).unwrap();
        let rot = subgroup_closure(&d8, &[1]).unwrap();
        let b = subgroup_closure(&d8, &[4]).unwrap();
        assert!(rot.join(&b).unwrap().is_whole());
        assert!(rot.product_is_whole(&b).unwrap());
        assert!(!rot.product_is_whole(&rot).unwrap());
    }
}
