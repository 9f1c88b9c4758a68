use super::{FiniteGroup, SubgroupHandle};
use crate::error::{Error, Result};

fn power_label(base: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

fn rotation_label(i: usize, reflection: bool) -> String {
    let mut s = power_label("a", i);
    if reflection {
        s.push('b');
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Cyclic group `C_n`; element `i` is `c^i`.
pub fn build_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::invalid("cyclic group needs n >= 1"));
    }
    let table = (0..n).flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32)).collect();
    let labels = (0..n)
        .map(|i| if i == 0 { "1".to_string() } else { power_label("c", i) })
        .collect();
    FiniteGroup::from_flat(n, table, Some(labels))
}

/// Dihedral group `D_2n = <a, b | a^n = b^2 = 1, b^-1 a b = a^-1>` of order `2n`.
///
/// Element `i + n*j` is `a^i b^j`.
pub fn build_dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::invalid("dihedral group needs n >= 1"));
    }
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = (x % n, x / n);
        for y in 0..order {
            let (k, l) = (y % n, y / n);
            // a^i b^j a^k b^l = a^(i + (-1)^j k) b^(j+l)
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            table.push((rot + n * ((j + l) % 2)) as u32);
        }
    }
    let labels = (0..order).map(|x| rotation_label(x % n, x >= n)).collect();
    FiniteGroup::from_flat(order, table, Some(labels))
}

/// Generalized quaternion (dicyclic) group `Q_n = <a, b | a^n = b^2 = (ab)^2>` of order `4n`.
///
/// Modelled with `a` of order `2n`, `b^2 = a^n` and `b a b^-1 = a^-1`.
/// Element `i + 2n*j` is `a^i b^j`.
pub fn build_quaternion(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::invalid("quaternion group needs n >= 2"));
    }
    let r = 2 * n;
    let order = 2 * r;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = (x % r, x / r);
        for y in 0..order {
            let (k, l) = (y % r, y / r);
            let (rot, refl) = match (j, l) {
                (0, _) => ((i + k) % r, l),
                (1, 0) => ((i + r - k) % r, 1),
                // a^i b a^k b = a^(i-k) b^2 = a^(i-k+n)
                _ => ((i + r - k + n) % r, 0),
            };
            table.push((rot + r * refl) as u32);
        }
    }
    let labels = (0..order).map(|x| rotation_label(x % r, x >= r)).collect();
    FiniteGroup::from_flat(order, table, Some(labels))
}

/// Symmetric group `S_n` for `1 <= n <= 5`.
///
/// Elements are the permutations of `{1..n}` in lexicographic order of their
/// image lists (so the identity is element 0); products compose left to right:
/// `(x*y)(p) = y(x(p))`.
pub fn build_symmetric(n: usize) -> Result<FiniteGroup> {
    if !(1..=5).contains(&n) {
        return Err(Error::invalid("symmetric group supported for 1 <= n <= 5"));
    }
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        perms.push(current.clone());
        if !next_permutation(&mut current) {
            break;
        }
    }
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation");
    let order = perms.len();
    let mut table = Vec::with_capacity(order * order);
    for x in &perms {
        for y in &perms {
            let xy: Vec<usize> = (0..n).map(|p| y[x[p]]).collect();
            table.push(index(&xy) as u32);
        }
    }
    let labels = perms.iter().map(|p| super::perm::cycle_string(p)).collect();
    FiniteGroup::from_flat(order, table, Some(labels))
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `G1 x G2` together with the canonical embeddings of both factors.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub left: SubgroupHandle,
    pub right: SubgroupHandle,
}

/// Direct product; element `(x, y)` has index `x * |G2| + y`.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<DirectProduct> {
    let (n1, n2) = (g1.order(), g2.order());
    let order = n1 * n2;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (x1, x2) = (x / n2, x % n2);
        for y in 0..order {
            let (y1, y2) = (y / n2, y % n2);
            table.push((g1.mul(x1, y1) * n2 + g2.mul(x2, y2)) as u32);
        }
    }
    let labels = if n1 == 1 {
        g2.labels().to_vec()
    } else if n2 == 1 {
        g1.labels().to_vec()
    } else {
        (0..order).map(|x| format!("({},{})", g1.label(x / n2), g2.label(x % n2))).collect()
    };
    let group = FiniteGroup::from_flat(order, table, Some(labels))?;
    let left = SubgroupHandle::from_verified(&group, (0..n1).map(|x| x * n2).collect());
    let right = SubgroupHandle::from_verified(&group, (0..n2).collect());
    Ok(DirectProduct { group, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_examples() {
        assert!(build_cyclic(0).is_err());
        assert_eq!(build_cyclic(1).unwrap().order(), 1);
        let c6 = build_cyclic(6).unwrap();
        assert!(c6.is_abelian());
        assert_eq!(c6.exponent(), 6);
        assert_eq!(c6.class_count(), 6);
        assert_eq!(build_cyclic(12).unwrap().element_order(1), 12);
    }

    #[test]
    fn dihedral_examples() {
        assert!(build_dihedral(0).is_err());
        let d2 = build_dihedral(1).unwrap();
        assert_eq!(d2.order(), 2);
        assert!(d2.is_abelian());
        let d8 = build_dihedral(4).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.center().order(), 2);
        let derived = d8.derived_subgroup();
        assert_eq!(derived.elements(), &[0, 2]);
        let d6 = build_dihedral(3).unwrap();
        assert_eq!(d6.class_count(), 3);
        assert!(!d6.is_abelian());
        // b^-1 a b = a^-1
        let (a, b) = (1, 4);
        assert_eq!(d8.mul(d8.mul(d8.inv(b), a), b), d8.inv(a));
    }

    #[test]
    fn quaternion_examples() {
        assert!(build_quaternion(1).is_err());
        let q8 = build_quaternion(2).unwrap();
        assert_eq!(q8.order(), 8);
        let involutions: Vec<_> = q8.elements().filter(|&x| q8.element_order(x) == 2).collect();
        assert_eq!(involutions.len(), 1);
        assert_eq!(q8.class_count(), 5);
        let center = q8.center();
        for x in q8.elements().filter(|&x| !center.contains(x)) {
            assert_eq!(q8.element_order(x), 4);
        }
        let q12 = build_quaternion(3).unwrap();
        assert_eq!(q12.order(), 12);
        assert_eq!(q12.center().elements(), &[0, 3]);
        // a^n = b^2 = (ab)^2
        let (a, b) = (1, 6);
        assert_eq!(q12.pow(a, 3), q12.pow(b, 2));
        assert_eq!(q12.pow(b, 2), q12.pow(q12.mul(a, b), 2));
    }

    #[test]
    fn symmetric_examples() {
        assert_eq!(build_symmetric(1).unwrap().order(), 1);
        let s3 = build_symmetric(3).unwrap();
        let d6 = build_dihedral(3).unwrap();
        assert_eq!(s3.order_statistics(), d6.order_statistics());
        assert_eq!(s3.class_sizes(), d6.class_sizes());
        assert_eq!(build_symmetric(4).unwrap().class_count(), 5);
        assert!(build_symmetric(6).is_err());
    }

    #[test]
    fn product_examples() {
        let c2 = build_cyclic(2).unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        assert_eq!(v.group.order(), 4);
        assert_eq!(v.group.exponent(), 2);
        let d8 = build_dihedral(4).unwrap();
        let c3 = build_cyclic(3).unwrap();
        let p = direct_product(&d8, &c3).unwrap();
        assert_eq!(p.group.order(), 24);
        assert_eq!(p.group.center().order(), 6);
        assert_eq!(p.group.class_count(), d8.class_count() * c3.class_count());
        assert!(p.left.is_normal() && p.right.is_normal());
        let c1 = build_cyclic(1).unwrap();
        let q = direct_product(&c1, &d8).unwrap();
        assert!(q.group.same_table(&d8));
    }
}
