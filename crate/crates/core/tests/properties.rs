//! Structural invariants on randomly assembled small groups.

use num_rational::Ratio;
use proptest::prelude::*;

use edlab::cover::{build_cover, exterior_degree_m};
use edlab::degree::{commuting_pairs, commutativity_degree, power_commutativity_degree, relative_degree};
use edlab::exterior::exterior_degree_of;
use edlab::fp::{free_reduce, parse_presentation, todd_coxeter};
use edlab::group::{
    build_cyclic, build_dihedral, build_quaternion, conjugacy_classes_under, direct_product, normal_subgroups, quotient,
    subgroup_closure, FiniteGroup, SubgroupHandle,
};
use edlab::homology::{bar_boundary, stem_cocycle};
use edlab::{Caps, Strategy as Enumeration};

fn factor() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (1usize..=8).prop_map(|n| build_cyclic(n).unwrap()),
        (1usize..=6).prop_map(|n| build_dihedral(n).unwrap()),
        (2usize..=4).prop_map(|n| build_quaternion(n).unwrap()),
    ]
}

/// A group of order at most 48: one factor, or a product of two.
fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        factor(),
        (factor(), factor())
            .prop_filter("order <= 48", |(a, b)| a.order() * b.order() <= 48)
            .prop_map(|(a, b)| direct_product(&a, &b).unwrap().group),
    ]
}

/// A group with two subgroups generated by random element seeds.
fn group_with_subgroups() -> impl Strategy<Value = (FiniteGroup, SubgroupHandle, SubgroupHandle)> {
    small_group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(0..n, 0..3), prop::collection::vec(0..n, 0..3)).prop_map(|(g, a, b)| {
            let h = subgroup_closure(&g, &a).unwrap();
            let k = subgroup_closure(&g, &b).unwrap();
            (g, h, k)
        })
    })
}

/// A group of order at most `max` with two random normal subgroups.
fn group_with_normals(max: usize) -> impl Strategy<Value = (FiniteGroup, SubgroupHandle, SubgroupHandle)> {
    small_group().prop_filter("order", move |g| g.order() <= max).prop_flat_map(|g| {
        let normals = normal_subgroups(&g);
        let n = normals.len();
        (Just(normals), 0..n, 0..n).prop_map(|(ns, i, j)| (ns[i].parent().clone(), ns[i].clone(), ns[j].clone()))
    })
}

fn cover_caps() -> Caps {
    Caps { cayley: 1024, ..Caps::default() }
}

fn closed(h: &SubgroupHandle) -> bool {
    let g = h.parent();
    h.contains(0) && h.elements().iter().all(|&x| h.contains(g.inv(x)) && h.elements().iter().all(|&y| h.contains(g.mul(x, y))))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn tables_are_groups(g in small_group()) {
        let n = g.order();
        for i in 0..n {
            prop_assert_eq!(g.mul(0, i), i);
            prop_assert_eq!(g.mul(i, 0), i);
            prop_assert_eq!(g.mul(i, g.inv(i)), 0);
            let mut row: Vec<usize> = (0..n).map(|j| g.mul(i, j)).collect();
            let mut col: Vec<usize> = (0..n).map(|j| g.mul(j, i)).collect();
            row.sort_unstable();
            col.sort_unstable();
            prop_assert!(row.iter().copied().eq(0..n));
            prop_assert!(col.iter().copied().eq(0..n));
        }
    }

    #[test]
    fn subgroups_are_closed_and_normality_is_exact((g, h, _k) in group_with_subgroups()) {
        prop_assert!(closed(&h));
        let normal = g.elements().all(|x| h.elements().iter().all(|&y| h.contains(g.conj(x, y))));
        prop_assert_eq!(h.is_normal(), normal);
        prop_assert_eq!(g.order() % h.order(), 0);
    }

    #[test]
    fn class_partitions((g, h, k) in group_with_normals(48)) {
        let p = conjugacy_classes_under(&k, &h).unwrap();
        let mut all: Vec<usize> = p.classes().iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(&all[..], h.elements());
        for (class, &x) in p.classes().iter().zip(p.representatives()) {
            prop_assert_eq!(k.order(), k.centralizer(x).order() * class.len());
            for &y in class {
                prop_assert!(k.elements().iter().any(|&c| g.conj(c, x) == y));
            }
        }
        let whole = g.whole();
        prop_assert_eq!(conjugacy_classes_under(&whole, &whole).unwrap().len(), g.class_count());
    }

    #[test]
    fn products_multiply_class_numbers(a in factor(), b in factor()) {
        let p = direct_product(&a, &b).unwrap().group;
        prop_assert_eq!(p.class_count(), a.class_count() * b.class_count());
    }

    #[test]
    fn trivial_quotient_keeps_order_statistics(g in small_group()) {
        let q = quotient(&g, &g.trivial()).unwrap();
        prop_assert_eq!(q.group.order_statistics(), g.order_statistics());
    }

    #[test]
    fn degree_identities((g, h, k) in group_with_normals(48)) {
        let d = commutativity_degree(&g).unwrap();
        let n = g.order() as u64;
        prop_assert_eq!(d.value(), Ratio::new(commuting_pairs(&g), n * n));
        prop_assert_eq!(d.value(), Ratio::new(g.class_count() as u64, n));
        let hk = relative_degree(&h, &k).unwrap();
        prop_assert_eq!(hk.value(), relative_degree(&k, &h).unwrap().value());
        prop_assert!(hk.value() <= Ratio::from_integer(1));
        prop_assert_eq!(hk.value(), Ratio::new(hk.numerator(), hk.denominator()));
    }

    #[test]
    fn power_commutativity_grows_along_prime_powers((_g, h, k) in group_with_normals(48), p in prop::sample::select(vec![2u64, 3])) {
        let mut prev = power_commutativity_degree(1, &h, &k).unwrap().value();
        for j in 1..4 {
            let next = power_commutativity_degree(p.pow(j), &h, &k).unwrap().value();
            prop_assert!(prev <= next);
            prev = next;
        }
    }

    #[test]
    fn boundaries_compose_to_zero(g in small_group().prop_filter("bar complex size", |g| g.order() <= 12)) {
        let caps = Caps::default();
        let d2 = bar_boundary(&g, 2, &caps).unwrap();
        let d3 = bar_boundary(&g, 3, &caps).unwrap();
        prop_assert_eq!(d2.mul(&d3).unwrap().nnz(), 0);
    }

    #[test]
    fn stem_covers(g in small_group().prop_filter("homology cap", |g| g.order() <= 24)) {
        let caps = cover_caps();
        let f = stem_cocycle(&g, &caps).unwrap();
        f.verify_cocycle().unwrap();
        let divisors = f.target.divisors();
        prop_assert!(divisors.iter().all(|&d| d >= 2));
        prop_assert!(divisors.windows(2).all(|w| w[1] % w[0] == 0));
        for x in g.elements() {
            prop_assert!(f.value(0, x).iter().all(|&v| v == 0));
            prop_assert!(f.value(x, 0).iter().all(|&v| v == 0));
        }
        let cov = build_cover(&g, &caps).unwrap();
        cov.verify().unwrap();
        prop_assert_eq!(
            cov.cover().derived_subgroup().order() as u64,
            cov.kernel().order() * g.derived_subgroup().order() as u64
        );
        for x in g.elements() {
            prop_assert!(cov.wedge_trivial(x, x));
            prop_assert!(cov.exterior_centralizer(x).unwrap().is_subgroup_of(&g.whole().centralizer(x)));
            for y in g.elements() {
                prop_assert_eq!(cov.wedge_trivial(x, y), cov.wedge_trivial(y, x));
            }
        }
        prop_assert!(cov.exterior_center().unwrap().is_subgroup_of(&g.center()));
        let dw = exterior_degree_m(&cov, 1).unwrap().value();
        let d = commutativity_degree(&g).unwrap().value();
        prop_assert!(dw <= d);
        if cov.kernel().is_trivial() {
            prop_assert_eq!(dw, d);
        }
    }

    #[test]
    fn exterior_degree_below_power_commutativity((g, h, k) in group_with_normals(24), m in 1u64..6) {
        let cov = build_cover(&g, &cover_caps()).unwrap();
        let dw = exterior_degree_of(&cov.pairing(&h, &k).unwrap(), m).unwrap().value();
        prop_assert!(dw <= power_commutativity_degree(m, &h, &k).unwrap().value());
    }

    #[test]
    fn cyclic_products_enumerate(a in 1usize..10, b in 1usize..10) {
        let p = parse_presentation(&format!("<x,y | x^{a}, y^{b}, x y x^-1 y^-1>")).unwrap();
        for s in [Enumeration::Hlt, Enumeration::Felsch] {
            let t = todd_coxeter(&p, &[], 100_000, s).unwrap();
            prop_assert!(t.is_complete());
            prop_assert_eq!(t.index(), a * b);
            t.verify().unwrap();
        }
        for r in p.relators() {
            prop_assert_eq!(&free_reduce(r), r);
        }
    }
}
