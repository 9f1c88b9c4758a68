//! Quantities defined by an exterior pairing `H x K -> H ∧ K`: exterior
//! centralizers, the relative exterior center, `d^∧_m(H,K)` and its class-sum
//! form with the `α(m,i)` table. The pairing itself comes either from a stem
//! cover or from an enumerated presentation.

use num_integer::Integer;
use serde::Serialize;

use crate::degree::{DegreeContext, DegreeValue, Method, Rational};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes_under, ClassPartition, SubgroupHandle};

pub trait ExteriorPairing {
    fn left(&self) -> &SubgroupHandle;
    fn right(&self) -> &SubgroupHandle;
    /// Whether `h ∧ k` is trivial, for `h` in the left and `k` in the right subgroup.
    fn wedge_trivial(&self, h: usize, k: usize) -> bool;
    fn method(&self) -> Method;
}

/// `C^∧_K(x) = {k in K : x ∧ k = 1}` for `x` in `H`, checked to be a
/// subgroup of `C_K(x)`.
pub fn exterior_centralizer_in<P: ExteriorPairing + ?Sized>(p: &P, x: usize) -> Result<SubgroupHandle> {
    let h = p.left();
    if !h.contains(x) {
        return Err(Error::invalid(format!("element {x} is not in H")));
    }
    let k = p.right();
    let elements: Vec<usize> = k.elements().iter().copied().filter(|&y| p.wedge_trivial(x, y)).collect();
    let c = SubgroupHandle::from_elements(k.parent(), elements)
        .map_err(|_| Error::Invariant(format!("exterior centralizer of {x} is not a subgroup")))?;
    if !c.is_subgroup_of(&k.centralizer(x)) {
        return Err(Error::Invariant(format!("exterior centralizer of {x} exceeds its centralizer")));
    }
    Ok(c)
}

/// `Z^∧(H,K) = {h in H : h ∧ k = 1 for all k in K}`.
pub fn relative_exterior_center_of<P: ExteriorPairing + ?Sized>(p: &P) -> Result<SubgroupHandle> {
    let h = p.left();
    let k = p.right();
    let elements: Vec<usize> = h
        .elements()
        .iter()
        .copied()
        .filter(|&x| k.elements().iter().all(|&y| p.wedge_trivial(x, y)))
        .collect();
    SubgroupHandle::from_elements(h.parent(), elements)
        .map_err(|_| Error::Invariant("exterior center is not a subgroup".into()))
}

fn exterior_centralizer_order<P: ExteriorPairing + ?Sized>(p: &P, x: usize) -> u64 {
    p.right().elements().iter().filter(|&&y| p.wedge_trivial(x, y)).count() as u64
}

fn check_m(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::invalid("m must be positive"));
    }
    Ok(())
}

/// `d^∧_m(H,K) = (1/|H||K|) Σ_h |C^∧_K(h^m)|`.
pub fn exterior_degree_of<P: ExteriorPairing + ?Sized>(p: &P, m: u64) -> Result<DegreeValue> {
    check_m(m)?;
    let (h, k) = (p.left(), p.right());
    let g = h.parent();
    let total: u64 = h.elements().iter().map(|&x| exterior_centralizer_order(p, g.pow(x, m))).sum();
    DegreeValue::new(
        total,
        (h.order() * k.order()) as u64,
        DegreeContext { m: Some(m), h_order: h.order(), k_order: k.order(), method: p.method() },
    )
}

/// Per-class data of the class-sum formula for one `m`.
#[derive(Clone, Debug, Serialize)]
pub struct AlphaTable {
    #[serde(skip)]
    pub partition: ClassPartition,
    pub m: u64,
    pub representatives: Vec<usize>,
    /// `|C_K(h_i^m)| / |C_K(h_i)|`.
    pub alpha: Vec<u64>,
    /// `|L(m,i;h,K)| = |C_K(h_i^m)| / |C^∧_K(h_i^m)|`.
    pub l_orders: Vec<u64>,
    pub beta: u64,
    pub gamma: u64,
}

/// `d^∧_m(H,K) = (1/|H|) Σ_i α(m,i) |C^∧_K(h_i^m)| / |C_K(h_i^m)|` over the
/// `K`-classes of `H`, cross-checked against the direct pair count.
pub fn degree_via_classes_of<P: ExteriorPairing + ?Sized>(
    p: &P,
    m: u64,
) -> Result<(DegreeValue, AlphaTable)> {
    check_m(m)?;
    let (h, k) = (p.left(), p.right());
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    let g = h.parent();
    let partition = conjugacy_classes_under(k, h)?;
    let mut alpha = Vec::with_capacity(partition.len());
    let mut l_orders = Vec::with_capacity(partition.len());
    let mut sum = Rational::from_integer(0);
    for &x in partition.representatives() {
        let xm = g.pow(x, m);
        let c = k.centralizer(x).order() as u64;
        let cm = k.centralizer(xm).order() as u64;
        let cw = exterior_centralizer_in(p, xm)?.order() as u64;
        if cm % c != 0 || cm % cw != 0 {
            return Err(Error::Invariant(format!("non-integral index at representative {x}")));
        }
        let a = cm / c;
        alpha.push(a);
        l_orders.push(cm / cw);
        sum += Rational::new(a * cw, cm);
    }
    let value = sum / Rational::from_integer(h.order() as u64);
    let direct = exterior_degree_of(p, m)?;
    if value != direct.value() {
        return Err(Error::Invariant(format!("class sum gives {value}, pair count gives {direct}")));
    }
    let beta = alpha.iter().copied().min().unwrap_or(1);
    let gamma = alpha.iter().copied().max().unwrap_or(1);
    let table = AlphaTable {
        representatives: partition.representatives().to_vec(),
        partition,
        m,
        alpha,
        l_orders,
        beta,
        gamma,
    };
    Ok((direct, table))
}

fn closed_form(n: u64, m: u64, order: usize) -> Result<DegreeValue> {
    let t = n.gcd(&m);
    let num = if m % 2 == 0 { 3 * n + t } else { n + t + 2 };
    let ctx = DegreeContext { m: Some(m), h_order: order, k_order: order, method: Method::ClosedForm };
    DegreeValue::from_ratio(Rational::new(num, 4 * n), ctx)
}

/// `d^∧_m(D_2n)`: `(3n + t)/4n` for even `m`, `(n + t + 2)/4n` for odd `m`, `t = gcd(m,n)`.
pub fn closed_form_dihedral(n: u64, m: u64) -> Result<DegreeValue> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    check_m(m)?;
    closed_form(n, m, 2 * n as usize)
}

/// `d^∧_m(Q_n)`, the same piecewise expression as the dihedral case.
pub fn closed_form_quaternion(n: u64, m: u64) -> Result<DegreeValue> {
    if n < 2 {
        return Err(Error::invalid("quaternion family needs n >= 2"));
    }
    check_m(m)?;
    closed_form(n, m, 4 * n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, build_dihedral, FiniteGroup};

    /// Pairing in which only commuting pairs are trivial.
    struct Commutator(SubgroupHandle, SubgroupHandle);

    impl ExteriorPairing for Commutator {
        fn left(&self) -> &SubgroupHandle {
            &self.0
        }
        fn right(&self) -> &SubgroupHandle {
            &self.1
        }
        fn wedge_trivial(&self, h: usize, k: usize) -> bool {
            self.0.parent().commutes(h, k)
        }
        fn method(&self) -> Method {
            Method::PairCount
        }
    }

    fn frac(d: &DegreeValue) -> (u64, u64) {
        (d.numerator(), d.denominator())
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(frac(&closed_form_dihedral(4, 1).unwrap()), (7, 16));
        assert_eq!(frac(&closed_form_dihedral(4, 2).unwrap()), (7, 8));
        assert_eq!(frac(&closed_form_dihedral(5, 5).unwrap()), (3, 5));
        assert_eq!(frac(&closed_form_quaternion(2, 1).unwrap()), (5, 8));
        assert_eq!(frac(&closed_form_quaternion(2, 2).unwrap()), (1, 1));
        assert_eq!(frac(&closed_form_quaternion(3, 3).unwrap()), (2, 3));
        assert!(closed_form_quaternion(1, 1).is_err());
        assert!(closed_form_dihedral(3, 0).is_err());
    }

    #[test]
    fn commutator_pairing_recovers_degree() {
        let d8: FiniteGroup = build_dihedral(4).unwrap();
        let p = Commutator(d8.whole(), d8.whole());
        assert_eq!(frac(&exterior_degree_of(&p, 1).unwrap()), (5, 8));
        let (v, t) = degree_via_classes_of(&p, 1).unwrap();
        assert_eq!(frac(&v), (5, 8));
        assert_eq!(t.alpha.len(), 5);
        assert!(t.l_orders.iter().all(|&l| l == 1));
        let (_, t2) = degree_via_classes_of(&p, 2).unwrap();
        assert_eq!((t2.beta, t2.gamma), (1, 2));
        assert_eq!(relative_exterior_center_of(&p).unwrap(), d8.center());
    }

    #[test]
    fn trivial_right_factor() {
        let c4 = build_cyclic(4).unwrap();
        let p = Commutator(c4.whole(), c4.trivial());
        assert!(relative_exterior_center_of(&p).unwrap().is_whole());
        assert!(exterior_centralizer_in(&p, 7).is_err());
    }
}
