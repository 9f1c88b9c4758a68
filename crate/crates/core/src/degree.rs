//! Exact probabilistic invariants: commutativity degree `d(G)`, the relative
//! degree `d(H,K)`, the n-th relative nilpotency degree and the power
//! commutativity degree.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{conjugacy_classes_under, FiniteGroup, SubgroupHandle};

pub type Rational = Ratio<u64>;

/// Default limit on `|H|^n` for [`nilpotency_degree`].
pub const DEFAULT_TUPLE_BUDGET: u128 = 100_000_000;

/// How a degree value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClassCount,
    PairCount,
    Nilpotency,
    PowerCommutator,
    /// `h^m ∧ k` evaluated in `G ∧ G` through a stem cover.
    #[serde(rename = "via-G∧G")]
    ViaCover,
    /// `h^m ∧ k` evaluated in the enumerated `H ∧ K`.
    Presentation,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::ClassCount => "class-count",
            Method::PairCount => "pair-count",
            Method::Nilpotency => "nilpotency",
            Method::PowerCommutator => "power-commutator",
            Method::ViaCover => "via-G∧G",
            Method::Presentation => "fp",
            Method::ClosedForm => "closed-form",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeContext {
    pub m: Option<u64>,
    pub h_order: usize,
    pub k_order: usize,
    pub method: Method,
}

/// A reduced fraction in `(0, 1]` plus the context it was computed in.
#[derive(Clone, Debug)]
pub struct DegreeValue {
    value: Rational,
    pub context: DegreeContext,
}

impl PartialEq for DegreeValue {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for DegreeValue {}

impl DegreeValue {
    pub fn new(num: u64, den: u64, context: DegreeContext) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::Invariant(format!("degree {num}/{den} outside (0, 1]")));
        }
        Ok(DegreeValue { value: Rational::new(num, den), context })
    }

    pub(crate) fn from_ratio(value: Rational, context: DegreeContext) -> Result<Self> {
        Self::new(*value.numer(), *value.denom(), context)
    }

    pub fn numerator(&self) -> u64 {
        *self.value.numer()
    }

    pub fn denominator(&self) -> u64 {
        *self.value.denom()
    }

    pub fn value(&self) -> Rational {
        self.value
    }

    pub fn method(&self) -> Method {
        self.context.method
    }
}

impl fmt::Display for DegreeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl Serialize for DegreeValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("DegreeValue", 2)?;
        s.serialize_field("num", &self.numerator())?;
        s.serialize_field("den", &self.denominator())?;
        s.end()
    }
}

fn context(m: Option<u64>, h: usize, k: usize, method: Method) -> DegreeContext {
    DegreeContext { m, h_order: h, k_order: k, method }
}

/// Number of ordered commuting pairs in `G`.
pub fn commuting_pairs(g: &FiniteGroup) -> u64 {
    g.elements().map(|x| g.elements().filter(|&y| g.commutes(x, y)).count() as u64).sum()
}

/// `d(G) = k(G)/|G|`, cross-checked against the commuting pair count.
pub fn commutativity_degree(g: &FiniteGroup) -> Result<DegreeValue> {
    let n = g.order() as u64;
    let by_classes = DegreeValue::new(
        g.class_count() as u64,
        n,
        context(None, g.order(), g.order(), Method::ClassCount),
    )?;
    let by_pairs = Rational::new(commuting_pairs(g), n * n);
    if by_pairs != by_classes.value() {
        return Err(Error::Invariant(format!(
            "class count gives {by_classes}, pair count gives {by_pairs}"
        )));
    }
    Ok(by_classes)
}

/// `d(H,K) = |{(h,k) : [h,k] = 1}| / (|H||K|)`.
///
/// When `H` is stable under conjugation by `K`, the class form `k_K(H)/|H|`
/// is evaluated too and must agree.
pub fn relative_degree(h: &SubgroupHandle, k: &SubgroupHandle) -> Result<DegreeValue> {
    if !h.parent().same_group(k.parent()) {
        return Err(Error::ParentMismatch);
    }
    let pairs: u64 = h.elements().iter().map(|&x| k.centralizer(x).order() as u64).sum();
    let value = DegreeValue::new(
        pairs,
        (h.order() * k.order()) as u64,
        context(None, h.order(), k.order(), Method::PairCount),
    )?;
    match conjugacy_classes_under(k, h) {
        Ok(classes) => {
            let by_classes = Rational::new(classes.len() as u64, h.order() as u64);
            if by_classes != value.value() {
                return Err(Error::Invariant(format!(
                    "d(H,K) by classes {by_classes} differs from pair count {value}"
                )));
            }
        }
        Err(Error::NotStable) => {}
        Err(e) => return Err(e),
    }
    Ok(value)
}

/// `d^(n)(H,G)`: probability that the left-normed commutator
/// `[h_1, ..., h_n, g]` is trivial.
pub fn nilpotency_degree(n: u32, h: &SubgroupHandle, budget: u128) -> Result<DegreeValue> {
    if n == 0 {
        return Err(Error::invalid("nilpotency degree needs n >= 1"));
    }
    let g = h.parent();
    let tuples = (h.order() as u128).checked_pow(n).unwrap_or(u128::MAX);
    if tuples > budget {
        return Err(Error::Budget { needed: tuples, budget });
    }
    // Distribution of [h_1, ..., h_i] over G.
    let mut dist = vec![0u128; g.order()];
    for &x in h.elements() {
        dist[x] += 1;
    }
    for _ in 1..n {
        let mut next = vec![0u128; g.order()];
        for (w, &count) in dist.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for &x in h.elements() {
                next[g.commutator(w, x)] += count;
            }
        }
        dist = next;
    }
    let whole = g.whole();
    let numerator: u128 = dist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(w, &c)| c * whole.centralizer(w).order() as u128)
        .sum();
    let denominator = tuples * g.order() as u128;
    let reduced = num_integer::gcd(numerator, denominator);
    let (num, den) = (numerator / reduced, denominator / reduced);
    let num = u64::try_from(num).map_err(|_| Error::Budget { needed: numerator, budget })?;
    let den = u64::try_from(den).map_err(|_| Error::Budget { needed: denominator, budget })?;
    DegreeValue::new(num, den, context(None, h.order(), g.order(), Method::Nilpotency))
}

/// `|{(h,k) : [h^m, k] = 1}| / (|H||K|)`.
pub fn power_commutativity_degree(
    m: u64,
    h: &SubgroupHandle,
    k: &SubgroupHandle,
) -> Result<DegreeValue> {
    if m == 0 {
        return Err(Error::invalid("m must be positive"));
    }
    if !h.parent().same_group(k.parent()) {
        return Err(Error::ParentMismatch);
    }
    let g = h.parent();
    let pairs: u64 =
        h.elements().iter().map(|&x| k.centralizer(g.pow(x, m)).order() as u64).sum();
    DegreeValue::new(
        pairs,
        (h.order() * k.order()) as u64,
        context(Some(m), h.order(), k.order(), Method::PowerCommutator),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        build_cyclic, build_dihedral, build_quaternion, build_symmetric, subgroup_closure,
    };

    fn frac(d: &DegreeValue) -> (u64, u64) {
        (d.numerator(), d.denominator())
    }

    #[test]
    fn commutativity_examples() {
        assert_eq!(frac(&commutativity_degree(&build_cyclic(7).unwrap()).unwrap()), (1, 1));
        assert_eq!(frac(&commutativity_degree(&build_symmetric(3).unwrap()).unwrap()), (1, 2));
        assert_eq!(frac(&commutativity_degree(&build_dihedral(4).unwrap()).unwrap()), (5, 8));
    }

    #[test]
    fn relative_examples() {
        let d8 = build_dihedral(4).unwrap();
        let w = d8.whole();
        assert_eq!(frac(&relative_degree(&w, &d8.trivial()).unwrap()), (1, 1));
        let rot = subgroup_closure(&d8, &[1]).unwrap();
        assert_eq!(frac(&relative_degree(&rot, &w).unwrap()), (3, 4));
        assert_eq!(relative_degree(&w, &w).unwrap(), commutativity_degree(&d8).unwrap());
    }

    #[test]
    fn nilpotency_examples() {
        let d8 = build_dihedral(4).unwrap();
        let w = d8.whole();
        assert_eq!(
            nilpotency_degree(1, &w, DEFAULT_TUPLE_BUDGET).unwrap(),
            commutativity_degree(&d8).unwrap()
        );
        assert_eq!(frac(&nilpotency_degree(2, &w, DEFAULT_TUPLE_BUDGET).unwrap()), (1, 1));
        let rot = subgroup_closure(&d8, &[1]).unwrap();
        assert_eq!(frac(&nilpotency_degree(1, &rot, DEFAULT_TUPLE_BUDGET).unwrap()), (3, 4));
        assert!(matches!(nilpotency_degree(30, &w, DEFAULT_TUPLE_BUDGET), Err(Error::Budget { .. })));
        assert!(nilpotency_degree(0, &w, DEFAULT_TUPLE_BUDGET).is_err());
    }

    #[test]
    fn nilpotency_matches_brute_force_on_s3() {
        // [h1, h2, g] over S3 by direct enumeration of all triples.
        let s3 = build_symmetric(3).unwrap();
        let mut hits = 0u64;
        for a in s3.elements() {
            for b in s3.elements() {
                let c = s3.commutator(a, b);
                hits += s3.elements().filter(|&g| s3.commutator(c, g) == 0).count() as u64;
            }
        }
        let d = nilpotency_degree(2, &s3.whole(), DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(d.value(), Rational::new(hits, 216));
    }

    #[test]
    fn power_commutativity_examples() {
        let d8 = build_dihedral(4).unwrap();
        let w = d8.whole();
        assert_eq!(frac(&power_commutativity_degree(4, &w, &w).unwrap()), (1, 1));
        // every square in D8 is central
        assert_eq!(frac(&power_commutativity_degree(2, &w, &w).unwrap()), (1, 1));
        let q8 = build_quaternion(2).unwrap();
        let wq = q8.whole();
        assert_eq!(frac(&power_commutativity_degree(1, &wq, &wq).unwrap()), (5, 8));
    }

    #[test]
    fn serializes_as_fraction() {
        let d = commutativity_degree(&build_dihedral(4).unwrap()).unwrap();
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"num":5,"den":8}"#);
    }
}
