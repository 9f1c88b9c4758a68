use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupHandle};

/// Isomorphism type `Z/d_1 + ... + Z/d_t` of a finite abelian group, with
/// every `d_i >= 2` and `d_i | d_{i+1}`. The empty list is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    divisors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants::default()
    }

    /// Validates an invariant factor list.
    pub fn new(divisors: Vec<u64>) -> Result<Self> {
        if divisors.iter().any(|&d| d < 2) {
            return Err(Error::invalid("invariant factors must be at least 2"));
        }
        if divisors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::invalid("invariant factors must form a divisibility chain"));
        }
        Ok(AbelianInvariants { divisors })
    }

    /// Normalizes arbitrary cyclic orders (ones allowed) into invariant factors.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &n in orders {
            for (p, e) in factorize(n) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        Self::from_prime_powers(by_prime)
    }

    fn from_prime_powers(mut by_prime: BTreeMap<u64, Vec<u64>>) -> Self {
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut divisors = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable();
            let offset = len - powers.len();
            for (i, q) in powers.iter().enumerate() {
                divisors[offset + i] *= q;
            }
        }
        AbelianInvariants { divisors }
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.divisors.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariants of an abelian subgroup, read off from counts of elements
/// killed by `p^k`.
pub fn invariants_of_subgroup(h: &SubgroupHandle) -> Result<AbelianInvariants> {
    if !h.is_abelian() {
        return Err(Error::invalid("subgroup is not abelian"));
    }
    let g = h.parent();
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for (p, e) in factorize(h.order() as u64) {
        // s[k] = log_p |{x : x^(p^k) = 1}|
        let mut s = vec![0u32];
        for k in 1..=e {
            let count = h.elements().iter().filter(|&&x| g.pow(x, p.pow(k)) == 0).count() as u64;
            s.push(count.ilog(p));
        }
        let at_least = |k: usize| -> u32 { if k <= e as usize { s[k] - s[k - 1] } else { 0 } };
        let mut powers = Vec::new();
        for k in 1..=e as usize {
            let exactly = at_least(k) - at_least(k + 1);
            powers.extend(std::iter::repeat(p.pow(k as u32)).take(exactly as usize));
        }
        by_prime.insert(p, powers);
    }
    Ok(AbelianInvariants::from_prime_powers(by_prime))
}

pub fn invariants_of_group(g: &FiniteGroup) -> Result<AbelianInvariants> {
    invariants_of_subgroup(&g.whole())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, build_dihedral, direct_product};

    #[test]
    fn normalizes_cyclic_orders() {
        let a = AbelianInvariants::from_cyclic_orders(&[4, 6, 1]);
        assert_eq!(a.divisors(), &[2, 12]);
        assert_eq!(a.order(), 24);
        assert!(AbelianInvariants::from_cyclic_orders(&[1, 1]).is_trivial());
        assert_eq!(AbelianInvariants::from_cyclic_orders(&[2, 3]).divisors(), &[6]);
        assert!(AbelianInvariants::new(vec![2, 3]).is_err());
        assert!(AbelianInvariants::new(vec![1]).is_err());
    }

    #[test]
    fn reads_invariants_from_groups() {
        let c4 = build_cyclic(4).unwrap();
        let c2 = build_cyclic(2).unwrap();
        let c6 = build_cyclic(6).unwrap();
        let p = direct_product(&c4, &c2).unwrap();
        assert_eq!(invariants_of_group(&p.group).unwrap().divisors(), &[2, 4]);
        let q = direct_product(&p.group, &c6).unwrap();
        assert_eq!(invariants_of_group(&q.group).unwrap().divisors(), &[2, 2, 12]);
        assert!(invariants_of_group(&build_cyclic(1).unwrap()).unwrap().is_trivial());
        assert!(invariants_of_group(&build_dihedral(3).unwrap()).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(AbelianInvariants::trivial().to_string(), "1");
        assert_eq!(AbelianInvariants::new(vec![2, 4]).unwrap().to_string(), "Z/2 x Z/4");
    }
}
