//! Concrete finite groups stored as Cayley tables.
//!
//! Element `0` is always the identity. Every constructor fixes and documents
//! its element numbering so that downstream tables (class representatives,
//! alpha tables, CSV sweeps) are reproducible byte for byte.

mod families;
mod io;
mod perm;
mod subgroup;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Caps;
use crate::error::{Error, Result};

pub use families::{
    build_cyclic, build_dihedral, build_quaternion, build_symmetric, direct_product, DirectProduct,
};
pub use io::{read_table_json, write_table_json, TableFile};
pub use perm::{from_permutations, from_permutations_with_cap, parse_cycles, Permutation};
pub use subgroup::{
    commutator_subgroup, conjugacy_classes_under, normal_subgroups, quotient, subgroup_closure,
    ClassPartition, Quotient, SubgroupHandle,
};

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 128;

struct GroupData {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
}

/// A finite group of order `n` given by its multiplication table.
///
/// Cloning is cheap: the table is shared.
#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order()).finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a nested table, `table[i][j]` being the index of
    /// `g_i * g_j`. Labels default to `g0, g1, ...`.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::NotAGroup(format!("entry {v} out of range in row {i}")));
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat(order, flat, labels)
    }

    /// Same as [`FiniteGroup::from_table`] with a row-major flat table.
    pub fn from_flat(order: usize, table: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        Self::from_flat_capped(order, table, labels, Caps::default().cayley)
    }

    pub(crate) fn from_flat_capped(
        order: usize,
        table: Vec<u32>,
        labels: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if order > cap {
            return Err(Error::CapExceeded { what: "group order".into(), size: order, cap });
        }
        if table.len() != order * order {
            return Err(Error::NotAGroup("table is not square".into()));
        }
        let labels = match labels {
            Some(l) if l.len() == order => l,
            Some(l) => {
                return Err(Error::NotAGroup(format!(
                    "{} labels for {order} elements",
                    l.len()
                )))
            }
            None => (0..order).map(|i| format!("g{i}")).collect(),
        };
        let inverse = validate(order, &table)?;
        Ok(FiniteGroup { data: Arc::new(GroupData { order, table, inverse, labels }) })
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.table[a * self.data.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.data.inverse[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.data.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// `x^m` for a non-negative exponent, by repeated squaring.
    pub fn pow(&self, x: usize, m: u64) -> usize {
        let mut result = 0;
        let mut base = x;
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `x^m` for a signed exponent.
    pub fn pow_signed(&self, x: usize, m: i64) -> usize {
        let p = self.pow(x, m.unsigned_abs());
        if m < 0 {
            self.inv(p)
        } else {
            p
        }
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements().map(|x| self.element_order(x)).fold(1, num_integer::lcm)
    }

    /// `^g x = g x g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[x, y] = x y x^-1 y^-1`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|x| (x..self.order()).all(|y| self.commutes(x, y)))
    }

    pub fn whole(&self) -> SubgroupHandle {
        SubgroupHandle::whole(self)
    }

    pub fn trivial(&self) -> SubgroupHandle {
        SubgroupHandle::trivial(self)
    }

    pub fn center(&self) -> SubgroupHandle {
        let elems = self
            .elements()
            .filter(|&z| self.elements().all(|g| self.commutes(z, g)))
            .collect();
        SubgroupHandle::from_verified(self, elems)
    }

    pub fn derived_subgroup(&self) -> SubgroupHandle {
        let w = self.whole();
        commutator_subgroup(&w, &w).expect("same parent")
    }

    /// Number of conjugacy classes `k(G)`.
    pub fn class_count(&self) -> usize {
        let w = self.whole();
        conjugacy_classes_under(&w, &w).expect("G is G-stable").len()
    }

    /// Multiset of element orders, keyed by order.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut stats = BTreeMap::new();
        for x in self.elements() {
            *stats.entry(self.element_order(x)).or_insert(0) += 1;
        }
        stats
    }

    /// Sorted conjugacy class sizes.
    pub fn class_sizes(&self) -> Vec<usize> {
        let w = self.whole();
        let mut sizes: Vec<usize> = conjugacy_classes_under(&w, &w)
            .expect("G is G-stable")
            .classes()
            .iter()
            .map(Vec::len)
            .collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|i| (0..n).map(|j| self.mul(i, j)).collect()).collect()
    }

    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    /// Equality of the multiplication tables (same numbering).
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.data.table == other.data.table
    }
}

/// Checks the group axioms and returns the inverse map.
fn validate(order: usize, table: &[u32]) -> Result<Vec<u32>> {
    let at = |i: usize, j: usize| table[i * order + j] as usize;
    for j in 0..order {
        if at(0, j) != j || at(j, 0) != j {
            return Err(Error::NotAGroup(format!("element 0 is not an identity (column/row {j})")));
        }
    }
    let mut seen = vec![usize::MAX; order];
    for i in 0..order {
        for j in 0..order {
            let v = at(i, j);
            if v >= order {
                return Err(Error::NotAGroup(format!("entry {v} out of range")));
            }
            if seen[v] == i {
                return Err(Error::NotAGroup(format!("row {i} repeats element {v}")));
            }
            seen[v] = i;
        }
    }
    let mut seen = vec![usize::MAX; order];
    for j in 0..order {
        for i in 0..order {
            let v = at(i, j);
            if seen[v] == j {
                return Err(Error::NotAGroup(format!("column {j} repeats element {v}")));
            }
            seen[v] = j;
        }
    }
    let mut inverse = vec![0u32; order];
    for i in 0..order {
        let j = (0..order).find(|&j| at(i, j) == 0).expect("latin square row contains identity");
        if at(j, i) != 0 {
            return Err(Error::NotAGroup(format!("element {i} has no two-sided inverse")));
        }
        inverse[i] = j as u32;
    }
    let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
    if order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
        for _ in 0..10 * order * order {
            let (a, b, c) =
                (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order));
            if !assoc(a, b, c) {
                return Err(Error::NotAGroup(format!("not associative at ({a},{b},{c})")));
            }
        }
    }
    Ok(inverse)
}
