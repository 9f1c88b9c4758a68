//! Smith normal form over the integers for sparse matrices.
//!
//! Elimination pivots on an entry of minimal magnitude inside a column of
//! minimal fill, clears the column with row operations and the row with
//! column operations, and falls back to a smaller remainder whenever a
//! division is inexact. Once every pivot is isolated, pairs of pivots that
//! violate the divisibility chain are replaced by their gcd and lcm.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::sparse::{axpy, lookup, SparseIntMatrix, SparseVec};

/// Which transforms to record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnfOptions {
    pub track_u: bool,
    pub track_u_inv: bool,
    pub track_v: bool,
}

impl SnfOptions {
    pub const ALL: SnfOptions = SnfOptions { track_u: true, track_u_inv: true, track_v: true };
    pub const NONE: SnfOptions = SnfOptions { track_u: false, track_u_inv: false, track_v: false };
}

/// `U * M * V = S` with `S` diagonal, nonnegative, `s_1 | s_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// The `min(rows, cols)` diagonal entries of `S`.
    pub diagonal: Vec<BigInt>,
    pub u: Option<SparseIntMatrix>,
    pub u_inv: Option<SparseIntMatrix>,
    pub v: Option<SparseIntMatrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<(usize, BigInt)> {
        self.diagonal
            .iter()
            .enumerate()
            .filter(|(_, d)| *d > &BigInt::one())
            .map(|(i, d)| (i, d.clone()))
            .collect()
    }

    pub fn s_matrix(&self) -> SparseIntMatrix {
        let mut s = SparseIntMatrix::zeros(self.rows, self.cols);
        for (i, d) in self.diagonal.iter().enumerate() {
            s.set(i, i, d.clone());
        }
        s
    }
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    smith_normal_form_with(m, SnfOptions::ALL)
}

struct Pivot {
    row: usize,
    col: usize,
    value: BigInt,
}

struct Elimination {
    rows: Vec<SparseVec>,
    col_rows: Vec<BTreeSet<usize>>,
    col_done: Vec<bool>,
    u: Option<Vec<SparseVec>>,
    u_inv: Option<Vec<SparseVec>>,
    v: Option<Vec<SparseVec>>,
}

fn unit_vectors(n: usize) -> Vec<SparseVec> {
    (0..n).map(|i| vec![(i, BigInt::one())]).collect()
}

/// Quotient rounded to nearest, so the remainder has at most half the magnitude.
fn round_div(a: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(p);
    // floor remainder shares the sign of p; a = (q + 1) p + (r - p)
    if (&r * 2u32).abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

impl Elimination {
    /// `row[target] += c * row[source]`, on the matrix and all trackers.
    fn row_add(&mut self, target: usize, c: &BigInt, source: usize) {
        let src = std::mem::take(&mut self.rows[source]);
        let before: Vec<usize> = self.rows[target].iter().map(|&(i, _)| i).collect();
        axpy(&mut self.rows[target], c, &src);
        self.rows[source] = src;
        let mut after = self.rows[target].iter().map(|&(i, _)| i).peekable();
        let mut before = before.into_iter().peekable();
        loop {
            match (before.peek().copied(), after.peek().copied()) {
                (Some(b), Some(a)) if a == b => {
                    before.next();
                    after.next();
                }
                (Some(b), Some(a)) if b < a => {
                    self.col_rows[b].remove(&target);
                    before.next();
                }
                (Some(b), None) => {
                    self.col_rows[b].remove(&target);
                    before.next();
                }
                (_, Some(a)) => {
                    self.col_rows[a].insert(target);
                    after.next();
                }
                (None, None) => break,
            }
        }
        if let Some(u) = self.u.as_mut() {
            let src = std::mem::take(&mut u[source]);
            axpy(&mut u[target], c, &src);
            u[source] = src;
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // U^-1 <- U^-1 E^-1: column `source` -= c * column `target`.
            let tgt = std::mem::take(&mut ui[target]);
            axpy(&mut ui[source], &-c, &tgt);
            ui[target] = tgt;
        }
    }

    /// Column op `col[target] += c * col[source]` where column `source` is
    /// zero outside `pivot_row`.
    fn col_add_isolated(&mut self, target: usize, c: &BigInt, source: usize, pivot_row: usize) {
        let p = lookup(&self.rows[pivot_row], source).expect("pivot present").clone();
        let delta = c * p;
        let row = &mut self.rows[pivot_row];
        match row.binary_search_by_key(&target, |&(i, _)| i) {
            Ok(pos) => {
                row[pos].1 += &delta;
                if row[pos].1.is_zero() {
                    row.remove(pos);
                    self.col_rows[target].remove(&pivot_row);
                }
            }
            Err(pos) => {
                if !delta.is_zero() {
                    row.insert(pos, (target, delta));
                    self.col_rows[target].insert(pivot_row);
                }
            }
        }
        if let Some(v) = self.v.as_mut() {
            let src = std::mem::take(&mut v[source]);
            axpy(&mut v[target], c, &src);
            v[source] = src;
        }
    }

    fn entry(&self, r: usize, c: usize) -> &BigInt {
        lookup(&self.rows[r], c).expect("entry present")
    }

    fn choose_column(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (c, rows) in self.col_rows.iter().enumerate() {
            if self.col_done[c] || rows.is_empty() {
                continue;
            }
            if best.map_or(true, |(n, _)| rows.len() < n) {
                best = Some((rows.len(), c));
                if rows.len() == 1 {
                    break;
                }
            }
        }
        best.map(|(_, c)| c)
    }

    fn best_row_in_column(&self, c: usize) -> usize {
        *self.col_rows[c]
            .iter()
            .min_by(|&&a, &&b| {
                self.entry(a, c)
                    .abs()
                    .cmp(&self.entry(b, c).abs())
                    .then(self.rows[a].len().cmp(&self.rows[b].len()))
                    .then(a.cmp(&b))
            })
            .expect("column not empty")
    }

    fn best_col_in_row(&self, r: usize) -> usize {
        self.rows[r]
            .iter()
            .min_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(&b.0)))
            .expect("row not empty")
            .0
    }

    fn isolate(&mut self, mut r: usize, mut c: usize) -> Pivot {
        loop {
            let p = self.entry(r, c).clone();
            let others: Vec<usize> = self.col_rows[c].iter().copied().filter(|&x| x != r).collect();
            let mut dirty = false;
            for other in others {
                let a = self.entry(other, c).clone();
                let q = round_div(&a, &p);
                self.row_add(other, &-q, r);
                dirty |= self.col_rows[c].contains(&other);
            }
            if dirty {
                r = self.best_row_in_column(c);
                continue;
            }
            let targets: Vec<(usize, BigInt)> =
                self.rows[r].iter().filter(|(j, _)| *j != c).cloned().collect();
            for (j, a) in targets {
                let q = round_div(&a, &p);
                self.col_add_isolated(j, &-q, c, r);
            }
            if self.rows[r].len() > 1 {
                c = self.best_col_in_row(r);
                continue;
            }
            self.col_rows[c].remove(&r);
            self.rows[r].clear();
            self.col_done[c] = true;
            return Pivot { row: r, col: c, value: p };
        }
    }
}

/// Smith normal form recording only the requested transforms.
pub fn smith_normal_form_with(m: &SparseIntMatrix, options: SnfOptions) -> SmithForm {
    let (nr, nc) = (m.rows(), m.cols());
    let rows = m.row_vectors();
    let mut col_rows = vec![BTreeSet::new(); nc];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c].insert(r);
        }
    }
    let mut el = Elimination {
        rows,
        col_rows,
        col_done: vec![false; nc],
        u: options.track_u.then(|| unit_vectors(nr)),
        u_inv: options.track_u_inv.then(|| unit_vectors(nr)),
        v: options.track_v.then(|| unit_vectors(nc)),
    };
    let mut pivots = Vec::new();
    while let Some(c) = el.choose_column() {
        let r = el.best_row_in_column(c);
        pivots.push(el.isolate(r, c));
    }

    for p in &mut pivots {
        if p.value.is_negative() {
            p.value = -&p.value;
            if let Some(u) = el.u.as_mut() {
                for (_, x) in u[p.row].iter_mut() {
                    *x = -&*x;
                }
            }
            if let Some(ui) = el.u_inv.as_mut() {
                for (_, x) in ui[p.row].iter_mut() {
                    *x = -&*x;
                }
            }
        }
    }
    pivots.sort_by(|a, b| a.value.cmp(&b.value).then(a.row.cmp(&b.row)));
    fix_divisibility(&mut pivots, &mut el);

    let mut row_perm: Vec<usize> = pivots.iter().map(|p| p.row).collect();
    let mut used = vec![false; nr];
    for &r in &row_perm {
        used[r] = true;
    }
    row_perm.extend((0..nr).filter(|&r| !used[r]));
    let mut col_perm: Vec<usize> = pivots.iter().map(|p| p.col).collect();
    let mut used = vec![false; nc];
    for &c in &col_perm {
        used[c] = true;
    }
    col_perm.extend((0..nc).filter(|&c| !used[c]));

    let mut diagonal: Vec<BigInt> = pivots.iter().map(|p| p.value.clone()).collect();
    diagonal.resize(nr.min(nc), BigInt::zero());

    let u = el.u.map(|u| {
        let permuted: Vec<SparseVec> = row_perm.iter().map(|&r| u[r].clone()).collect();
        SparseIntMatrix::from_rows(nr, nr, &permuted)
    });
    let u_inv = el.u_inv.map(|ui| {
        let permuted: Vec<SparseVec> = row_perm.iter().map(|&r| ui[r].clone()).collect();
        SparseIntMatrix::from_cols(nr, nr, &permuted)
    });
    let v = el.v.map(|v| {
        let permuted: Vec<SparseVec> = col_perm.iter().map(|&c| v[c].clone()).collect();
        SparseIntMatrix::from_cols(nc, nc, &permuted)
    });
    SmithForm { rows: nr, cols: nc, diagonal, u, u_inv, v }
}

/// Enforces `s_i | s_j` for `i < j` by the unimodular 2x2 step
/// `diag(a, b) -> diag(gcd, lcm)`.
fn fix_divisibility(pivots: &mut [Pivot], el: &mut Elimination) {
    for i in 0..pivots.len() {
        for j in i + 1..pivots.len() {
            let a = pivots[i].value.clone();
            let b = pivots[j].value.clone();
            if (&b % &a).is_zero() {
                continue;
            }
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let (ri, rj) = (pivots[i].row, pivots[j].row);
            let (ci, cj) = (pivots[i].col, pivots[j].col);
            // rows: [x y; -b/g a/g]
            if let Some(u) = el.u.as_mut() {
                let (ui, uj) = (u[ri].clone(), u[rj].clone());
                let mut new_i = Vec::new();
                axpy(&mut new_i, &x, &ui);
                axpy(&mut new_i, &y, &uj);
                let mut new_j = Vec::new();
                axpy(&mut new_j, &-&bg, &ui);
                axpy(&mut new_j, &ag, &uj);
                u[ri] = new_i;
                u[rj] = new_j;
            }
            // columns of U^-1 times the inverse [a/g -y; b/g x]
            if let Some(uinv) = el.u_inv.as_mut() {
                let (ci_old, cj_old) = (uinv[ri].clone(), uinv[rj].clone());
                let mut new_i = Vec::new();
                axpy(&mut new_i, &ag, &ci_old);
                axpy(&mut new_i, &bg, &cj_old);
                let mut new_j = Vec::new();
                axpy(&mut new_j, &-&y, &ci_old);
                axpy(&mut new_j, &x, &cj_old);
                uinv[ri] = new_i;
                uinv[rj] = new_j;
            }
            // columns: [1 -y b/g; 1 x a/g]
            if let Some(v) = el.v.as_mut() {
                let (vi, vj) = (v[ci].clone(), v[cj].clone());
                let mut new_i = Vec::new();
                axpy(&mut new_i, &BigInt::one(), &vi);
                axpy(&mut new_i, &BigInt::one(), &vj);
                let mut new_j = Vec::new();
                axpy(&mut new_j, &-(&y * &bg), &vi);
                axpy(&mut new_j, &(&x * &ag), &vj);
                v[ci] = new_i;
                v[cj] = new_j;
            }
            pivots[i].value = g.clone();
            pivots[j].value = &a / &g * &b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &SparseIntMatrix) -> SmithForm {
        let snf = smith_normal_form(m);
        let u = snf.u.as_ref().unwrap();
        let v = snf.v.as_ref().unwrap();
        let ui = snf.u_inv.as_ref().unwrap();
        assert_eq!(u.mul(m).unwrap().mul(v).unwrap(), snf.s_matrix());
        assert_eq!(u.mul(ui).unwrap(), SparseIntMatrix::identity(m.rows()));
        assert!(u.is_unimodular().unwrap());
        assert!(v.is_unimodular().unwrap());
        snf
    }

    #[test]
    fn zero_matrix() {
        let m = SparseIntMatrix::zeros(3, 2);
        let snf = check(&m);
        assert_eq!(snf.rank(), 0);
        assert_eq!(snf.u.unwrap(), SparseIntMatrix::identity(3));
        assert_eq!(snf.v.unwrap(), SparseIntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let m = SparseIntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        let snf = check(&m);
        assert_eq!(snf.diagonal, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_is_fixed() {
        let snf = check(&SparseIntMatrix::identity(4));
        assert!(snf.diagonal.iter().all(|d| d.is_one()));
    }

    #[test]
    fn coprime_diagonal_becomes_gcd_lcm() {
        let m = SparseIntMatrix::from_dense(&[vec![4, 0], vec![0, 6]]);
        let snf = check(&m);
        assert_eq!(snf.diagonal, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn rectangular_with_remainders() {
        let m = SparseIntMatrix::from_dense(&[
            vec![6, 10, 15, 0],
            vec![4, 14, 0, 22],
            vec![9, 0, 21, 33],
        ]);
        let snf = check(&m);
        let d = &snf.diagonal;
        for w in d.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if n < k {
            return Vec::new();
        }
        let mut out = combinations(n - 1, k);
        for mut c in combinations(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }

    /// d_1 * ... * d_k = gcd of all k x k minors.
    fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<BigInt> {
        let (nr, nc) = (m.len(), m[0].len());
        let mut out = Vec::new();
        for k in 1..=nr.min(nc) {
            let mut g = BigInt::zero();
            for rs in combinations(nr, k) {
                for cs in combinations(nc, k) {
                    let minor: Vec<Vec<i64>> =
                        rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                    g = g.gcd(&SparseIntMatrix::from_dense(&minor).determinant().unwrap());
                }
            }
            out.push(g);
        }
        out
    }

    proptest::proptest! {
        #[test]
        fn matches_determinantal_divisors(
            m in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 4), 1..5)
        ) {
            let sm = SparseIntMatrix::from_dense(&m);
            let snf = check(&sm);
            for w in snf.diagonal.windows(2) {
                proptest::prop_assert!(w[1].is_zero() || (&w[1] % &w[0]).is_zero());
            }
            let mut prefix = BigInt::one();
            for (d, expected) in snf.diagonal.iter().zip(determinantal_divisors(&m)) {
                prefix *= d;
                proptest::prop_assert_eq!(&prefix, &expected);
            }
        }
    }
}
