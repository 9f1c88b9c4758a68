use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse integer vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, BigInt)>;

/// `target += c * src`.
pub(crate) fn axpy(target: &mut SparseVec, c: &BigInt, src: &[(usize, BigInt)]) {
    if c.is_zero() || src.is_empty() {
        return;
    }
    let old = std::mem::take(target);
    let mut out = Vec::with_capacity(old.len() + src.len());
    let mut a = old.into_iter().peekable();
    let mut b = src.iter().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some(&(i, _)), Some(&&(j, _))) if i == j => {
                let (_, x) = a.next().expect("peeked");
                let (_, y) = b.next().expect("peeked");
                let v = x + c * y;
                if !v.is_zero() {
                    out.push((i, v));
                }
            }
            (Some(&(i, _)), Some(&&(j, _))) if i < j => out.push(a.next().expect("peeked")),
            (Some(_), Some(_)) | (None, Some(_)) => {
                let (j, y) = b.next().expect("peeked");
                out.push((*j, c * y));
            }
            (Some(_), None) => out.push(a.next().expect("peeked")),
            (None, None) => break,
        }
    }
    *target = out;
}

pub(crate) fn lookup(v: &[(usize, BigInt)], index: usize) -> Option<&BigInt> {
    v.binary_search_by_key(&index, |&(i, _)| i).ok().map(|p| &v[p].1)
}

/// An integer matrix with arbitrary-precision entries; zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, BigInt::from(v));
            }
        }
        m
    }

    pub(crate) fn from_rows(rows: usize, cols: usize, data: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, row) in data.iter().enumerate() {
            for (c, v) in row {
                m.entries.insert((r, *c), v.clone());
            }
        }
        m
    }

    pub(crate) fn from_cols(rows: usize, cols: usize, data: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (c, col) in data.iter().enumerate() {
            for (r, v) in col {
                m.entries.insert((*r, c), v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub(crate) fn add_to(&mut self, r: usize, c: usize, v: i64) {
        let e = self.entries.entry((r, c)).or_default();
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            d[r][c] = v.clone();
        }
        d
    }

    pub(crate) fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let rhs = other.row_vectors();
        let mut out: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (&(r, k), v) in &self.entries {
            axpy(&mut out[r], v, &rhs[k]);
        }
        Ok(SparseIntMatrix::from_rows(self.rows, other.cols, &out))
    }

    /// `M * x` for a sparse column vector `x`.
    pub fn apply(&self, x: &[(usize, BigInt)]) -> SparseVec {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            if let Some(xc) = lookup(x, c) {
                *acc.entry(r).or_default() += v * xc;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|&(r, c)| r == c)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::invalid("determinant of a non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.determinant()?.abs().is_one())
    }

    /// Text dump: a `rows cols nnz` header, then one `r c v` triple per line.
    pub fn to_triples(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for (r, c, v) in self.iter() {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }

    pub fn from_triples(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::parse(0, "missing header"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(0, "bad header")))
            .collect::<Result<_>>()?;
        if nums.len() != 3 {
            return Err(Error::parse(0, "header must be `rows cols nnz`"));
        }
        let mut m = Self::zeros(nums[0], nums[1]);
        let mut count = 0;
        for (k, line) in lines.enumerate() {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::parse(k + 1, format!("bad triple `{line}`"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let r: usize = parts[0].parse().map_err(|_| bad())?;
            let c: usize = parts[1].parse().map_err(|_| bad())?;
            let v: BigInt = parts[2].parse().map_err(|_| bad())?;
            if r >= m.rows || c >= m.cols {
                return Err(bad());
            }
            m.set(r, c, v);
            count += 1;
        }
        if count != nums[2] {
            return Err(Error::parse(0, format!("header announces {} entries, found {count}", nums[2])));
        }
        Ok(m)
    }
}
