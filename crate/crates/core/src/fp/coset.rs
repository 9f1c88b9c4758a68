//! Todd–Coxeter coset enumeration.
//!
//! Coincidences are processed with a queue and union by least index. The HLT
//! strategy scans every relator at each coset in turn, filling gaps as it
//! goes, and runs a lookahead pass when the table fills up. The Felsch
//! strategy defines the first empty entry and immediately processes every
//! deduction against all cyclic conjugates of the relators. Both finish with
//! a checking pass over every relator at every live coset.

use crate::config::Strategy;
use crate::error::{Error, Result};

use super::presentation::{cyclic_reduce, invert, Letter, Presentation, Word};

const NONE: u32 = u32::MAX;

/// Upper bound on stored table entries, independent of the row cap.
const MAX_ENTRIES: usize = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationStatus {
    Complete,
    /// The row limit was reached before the table closed.
    Capped,
}

/// Live cosets numbered in breadth-first order from coset 0 (the subgroup).
#[derive(Clone, Debug)]
pub struct CosetTable {
    presentation: Presentation,
    subgroup: Vec<Word>,
    cols: usize,
    table: Vec<u32>,
    status: EnumerationStatus,
    /// Most rows in use at once.
    pub peak_rows: usize,
}

impl CosetTable {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn subgroup(&self) -> &[Word] {
        &self.subgroup
    }

    pub fn status(&self) -> EnumerationStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == EnumerationStatus::Complete
    }

    /// Number of live cosets.
    pub fn index(&self) -> usize {
        if self.cols == 0 {
            1
        } else {
            self.table.len() / self.cols
        }
    }

    pub fn columns(&self) -> usize {
        self.cols
    }

    pub fn get(&self, coset: usize, letter: Letter) -> Option<usize> {
        match self.table[coset * self.cols + letter as usize] {
            NONE => None,
            v => Some(v as usize),
        }
    }

    /// `coset . w`, or `None` if an entry on the way is undefined.
    pub fn act(&self, coset: usize, w: &[Letter]) -> Option<usize> {
        w.iter().try_fold(coset, |c, &l| self.get(c, l))
    }

    /// Every entry defined, inverse entries consistent, every relator and
    /// subgroup generator closing up where required.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        for c in 0..self.index() {
            for l in 0..self.cols as Letter {
                match self.get(c, l) {
                    None => return fail(format!("coset {c} has no image under letter {l}")),
                    Some(d) if self.get(d, l ^ 1) != Some(c) => {
                        return fail(format!("inverse entry missing at coset {c}, letter {l}"))
                    }
                    _ => {}
                }
            }
            for r in self.presentation.relators() {
                if self.act(c, r) != Some(c) {
                    return fail(format!("relator fails to close at coset {c}"));
                }
            }
        }
        for w in &self.subgroup {
            if self.act(0, w) != Some(0) {
                return fail("subgroup generator moves the base coset".into());
            }
        }
        Ok(())
    }
}

struct Enumerator {
    cols: usize,
    max_rows: usize,
    table: Vec<u32>,
    /// `forward[c] == c` for live cosets; otherwise points towards the survivor.
    forward: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    last: u32,
    live: usize,
    peak: usize,
    deductions: Vec<(u32, Letter)>,
    record_deductions: bool,
}

impl Enumerator {
    fn new(cols: usize, max_rows: usize) -> Self {
        let mut e = Enumerator {
            cols,
            max_rows,
            table: vec![NONE; cols],
            forward: vec![0],
            next: vec![NONE],
            prev: vec![NONE],
            last: 0,
            live: 1,
            peak: 1,
            deductions: Vec::new(),
            record_deductions: false,
        };
        e.table.reserve(cols * 64);
        e
    }

    #[inline]
    fn at(&self, c: u32, l: Letter) -> u32 {
        self.table[c as usize * self.cols + l as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, l: Letter, d: u32) {
        self.table[c as usize * self.cols + l as usize] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn rows(&self) -> usize {
        self.forward.len()
    }

    /// New coset `d` with `c . l = d`; `None` when out of rows.
    fn define(&mut self, c: u32, l: Letter) -> Option<u32> {
        if self.rows() >= self.max_rows {
            return None;
        }
        let d = self.rows() as u32;
        self.table.extend(std::iter::repeat(NONE).take(self.cols));
        self.forward.push(d);
        self.next.push(NONE);
        self.prev.push(NONE);
        self.next[self.last as usize] = d;
        self.prev[d as usize] = self.last;
        self.next[d as usize] = NONE;
        self.last = d;
        self.live += 1;
        self.peak = self.peak.max(self.live);
        self.set(c, l, d);
        self.set(d, l ^ 1, c);
        if self.record_deductions {
            self.deductions.push((c, l));
        }
        Some(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.forward[r as usize] != r {
            r = self.forward[r as usize];
        }
        let mut x = c;
        while self.forward[x as usize] != r {
            let nx = self.forward[x as usize];
            self.forward[x as usize] = r;
            x = nx;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.forward[hi as usize] = lo;
        queue.push(hi);
    }

    /// Removes `c` from the live list; `next[c]` is kept so a cursor
    /// standing on `c` can still move forward.
    fn unlink(&mut self, c: u32) {
        let (p, n) = (self.prev[c as usize], self.next[c as usize]);
        self.next[p as usize] = n;
        if n == NONE {
            self.last = p;
        } else {
            self.prev[n as usize] = p;
        }
        self.live -= 1;
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for l in 0..self.cols as Letter {
                let f = self.at(e, l);
                if f == NONE {
                    continue;
                }
                if self.at(f, l ^ 1) == e {
                    self.set(f, l ^ 1, NONE);
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let t = self.at(e1, l);
                if t != NONE {
                    self.merge(f1, t, &mut queue);
                } else {
                    let u = self.at(f1, l ^ 1);
                    if u != NONE {
                        self.merge(e1, u, &mut queue);
                    } else {
                        self.set(e1, l, f1);
                        self.set(f1, l ^ 1, e1);
                        if self.record_deductions {
                            self.deductions.push((e1, l));
                        }
                    }
                }
            }
            self.unlink(e);
        }
    }

    /// First live coset after `c` in definition order.
    fn advance(&self, c: u32) -> u32 {
        let mut x = self.next[c as usize];
        while x != NONE && !self.is_live(x) {
            x = self.next[x as usize];
        }
        x
    }

    /// Lookahead, then renumbering of the live cosets in list order to
    /// reclaim dead rows. Returns the new number of `cursor` (or of the first
    /// live coset after it), or `None` if nothing could be reclaimed.
    fn make_room(&mut self, relators: &[Word], cursor: u32) -> Option<u32> {
        self.lookahead(relators);
        if self.live == self.rows() {
            return None;
        }
        let cursor = if cursor == NONE || self.is_live(cursor) { cursor } else { self.advance(cursor) };
        let order = self.live_cosets();
        let mut number = vec![NONE; self.rows()];
        for (i, &c) in order.iter().enumerate() {
            number[c as usize] = i as u32;
        }
        let mut table = Vec::with_capacity(order.len() * self.cols);
        for &c in &order {
            for l in 0..self.cols as Letter {
                let d = self.at(c, l);
                table.push(if d == NONE { NONE } else { number[self.rep(d) as usize] });
            }
        }
        let n = order.len() as u32;
        self.table = table;
        self.forward = (0..n).collect();
        self.next = (1..=n).map(|i| if i == n { NONE } else { i }).collect();
        self.prev = (0..n).map(|i| if i == 0 { NONE } else { i - 1 }).collect();
        self.last = n - 1;
        self.deductions.clear();
        Some(if cursor == NONE { NONE } else { number[cursor as usize] })
    }

    /// Scans `w` at `c`; with `fill`, defines cosets until the scan closes.
    /// Returns `false` when a needed definition found no free row.
    fn scan(&mut self, c: u32, w: &[Letter], fill: bool) -> bool {
        if w.is_empty() {
            return true;
        }
        loop {
            let (mut f, mut i) = (c, 0usize);
            let (mut b, mut j) = (c, w.len());
            while i < j {
                let t = self.at(f, w[i]);
                if t == NONE {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                if f != c {
                    self.coincidence(f, c);
                }
                return true;
            }
            while j > i {
                let t = self.at(b, w[j - 1] ^ 1);
                if t == NONE {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return true;
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                if self.record_deductions {
                    self.deductions.push((f, w[i]));
                }
                return true;
            }
            if !fill {
                return true;
            }
            if self.define(f, w[i]).is_none() {
                return false;
            }
        }
    }

    fn live_cosets(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.live);
        let mut c = 0;
        while c != NONE {
            out.push(c);
            c = self.next[c as usize];
        }
        out
    }

    /// Scans every relator at every live coset without defining anything.
    fn lookahead(&mut self, relators: &[Word]) {
        for c in self.live_cosets() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r, false);
            }
        }
    }

    fn first_gap(&self, from: u32) -> Option<(u32, Letter)> {
        let mut c = from;
        while c != NONE {
            if let Some(l) = (0..self.cols).find(|&l| self.at(c, l as Letter) == NONE) {
                return Some((c, l as Letter));
            }
            c = self.next[c as usize];
        }
        None
    }

    fn process_deductions(&mut self, conjugates: &[Vec<Word>]) {
        while let Some((c, l)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for w in &conjugates[l as usize] {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, w, false);
            }
            let d = self.at(c, l);
            if d != NONE && self.is_live(d) {
                for w in &conjugates[(l ^ 1) as usize] {
                    if !self.is_live(d) {
                        break;
                    }
                    self.scan(d, w, false);
                }
            }
        }
    }

    fn hlt(&mut self, relators: &[Word]) -> bool {
        let mut c = 0u32;
        while c != NONE {
            let mut full = false;
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                if !self.scan(c, r, true) {
                    full = true;
                    break;
                }
            }
            if !full && self.is_live(c) {
                full = (0..self.cols as Letter)
                    .any(|l| self.at(c, l) == NONE && self.define(c, l).is_none());
            }
            if full {
                match self.make_room(relators, c) {
                    Some(next) => c = next,
                    None => return false,
                }
                continue;
            }
            c = self.advance(c);
        }
        true
    }

    fn felsch(&mut self, relators: &[Word]) -> bool {
        let mut conjugates: Vec<Vec<Word>> = vec![Vec::new(); self.cols];
        for r in relators {
            for w in [r.clone(), invert(r)] {
                for i in 0..w.len() {
                    let rot: Word = w[i..].iter().chain(&w[..i]).copied().collect();
                    if !conjugates[rot[0] as usize].contains(&rot) {
                        conjugates[rot[0] as usize].push(rot);
                    }
                }
            }
        }
        self.record_deductions = true;
        self.process_deductions(&conjugates);
        let mut from = 0u32;
        while let Some((c, l)) = self.first_gap(from) {
            from = c;
            if self.define(c, l).is_none() {
                match self.make_room(relators, NONE) {
                    Some(_) => {
                        from = 0;
                        continue;
                    }
                    None => return false,
                }
            }
            self.process_deductions(&conjugates);
            if !self.is_live(from) {
                from = 0;
            }
        }
        self.record_deductions = false;
        true
    }

    /// Full relator scans with filling until nothing changes.
    fn close(&mut self, relators: &[Word]) -> bool {
        loop {
            let snapshot = (self.live, self.table.clone());
            for c in self.live_cosets() {
                for r in relators {
                    if !self.is_live(c) {
                        break;
                    }
                    if !self.scan(c, r, true) && self.make_room(relators, NONE).is_none() {
                        return false;
                    }
                }
            }
            while let Some((c, l)) = self.first_gap(0) {
                if self.define(c, l).is_none() && self.make_room(relators, NONE).is_none() {
                    return false;
                }
            }
            if snapshot.0 == self.live && snapshot.1 == self.table {
                return true;
            }
        }
    }

    /// Renumbers live cosets breadth first from coset 0.
    fn standardize(&mut self) -> Vec<u32> {
        let mut number = vec![NONE; self.rows()];
        let mut order = vec![0u32];
        number[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            i += 1;
            for l in 0..self.cols as Letter {
                let d = self.at(c, l);
                if d != NONE && number[d as usize] == NONE {
                    number[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut out = Vec::with_capacity(order.len() * self.cols);
        for &c in &order {
            for l in 0..self.cols as Letter {
                let d = self.at(c, l);
                out.push(if d == NONE { NONE } else { number[d as usize] });
            }
        }
        out
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `p`, using at most `max_rows` coset rows.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup: &[Word],
    max_rows: usize,
    strategy: Strategy,
) -> Result<CosetTable> {
    if max_rows == 0 {
        return Err(Error::invalid("coset cap must be at least 1"));
    }
    let cols = 2 * p.num_generators();
    let relators: Vec<Word> = p.relators().iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
    let subgroup: Vec<Word> = subgroup.to_vec();
    if cols == 0 {
        return Ok(CosetTable {
            presentation: p.clone(),
            subgroup,
            cols,
            table: Vec::new(),
            status: EnumerationStatus::Complete,
            peak_rows: 1,
        });
    }
    let max_rows = max_rows.min(MAX_ENTRIES / cols).max(1);
    let mut e = Enumerator::new(cols, max_rows);
    let mut ok = true;
    for w in &subgroup {
        if !e.scan(0, w, true) {
            ok = false;
            break;
        }
    }
    if ok {
        ok = match strategy {
            Strategy::Hlt => e.hlt(&relators),
            Strategy::Felsch => e.felsch(&relators),
        };
    }
    if ok {
        for w in &subgroup {
            ok &= e.scan(0, w, true);
        }
        ok = ok && e.close(&relators);
    }
    let table = e.standardize();
    let ct = CosetTable {
        presentation: p.clone(),
        subgroup,
        cols,
        table,
        status: if ok { EnumerationStatus::Complete } else { EnumerationStatus::Capped },
        peak_rows: e.peak,
    };
    if ok {
        ct.verify()?;
    }
    Ok(ct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::presentation::parse_presentation;

    fn index(text: &str, sub: &[&str], strategy: Strategy) -> usize {
        let p = parse_presentation(text).unwrap();
        let sub: Vec<Word> = sub.iter().map(|s| p.word(s).unwrap()).collect();
        let t = todd_coxeter(&p, &sub, 100_000, strategy).unwrap();
        assert!(t.is_complete());
        t.index()
    }

    #[test]
    fn enumeration_examples() {
        for s in [Strategy::Hlt, Strategy::Felsch] {
            assert_eq!(index("< a | a^5 >", &[], s), 5);
            assert_eq!(index("< a,b | a^2, b^2, (ab)^3 >", &[], s), 6);
            assert_eq!(index("< a,b | a^4, b^2, b a b a >", &["a"], s), 2);
            assert_eq!(index("< a,b | a^4, b^2, b a b a >", &[], s), 8);
            assert_eq!(index("< a,b | a^2 = b^2 = (ab)^2 >", &[], s), 8);
            assert_eq!(index("< a | >", &["a"], s), 1);
        }
    }

    #[test]
    fn harder_enumerations() {
        for s in [Strategy::Hlt, Strategy::Felsch] {
            // A_5 and a Coxeter presentation of S_5
            assert_eq!(index("< a,b | a^2, b^3, (ab)^5 >", &[], s), 60);
            assert_eq!(index("< a,b,c,d | a^2,b^2,c^2,d^2,(ab)^3,(bc)^3,(cd)^3,(ac)^2,(ad)^2,(bd)^2 >", &[], s), 120);
            // trivial group in disguise
            assert_eq!(index("< a,b | a b a^-1 b^-2, b a b^-1 a^-2 >", &[], s), 1);
        }
    }

    #[test]
    fn cap_is_reported() {
        let p = parse_presentation("< a | >").unwrap();
        let t = todd_coxeter(&p, &[], 50, Strategy::Hlt).unwrap();
        assert_eq!(t.status(), EnumerationStatus::Capped);
        let p = parse_presentation("< a,b | a^2, b^3, (ab)^5 >").unwrap();
        let t = todd_coxeter(&p, &[], 20, Strategy::Felsch).unwrap();
        assert_eq!(t.status(), EnumerationStatus::Capped);
    }
}
