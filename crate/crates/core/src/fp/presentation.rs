//! Finite presentations `< generators | relators >`.
//!
//! A letter is a coset-table column: `2g` for generator `g` and `2g + 1` for
//! its inverse, so `letter ^ 1` inverts a letter.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub type Letter = u32;
pub type Word = Vec<Letter>;

pub fn generator_letter(g: usize, inverse: bool) -> Letter {
    (2 * g + usize::from(inverse)) as Letter
}

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|&l| l ^ 1).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&(l ^ 1)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let w = free_reduce(w);
    let (mut i, mut j) = (0, w.len());
    while j >= i + 2 && w[i] == w[j - 1] ^ 1 {
        i += 1;
        j -= 1;
    }
    w[i..j].to_vec()
}

/// Least rotation of `w` or of its inverse; relators equal up to cyclic
/// permutation and inversion share it.
pub fn canonical_relator(w: &[Letter]) -> Word {
    let w = cyclic_reduce(w);
    let inv = invert(&w);
    let mut best = w.clone();
    for cand in [&w, &inv] {
        for r in 0..cand.len() {
            let rot: Word = cand[r..].iter().chain(&cand[..r]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates letters, freely reduces relators and drops empty ones.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let limit = 2 * generators.len() as Letter;
        let mut seen = BTreeSet::new();
        for name in &generators {
            if !seen.insert(name.as_str()) {
                return Err(Error::invalid(format!("generator `{name}` declared twice")));
            }
        }
        let mut out = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(&l) = r.iter().find(|&&l| l >= limit) {
                return Err(Error::invalid(format!("relator uses undeclared letter {l}")));
            }
            let r = free_reduce(&r);
            if !r.is_empty() {
                out.push(r);
            }
        }
        Ok(Presentation { generators, relators: out })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).presentation()
    }

    /// Parses a word over this presentation's generators.
    pub fn word(&self, text: &str) -> Result<Word> {
        let mut p = Parser::new(text);
        p.generators = self.generators.clone();
        let w = p.word()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(Error::parse(p.pos, "unexpected trailing input"));
        }
        Ok(free_reduce(&w))
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.generators[(w[i] / 2) as usize];
            let e = (j - i) as i64 * if w[i] & 1 == 1 { -1 } else { 1 };
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join(" ")
    }

    /// Relators up to cyclic permutation and inversion, in sorted order.
    pub fn deduplicated(&self) -> Presentation {
        let set: BTreeSet<Word> =
            self.relators.iter().map(|r| canonical_relator(r)).filter(|r| !r.is_empty()).collect();
        Presentation { generators: self.generators.clone(), relators: set.into_iter().collect() }
    }

    /// Eliminates generators made trivial or equal to another generator (or
    /// its inverse) by relators of length one or two, until none remain.
    /// Returns the smaller presentation and the image of every original
    /// generator as a word in it.
    pub fn simplify(&self) -> Simplified {
        let n = self.generators.len();
        let mut uf = SignedUnionFind::new(n);
        let mut relators: Vec<Word> = self.relators.clone();
        loop {
            let mut changed = false;
            let mut next = Vec::with_capacity(relators.len());
            let mut seen = BTreeSet::new();
            for r in &relators {
                let w = canonical_relator(&uf.rewrite(r));
                if w.is_empty() || !seen.insert(w.clone()) {
                    continue;
                }
                match w.len() {
                    1 => {
                        changed |= uf.kill(w[0] / 2);
                    }
                    2 if w[0] / 2 != w[1] / 2 => {
                        // x^e y^f = 1, so x = y^(-f) when e = +1 and x = y^f otherwise
                        let flip = (w[0] & 1) == (w[1] & 1);
                        changed |= uf.join(w[0] / 2, w[1] / 2, flip);
                    }
                    _ => next.push(w),
                }
            }
            relators = next;
            if !changed {
                break;
            }
        }
        let roots: Vec<u32> = (0..n as u32).filter(|&g| uf.is_live_root(g)).collect();
        let mut renumber = vec![u32::MAX; n];
        for (i, &r) in roots.iter().enumerate() {
            renumber[r as usize] = i as u32;
        }
        let map_word = |w: &[Letter]| -> Word {
            w.iter().map(|&l| 2 * renumber[(l / 2) as usize] + (l & 1)).collect()
        };
        let images: Vec<Word> = (0..n).map(|g| map_word(&uf.rewrite(&[generator_letter(g, false)]))).collect();
        let relators: BTreeSet<Word> = relators.iter().map(|r| canonical_relator(&map_word(r))).collect();
        let generators = roots.iter().map(|&r| self.generators[r as usize].clone()).collect();
        Simplified {
            presentation: Presentation { generators, relators: relators.into_iter().collect() },
            images,
            kept: roots.iter().map(|&r| r as usize).collect(),
        }
    }

    /// Torsion-free rank of the abelianization; positive means the group is infinite.
    pub fn abelianization_rank(&self) -> usize {
        use crate::homology::{smith_normal_form_with, SnfOptions, SparseIntMatrix};
        let n = self.num_generators();
        let mut m = SparseIntMatrix::zeros(self.relators.len(), n);
        for (i, r) in self.relators.iter().enumerate() {
            for &l in r {
                m.add_to(i, (l / 2) as usize, if l & 1 == 0 { 1 } else { -1 });
            }
        }
        n - smith_normal_form_with(&m, SnfOptions::NONE).rank()
    }
}

/// Output of [`Presentation::simplify`].
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: Presentation,
    /// `images[g]` is original generator `g` written in the new generators.
    pub images: Vec<Word>,
    /// Original index of each surviving generator.
    pub kept: Vec<usize>,
}

/// Union-find in which each generator is trivial or a root generator raised to `±1`.
struct SignedUnionFind {
    parent: Vec<u32>,
    flip: Vec<bool>,
    dead: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind { parent: (0..n as u32).collect(), flip: vec![false; n], dead: vec![false; n] }
    }

    /// Root and whether `g = root^-1`.
    fn find(&mut self, g: u32) -> (u32, bool) {
        let p = self.parent[g as usize];
        if p == g {
            return (g, false);
        }
        let (r, f) = self.find(p);
        let total = f ^ self.flip[g as usize];
        self.parent[g as usize] = r;
        self.flip[g as usize] = total;
        (r, total)
    }

    fn is_live_root(&mut self, g: u32) -> bool {
        self.find(g).0 == g && !self.dead[g as usize]
    }

    fn kill(&mut self, g: u32) -> bool {
        let (r, _) = self.find(g);
        !std::mem::replace(&mut self.dead[r as usize], true)
    }

    /// Records `a = b` (or `a = b^-1` when `inverse`).
    fn join(&mut self, a: u32, b: u32, inverse: bool) -> bool {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            // ra = ra^-1 makes ra an involution, which stays a relator
            return false;
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        // ra^fa = rb^(fb ^ inverse)
        self.parent[drop as usize] = keep;
        self.flip[drop as usize] = fa ^ fb ^ inverse;
        let d = self.dead[drop as usize];
        self.dead[keep as usize] |= d;
        true
    }

    fn rewrite(&mut self, w: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(w.len());
        for &l in w {
            let (r, f) = self.find(l / 2);
            if !self.dead[r as usize] {
                out.push(2 * r + ((l & 1) ^ u32::from(f)));
            }
        }
        free_reduce(&out)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    Presentation::parse(text)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    generators: Vec<String>,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, generators: Vec::new() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{c}`")))
        }
    }

    fn identifier(&mut self) -> Result<String> {
        match self.peek() {
            Some(c) if ident_start(c) => {}
            _ => return Err(Error::parse(self.pos, "expected a generator name")),
        }
        let start = self.pos;
        while self.pos < self.chars.len() && ident_char(self.chars[self.pos]) {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn presentation(&mut self) -> Result<Presentation> {
        self.expect('<')?;
        if self.peek() != Some('|') {
            loop {
                let at = self.pos;
                let name = self.identifier()?;
                if self.generators.contains(&name) {
                    return Err(Error::parse(at, format!("generator `{name}` declared twice")));
                }
                self.generators.push(name);
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect('|')?;
        let mut relators = Vec::new();
        if self.peek() != Some('>') {
            loop {
                relators.extend(self.relation()?);
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect('>')?;
        if let Some(c) = self.peek() {
            return Err(Error::parse(self.pos, format!("unexpected `{c}` after presentation")));
        }
        Presentation::new(std::mem::take(&mut self.generators), relators)
    }

    /// `w_1 = w_2 = ... = w_k` becomes `w_1 w_2^-1, ..., w_(k-1) w_k^-1`.
    fn relation(&mut self) -> Result<Vec<Word>> {
        let mut sides = vec![self.word()?];
        while self.peek() == Some('=') {
            self.pos += 1;
            sides.push(self.word()?);
        }
        if sides.len() == 1 {
            return Ok(sides);
        }
        Ok(sides
            .windows(2)
            .map(|w| w[0].iter().copied().chain(invert(&w[1])).collect())
            .collect())
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::new();
        loop {
            match self.peek() {
                Some(c) if ident_start(c) || c == '(' || c == '[' || c == '1' => {
                    w.extend(self.factor()?);
                }
                _ => return Ok(w),
            }
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let mut atoms = self.atoms()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let last = atoms.pop().expect("atoms are never empty");
            let base = if e < 0 { invert(&last) } else { last };
            let mut powered = Word::new();
            for _ in 0..e.unsigned_abs() {
                powered.extend_from_slice(&base);
            }
            atoms.push(powered);
        }
        Ok(atoms.concat())
    }

    /// One bracketed word, the identity `1`, or a run of generator names; a
    /// run like `ab` is split greedily by longest declared name.
    fn atoms(&mut self) -> Result<Vec<Word>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(vec![w])
            }
            Some('[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(',')?;
                let y = self.word()?;
                self.expect(']')?;
                let mut w = x.clone();
                w.extend_from_slice(&y);
                w.extend(invert(&x));
                w.extend(invert(&y));
                Ok(vec![w])
            }
            Some('1') => {
                self.pos += 1;
                Ok(vec![Word::new()])
            }
            _ => {
                let start = self.pos;
                let run = self.identifier()?;
                let mut out = Vec::new();
                let mut rest = run.as_str();
                let mut offset = start;
                while !rest.is_empty() {
                    let best = self
                        .generators
                        .iter()
                        .enumerate()
                        .filter(|(_, g)| rest.starts_with(g.as_str()))
                        .max_by_key(|(_, g)| g.len());
                    match best {
                        Some((i, g)) => {
                            out.push(vec![generator_letter(i, false)]);
                            rest = &rest[g.len()..];
                            offset += g.len();
                        }
                        None => {
                            return Err(Error::parse(offset, format!("undeclared generator in `{rest}`")))
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') || self.chars.get(self.pos) == Some(&'+') {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::parse(start, "expected an integer exponent"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let p = parse_presentation("< a | a^5 >").unwrap();
        assert_eq!(p.num_generators(), 1);
        assert_eq!(p.relators(), &[vec![0, 0, 0, 0, 0]]);
        let d8 = parse_presentation("< a,b | a^4, b^2, b a b a >").unwrap();
        assert_eq!(d8.relators().len(), 3);
        let free = parse_presentation("< a | >").unwrap();
        assert!(free.relators().is_empty());
        assert_eq!(free.abelianization_rank(), 1);
        assert_eq!(d8.abelianization_rank(), 0);
    }

    #[test]
    fn juxtaposition_equations_and_brackets() {
        let p = parse_presentation("<a, b | ab = ba, (ab)^-2, [a,b]>").unwrap();
        assert_eq!(p.relators()[0], vec![0, 2, 1, 3]);
        assert_eq!(p.relators()[1], vec![3, 1, 3, 1]);
        assert_eq!(p.relators()[2], vec![0, 2, 1, 3]);
        let chain = parse_presentation("<a,b | a^3 = b^2 = (ab)^2>").unwrap();
        assert_eq!(chain.relators().len(), 2);
        let long = parse_presentation("<x1, x | x1 x^-1>").unwrap();
        assert_eq!(long.relators()[0], vec![0, 3]);
        let one = parse_presentation("<a | a^2 = 1>").unwrap();
        assert_eq!(one.relators()[0], vec![0, 0]);
    }

    #[test]
    fn parse_errors_carry_positions() {
        for bad in ["< a | b >", "< a | a^ >", "a | a", "< a, a | >", "< a | a ", "< a | a > x"] {
            assert!(matches!(parse_presentation(bad), Err(Error::Parse { .. })), "{bad}");
        }
        match parse_presentation("< a | a c >") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn display_round_trips() {
        let p = parse_presentation("< a, b | a^4, b^-2, b a b^-1 a >").unwrap();
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&[0, 2, 3, 1, 0]), vec![0]);
        assert_eq!(cyclic_reduce(&[1, 2, 2, 0]), vec![2, 2]);
        assert_eq!(canonical_relator(&[2, 0]), canonical_relator(&[1, 3]));
    }

    #[test]
    fn simplify_eliminates_trivial_and_duplicate_generators() {
        let p = parse_presentation("< a, b, c, d | d, c = b^-1, b^3, a^2 >").unwrap();
        let s = p.simplify();
        assert_eq!(s.presentation.generators(), &["a".to_string(), "b".to_string()]);
        assert_eq!(s.presentation.relators().len(), 2);
        assert_eq!(s.images[2], vec![3]);
        assert!(s.images[3].is_empty());
    }
}
