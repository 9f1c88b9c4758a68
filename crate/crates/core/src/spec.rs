//! A small expression language naming groups and subgroups on the command line.
//!
//! ```text
//! spec    := factor ("x" factor)*
//! factor  := C(n) | D(n) | Q(n) | S(n) | "(" spec ")"
//!          | perm:[cycles, cycles, ...] | fp:<gens | relators> | table:PATH
//! ```
//!
//! `D(n)` is the dihedral group of order `2n` and `Q(n)` the generalized
//! quaternion group of order `4n`. Subgroups are named by `whole`, `center`,
//! `derived`, `trivial` or `gen:[i,j,...]`, the closure of element indices.

use std::fmt;
use std::str::FromStr;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::fp::{parse_presentation, regular_group};
use crate::group::{
    build_cyclic, build_dihedral, build_quaternion, build_symmetric, direct_product,
    from_permutations_with_cap, parse_cycles, read_table_json, subgroup_closure, FiniteGroup,
    SubgroupHandle,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    Symmetric(usize),
    Permutations(Vec<String>),
    Presentation(String),
    Table(String),
    Product(Vec<GroupExpr>),
}

/// A parsed group expression together with its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub text: String,
    pub expr: GroupExpr,
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut p = SpecParser { src: text, pos: 0 };
        let expr = p.product()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(Error::parse(p.pos, "unexpected trailing input"));
        }
        Ok(GroupSpec { text: text.trim().to_string(), expr })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl GroupSpec {
    pub fn build(&self, config: &Config) -> Result<FiniteGroup> {
        build_expr(&self.expr, config)
    }
}

pub fn parse_group(text: &str, config: &Config) -> Result<FiniteGroup> {
    text.parse::<GroupSpec>()?.build(config)
}

fn check_cap(order: usize, config: &Config) -> Result<()> {
    if order > config.caps.cayley {
        return Err(Error::CapExceeded { what: "group order".into(), size: order, cap: config.caps.cayley });
    }
    Ok(())
}

fn build_expr(expr: &GroupExpr, config: &Config) -> Result<FiniteGroup> {
    let g = match expr {
        GroupExpr::Cyclic(n) => {
            check_cap(*n, config)?;
            build_cyclic(*n)?
        }
        GroupExpr::Dihedral(n) => {
            check_cap(2 * n, config)?;
            build_dihedral(*n)?
        }
        GroupExpr::Quaternion(n) => {
            check_cap(4 * n, config)?;
            build_quaternion(*n)?
        }
        GroupExpr::Symmetric(n) => {
            let order: usize = (1..=*n).product();
            check_cap(order, config)?;
            build_symmetric(*n)?
        }
        GroupExpr::Permutations(cycles) => {
            let gens = cycles.iter().map(|c| parse_cycles(c)).collect::<Result<Vec<_>>>()?;
            let cap = config.caps.permutation_closure.min(config.caps.cayley);
            from_permutations_with_cap(&gens, cap)?
        }
        GroupExpr::Presentation(text) => regular_group(&parse_presentation(text)?, config)?,
        GroupExpr::Table(path) => read_table_json(path)?,
        GroupExpr::Product(factors) => {
            let mut acc = build_expr(&factors[0], config)?;
            for f in &factors[1..] {
                let next = build_expr(f, config)?;
                check_cap(acc.order() * next.order(), config)?;
                acc = direct_product(&acc, &next)?.group;
            }
            acc
        }
    };
    check_cap(g.order(), config)?;
    Ok(g)
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{s}'")))
        }
    }

    fn product(&mut self) -> Result<GroupExpr> {
        let mut factors = vec![self.factor()?];
        while self.eat("x") || self.eat("×") {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { GroupExpr::Product(factors) })
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(Error::parse(self.pos, "expected a number"));
        }
        let n = self.rest()[..digits].parse().map_err(|_| Error::parse(self.pos, "number too large"))?;
        self.pos += digits;
        Ok(n)
    }

    /// Text up to the matching `close`, honoring nesting of `open`.
    fn delimited(&mut self, open: char, close: char) -> Result<String> {
        let start = self.pos;
        let mut depth = 0usize;
        for (i, c) in self.rest().char_indices() {
            if c == open {
                depth += 1;
            } else if c == close {
                if depth == 0 {
                    let body = self.src[start..start + i].to_string();
                    self.pos = start + i + c.len_utf8();
                    return Ok(body);
                }
                depth -= 1;
            }
        }
        Err(Error::parse(start, format!("missing '{close}'")))
    }

    fn factor(&mut self) -> Result<GroupExpr> {
        self.skip_ws();
        let at = self.pos;
        if self.eat("(") {
            let inner = self.product()?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.eat("perm:") {
            self.expect("[")?;
            let body = self.delimited('[', ']')?;
            return Ok(GroupExpr::Permutations(split_top_level(&body)));
        }
        if self.eat("fp:") {
            self.expect("<")?;
            let body = self.delimited('<', '>')?;
            return Ok(GroupExpr::Presentation(format!("<{body}>")));
        }
        if self.eat("table:") {
            self.skip_ws();
            let len = self.rest().find(char::is_whitespace).unwrap_or(self.rest().len());
            if len == 0 {
                return Err(Error::parse(self.pos, "expected a path"));
            }
            let path = self.rest()[..len].to_string();
            self.pos += len;
            return Ok(GroupExpr::Table(path));
        }
        let family = self.rest().chars().next().ok_or_else(|| Error::parse(at, "expected a group"))?;
        let ctor: fn(usize) -> GroupExpr = match family {
            'C' => GroupExpr::Cyclic,
            'D' => GroupExpr::Dihedral,
            'Q' => GroupExpr::Quaternion,
            'S' => GroupExpr::Symmetric,
            _ => return Err(Error::parse(at, "expected C(n), D(n), Q(n), S(n), perm:, fp:, table: or '('")),
        };
        self.pos += 1;
        self.expect("(")?;
        let n = self.number()?;
        self.expect(")")?;
        Ok(ctor(n))
    }
}

fn split_top_level(body: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for c in body.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            parts.push(current.trim().to_string());
            current.clear();
        } else {
            current.push(c);
        }
    }
    if !current.trim().is_empty() {
        parts.push(current.trim().to_string());
    }
    parts
}

/// Resolves `whole`, `center`, `derived`, `trivial` or `gen:[i,j,...]`.
pub fn parse_subgroup(g: &FiniteGroup, text: &str) -> Result<SubgroupHandle> {
    let t = text.trim();
    match t {
        "whole" => return Ok(g.whole()),
        "center" => return Ok(g.center()),
        "derived" => return Ok(g.derived_subgroup()),
        "trivial" => return Ok(g.trivial()),
        _ => {}
    }
    let body = t
        .strip_prefix("gen:")
        .and_then(|s| s.trim().strip_prefix('['))
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::parse(0, format!("unknown subgroup spec '{t}'")))?;
    let mut seed = Vec::new();
    for part in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let x: usize = part.parse().map_err(|_| Error::parse(0, format!("bad element index '{part}'")))?;
        if x >= g.order() {
            return Err(Error::invalid(format!("element {x} out of range for a group of order {}", g.order())));
        }
        seed.push(x);
    }
    subgroup_closure(g, &seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(text: &str) -> usize {
        parse_group(text, &Config::default()).unwrap().order()
    }

    #[test]
    fn families_and_products() {
        assert_eq!(order("C(12)"), 12);
        assert_eq!(order("D(4)"), 8);
        assert_eq!(order("Q(2)"), 8);
        assert_eq!(order("S(4)"), 24);
        assert_eq!(order("C(2) x C(2) x C(3)"), 12);
        assert_eq!(order("(D(4) x C(3))"), 24);
        assert_eq!(order("perm:[(1 2 3), (1 2)(3 4)]"), 12);
        assert_eq!(order("fp:<a,b | a^4, b^2, (ab)^2> x C(2)"), 16);
    }

    #[test]
    fn errors() {
        let cfg = Config::default();
        assert!(matches!("E(3)".parse::<GroupSpec>(), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!("C(3) y".parse::<GroupSpec>(), Err(Error::Parse { pos: 5, .. })));
        assert!("C()".parse::<GroupSpec>().is_err());
        assert!(matches!(parse_group("C(1000)", &cfg), Err(Error::CapExceeded { .. })));
        assert!(matches!(parse_group("S(6) x C(2)", &cfg), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn subgroups() {
        let d8 = parse_group("D(4)", &Config::default()).unwrap();
        assert_eq!(parse_subgroup(&d8, "center").unwrap().order(), 2);
        assert_eq!(parse_subgroup(&d8, "derived").unwrap().order(), 2);
        assert_eq!(parse_subgroup(&d8, "gen:[1]").unwrap().order(), 4);
        assert_eq!(parse_subgroup(&d8, "gen:[1, 4]").unwrap().order(), 8);
        assert!(parse_subgroup(&d8, "gen:[9]").is_err());
        assert!(parse_subgroup(&d8, "half").is_err());
    }
}
