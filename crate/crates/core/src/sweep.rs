//! Parameter sweeps over group families: one row per `(group, m)`.
//!
//! CSV columns, in order:
//!
//! | column | meaning |
//! |---|---|
//! | `family` | `dihedral`, `quaternion`, `cyclic` or `all-small` |
//! | `group` | group expression or corpus name |
//! | `n` | family parameter (the order for `all-small`) |
//! | `order` | `|G|` |
//! | `m` | exponent |
//! | `d` | `d(G)` |
//! | `d_wedge` | `d^∧_m(G)` through the stem cover |
//! | `closed_form` | closed-form value, empty when none applies |
//! | `closed_form_match` | `true`/`false`, empty when none applies |
//! | `alpha_min`, `alpha_max` | extreme values of `|C_G(x^m)|/|C_G(x)|` over classes |
//! | `multiplier` | `|M(G)|` |
//! | `t1_lower`, `t1_upper` | `alpha_min d / |M|` and `alpha_max d` |
//! | `t1_holds` | whether `t1_lower <= d_wedge <= t1_upper` |
//!
//! Fractions are written `num/den`. Rows are sorted by `n`, then corpus
//! position, then `m`.

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::corpus::CORPUS;
use crate::cover::{build_cover, degree_via_classes};
use crate::degree::{commutativity_degree, Rational};
use crate::error::{Error, Result};
use crate::exterior::{closed_form_dihedral, closed_form_quaternion};
use crate::group::FiniteGroup;
use crate::spec::parse_group;
use crate::verify::fraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Dihedral,
    Quaternion,
    Cyclic,
    AllSmall,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dihedral" => Ok(Family::Dihedral),
            "quaternion" => Ok(Family::Quaternion),
            "cyclic" => Ok(Family::Cyclic),
            "all-small" => Ok(Family::AllSmall),
            _ => Err(Error::invalid(format!("unknown family '{s}' (dihedral, quaternion, cyclic, all-small)"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Dihedral => "dihedral",
            Family::Quaternion => "quaternion",
            Family::Cyclic => "cyclic",
            Family::AllSmall => "all-small",
        })
    }
}

/// Parses `A..B` (inclusive) or a single number.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u64>> {
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| Error::invalid(format!("bad range '{text}'")));
    let r = match text.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let n = num(text)?;
            n..=n
        }
    };
    if r.is_empty() {
        return Err(Error::invalid(format!("empty range '{text}'")));
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub group: String,
    pub n: u64,
    pub order: usize,
    pub m: u64,
    pub d: String,
    pub d_wedge: String,
    pub closed_form: Option<String>,
    pub closed_form_match: Option<bool>,
    pub alpha_min: u64,
    pub alpha_max: u64,
    pub multiplier: u64,
    pub t1_lower: String,
    pub t1_upper: String,
    pub t1_holds: bool,
}

struct Member {
    name: String,
    n: u64,
    group: FiniteGroup,
}

fn members(family: Family, ns: &RangeInclusive<u64>, config: &Config) -> Result<Vec<Member>> {
    let from_spec = |name: String, n: u64| -> Result<Member> {
        let group = parse_group(&name, config)?;
        Ok(Member { name, n, group })
    };
    match family {
        Family::Dihedral => ns.clone().filter(|&n| n >= 1).map(|n| from_spec(format!("D({n})"), n)).collect(),
        Family::Quaternion => ns.clone().filter(|&n| n >= 2).map(|n| from_spec(format!("Q({n})"), n)).collect(),
        Family::Cyclic => ns.clone().filter(|&n| n >= 1).map(|n| from_spec(format!("C({n})"), n)).collect(),
        Family::AllSmall => CORPUS
            .iter()
            .filter(|(_, order, _)| ns.contains(&(*order as u64)))
            .map(|&(name, order, spec)| Ok(Member { name: name.to_string(), n: order as u64, group: parse_group(spec, config)? }))
            .collect(),
    }
}

fn closed_form(family: Family, n: u64, m: u64) -> Result<Option<Rational>> {
    Ok(match family {
        Family::Dihedral => Some(closed_form_dihedral(n, m)?.value()),
        Family::Quaternion => Some(closed_form_quaternion(n, m)?.value()),
        Family::Cyclic => Some(Rational::from_integer(1)),
        Family::AllSmall => None,
    })
}

fn rows_for(family: Family, member: &Member, ms: &RangeInclusive<u64>, config: &Config) -> Result<Vec<SweepRow>> {
    let g = &member.group;
    let cover = build_cover(g, &config.caps)?;
    let d = commutativity_degree(g)?.value();
    let multiplier = cover.kernel().order();
    let whole = g.whole();
    ms.clone()
        .into_par_iter()
        .map(|m| {
            let (v, table) = degree_via_classes(&cover, &whole, &whole, m)?;
            let v = v.value();
            let cf = closed_form(family, member.n, m)?;
            let lower = Rational::from_integer(table.beta) * d / Rational::from_integer(multiplier);
            let upper = Rational::from_integer(table.gamma) * d;
            Ok(SweepRow {
                family: family.to_string(),
                group: member.name.clone(),
                n: member.n,
                order: g.order(),
                m,
                d: fraction(d),
                d_wedge: fraction(v),
                closed_form: cf.map(fraction),
                closed_form_match: cf.map(|c| c == v),
                alpha_min: table.beta,
                alpha_max: table.gamma,
                multiplier,
                t1_lower: fraction(lower),
                t1_upper: fraction(upper),
                t1_holds: lower <= v && v <= upper,
            })
        })
        .collect()
}

/// All rows of a sweep, in deterministic order.
pub fn sweep(family: Family, ns: RangeInclusive<u64>, ms: RangeInclusive<u64>, config: &Config) -> Result<Vec<SweepRow>> {
    if *ms.start() == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    let members = members(family, &ns, config)?;
    let blocks: Vec<Vec<SweepRow>> =
        members.par_iter().map(|mem| rows_for(family, mem, &ms, config)).collect::<Result<_>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    Ok(())
}
