//! Property checks over the corpus and the dihedral and quaternion families.
//!
//! Each suite returns [`CheckReport`]s, one per checked group or family
//! member. A report fails when any instance violates the property, and every
//! failure carries a witness naming the subgroups (as `gen:[...]`) and `m`.
//! Two remarks about dihedral groups are reported as findings instead of
//! being asserted either way.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Config, Strategy};
use crate::corpus::corpus;
use crate::cover::{build_cover, exterior_degree_m, StemCover};
use crate::degree::{commutativity_degree, power_commutativity_degree, relative_degree, Rational};
use crate::error::{Error, Result};
use crate::exterior::{
    closed_form_dihedral, closed_form_quaternion, degree_via_classes_of, exterior_degree_of, AlphaTable,
};
use crate::fp::{pair_product, parse_presentation, todd_coxeter, PairKind, PairProduct};
use crate::group::{
    build_cyclic, build_dihedral, build_quaternion, conjugacy_classes_under, direct_product,
    normal_subgroups, quotient, subgroup_closure, FiniteGroup, SubgroupHandle,
};
use crate::homology::{schur_multiplier, smith_normal_form, SparseIntMatrix};
use crate::spec::parse_group;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Finding,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Finding => "FINDING",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
    pub values: BTreeMap<String, String>,
}

/// 0 when everything passed, 2 on any failure, 3 when only findings remain.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    match reports.iter().map(|r| r.verdict).max() {
        Some(Verdict::Fail) => 2,
        Some(Verdict::Finding) => 3,
        _ => 0,
    }
}

const MAX_WITNESSES: usize = 12;

/// Accumulates the instances of one check on one group.
struct Tally {
    check: &'static str,
    instance: String,
    checked: usize,
    failed: usize,
    finding: bool,
    witnesses: Vec<String>,
    values: BTreeMap<String, String>,
}

impl Tally {
    fn new(check: &'static str, instance: impl Into<String>) -> Self {
        Tally {
            check,
            instance: instance.into(),
            checked: 0,
            failed: 0,
            finding: false,
            witnesses: Vec::new(),
            values: BTreeMap::new(),
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    fn error(&mut self, context: &str, e: &Error) {
        self.check(false, || format!("{context}: {e}"));
    }

    fn finding(&mut self, witness: String) {
        self.finding = true;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    fn value(&mut self, key: &str, value: impl ToString) {
        self.values.insert(key.to_string(), value.to_string());
    }

    fn finish(mut self) -> CheckReport {
        self.values.insert("checked".into(), self.checked.to_string());
        self.values.insert("failed".into(), self.failed.to_string());
        let verdict = if self.failed > 0 {
            Verdict::Fail
        } else if self.finding {
            Verdict::Finding
        } else {
            Verdict::Pass
        };
        CheckReport {
            check: self.check.to_string(),
            instance: self.instance,
            verdict,
            witnesses: self.witnesses,
            values: self.values,
        }
    }
}

/// `num/den`, the serialization used for every fraction.
pub fn fraction(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Shortest description of a subgroup accepted by the subgroup parser.
pub fn describe_subgroup(h: &SubgroupHandle) -> String {
    if h.is_whole() {
        return "whole".into();
    }
    if h.is_trivial() {
        return "trivial".into();
    }
    let g = h.parent();
    let mut gens = Vec::new();
    let mut span = g.trivial();
    for &x in h.elements() {
        if !span.contains(x) {
            gens.push(x);
            span = subgroup_closure(g, &gens).expect("elements of one group");
        }
    }
    let list: Vec<String> = gens.iter().map(usize::to_string).collect();
    format!("gen:[{}]", list.join(","))
}

fn pair_label(h: &SubgroupHandle, k: &SubgroupHandle) -> String {
    format!("H={} K={}", describe_subgroup(h), describe_subgroup(k))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn is_prime(n: u64) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}

/// Multiplicative order of `p` modulo `e`, for coprime `p` and `e > 1`.
fn multiplicative_order(p: u64, e: u64) -> u64 {
    let mut x = p % e;
    let mut r = 1;
    while x != 1 {
        x = x * p % e;
        r += 1;
    }
    r
}

/// A positive exponent acting on an element of exponent dividing `e` as `p^r` does.
fn reduced_power(p: u64, r: u32, e: u64) -> u64 {
    let mut acc = 1 % e;
    for _ in 0..r {
        acc = acc * (p % e) % e;
    }
    if acc == 0 {
        e
    } else {
        acc
    }
}

/// Which groups and parameters a verification run covers.
#[derive(Clone, Debug)]
pub struct Scope {
    /// Largest corpus group order.
    pub max_order: usize,
    /// Largest `m` for checks quantified over all `m`.
    pub max_m: u64,
    pub config: Config,
}

impl Scope {
    /// Raises the pair-product cap to `max_order` and the Cayley cap to 1024
    /// so that every pair `(H,K)` and every stem cover in scope is buildable.
    pub fn new(max_order: usize, max_m: u64, mut config: Config) -> Self {
        config.caps.fp_pair = config.caps.fp_pair.max(max_order);
        config.caps.cayley = config.caps.cayley.max(1024);
        Scope { max_order, max_m: max_m.max(1), config }
    }
}

impl Default for Scope {
    fn default() -> Self {
        Scope::new(16, 6, Config::default())
    }
}

pub const SUITES: &[(&str, &str)] = &[
    ("lemma-l1", "class-sum formula and L(m,i;h,K) embedding into M(G,H,K)"),
    ("prop-p1", "monotone chains d^∧_{p^j} along powers of a prime"),
    ("cor-c1extra", "α and |L| are 1 when M(G,H,K) = 1 and exp(H) divides p^r - 1"),
    ("cor-c1", "r = 0 instance, limit of d^∧_{p^r} and the |H| = p remark"),
    ("prop-p2", "multiplicativity over coprime direct products"),
    ("prop-p3-quotient", "d^∧_m(H,K) <= d^∧_m(H/N,K/N), equality when N lies in Z^∧(H,K)"),
    ("theorem-t1", "β(m) d(H,K)/|M(G,H,K)| <= d^∧_m(H,K) <= γ(m) d(H,K)"),
    ("cor-c2", "d^∧_m(H,K) = d(H,K) when M(G,H,K) = 1 and exp(H) divides m - 1"),
    ("cor-c3", "bounded chain for some r >= 1"),
    ("prop-p3-bound", "d^∧_m(H,K) <= γ(m)(2p-1)/p^2 when [H,K] != 1"),
    ("cor-c4", "d^∧_m(H,K) = (2p-1)/p^2 forces |H:C_H(K)| = |K:C_K(H)| = p"),
    ("closed-form-dihedral", "d^∧_m(D_2n) against the closed form, n = 2..10, m = 1..2n"),
    ("closed-form-quaternion", "d^∧_m(Q_n) against the closed form, n = 2..8, m = 1..2n"),
    ("dihedral-quaternion-equality", "computed d^∧_m(D_2n) = d^∧_m(Q_n), n = 2..8"),
    ("dihedral-centralizers", "|C^∧(x)| for rotations and reflections of D_2n, n = 2..10"),
    ("dwedge-vs-d", "d^∧(G) against d(G) for D_2n and Q_n (findings)"),
    ("multiplier-dihedral", "|M(D_2n)| != 1 for n = 1..12 (findings)"),
    ("multiplier-facts", "M(C_n) = 1 for n <= 24 and M(Q_n) = 1 for n = 2..6"),
    ("cover-invariants", "stem cover invariants and cover-route degree invariants"),
    ("oracle", "cover-route pairing against the enumerated G ∧ G"),
    ("todd-coxeter", "regular enumerations of cyclic, dihedral and quaternion presentations"),
    ("snf-random", "Smith normal form on 1000 random sparse integer matrices"),
];

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(name: &str, scope: &Scope) -> Result<Vec<CheckReport>> {
    let mut data = Data::new(scope);
    if name == "all" {
        let mut out = Vec::new();
        for (suite, _) in SUITES {
            out.extend(data.run(suite)?);
        }
        return Ok(out);
    }
    data.run(name)
}

/// Runs several suites over shared group data, in the given order.
pub fn run_suites(names: &[&str], scope: &Scope) -> Result<Vec<CheckReport>> {
    let mut data = Data::new(scope);
    let mut out = Vec::new();
    for name in names {
        out.extend(data.run(name)?);
    }
    Ok(out)
}

struct Case {
    name: String,
    group: FiniteGroup,
    cover: StemCover,
}

/// `H ∧ K` for normal `H`, `K` with `G = HK`.
struct Triple {
    case: usize,
    h: SubgroupHandle,
    k: SubgroupHandle,
    product: PairProduct,
    d: Rational,
    multiplier: u64,
}

impl Triple {
    fn label(&self, group: &str, m: Option<u64>) -> String {
        let base = format!("G={group} {}", pair_label(&self.h, &self.k));
        match m {
            Some(m) => format!("{base} m={m}"),
            None => base,
        }
    }

    fn classes(&self, m: u64) -> Result<(Rational, AlphaTable)> {
        let (v, t) = degree_via_classes_of(&self.product, m)?;
        Ok((v.value(), t))
    }
}

struct Data<'a> {
    scope: &'a Scope,
    cases: Option<Vec<Case>>,
    triples: Option<Vec<Triple>>,
    build_failures: Vec<CheckReport>,
}

impl<'a> Data<'a> {
    fn new(scope: &'a Scope) -> Self {
        Data { scope, cases: None, triples: None, build_failures: Vec::new() }
    }

    fn ensure_cases(&mut self) -> Result<()> {
        if self.cases.is_some() {
            return Ok(());
        }
        let config = &self.scope.config;
        let entries = corpus(self.scope.max_order, config)?;
        let built: Vec<(String, Result<StemCover>, FiniteGroup)> = entries
            .into_par_iter()
            .map(|e| (e.name.to_string(), build_cover(&e.group, &config.caps), e.group))
            .collect();
        let mut cases = Vec::new();
        for (name, cover, group) in built {
            match cover {
                Ok(cover) => cases.push(Case { name, group, cover }),
                Err(e) => {
                    let mut t = Tally::new("cover-build", name.clone());
                    t.error("stem cover", &e);
                    self.build_failures.push(t.finish());
                }
            }
        }
        self.cases = Some(cases);
        Ok(())
    }

    fn ensure_triples(&mut self) -> Result<()> {
        self.ensure_cases()?;
        if self.triples.is_some() {
            return Ok(());
        }
        let config = &self.scope.config;
        let cases = self.cases.as_ref().unwrap();
        let mut jobs = Vec::new();
        for (ci, case) in cases.iter().enumerate() {
            let normals = normal_subgroups(&case.group);
            for h in &normals {
                for k in &normals {
                    if h.product_is_whole(k)? {
                        jobs.push((ci, h.clone(), k.clone()));
                    }
                }
            }
        }
        let built: Vec<_> = jobs
            .into_par_iter()
            .map(|(ci, h, k)| {
                let g = &cases[ci].group;
                let r = pair_product(g, &h, &k, PairKind::Exterior, config)
                    .and_then(|p| Ok((relative_degree(&h, &k)?.value(), p)));
                (ci, h, k, r)
            })
            .collect();
        let mut triples = Vec::new();
        for (case, h, k, r) in built {
            match r {
                Ok((d, product)) => {
                    let multiplier = product.kernel.order();
                    triples.push(Triple { case, h, k, product, d, multiplier });
                }
                Err(e) => {
                    let mut t = Tally::new("pair-product-build", cases[case].name.clone());
                    t.error(&pair_label(&h, &k), &e);
                    self.build_failures.push(t.finish());
                }
            }
        }
        self.triples = Some(triples);
        Ok(())
    }

    fn run(&mut self, name: &str) -> Result<Vec<CheckReport>> {
        let before = self.build_failures.len();
        let mut reports = match name {
            "lemma-l1" | "prop-p1" | "cor-c1extra" | "cor-c1" | "prop-p3-quotient" | "theorem-t1" | "cor-c2"
            | "cor-c3" | "prop-p3-bound" | "cor-c4" | "oracle" => {
                self.ensure_triples()?;
                let cases = self.cases.as_ref().unwrap();
                let triples = self.triples.as_ref().unwrap();
                let scope = self.scope;
                match name {
                    "lemma-l1" => per_case(cases, triples, |c, ts| lemma_l1(c, ts, scope)),
                    "prop-p1" => per_case(cases, triples, prop_p1).into_iter().flatten().collect(),
                    "cor-c1extra" => per_case(cases, triples, |c, ts| cor_c1extra(c, ts)),
                    "cor-c1" => per_case(cases, triples, |c, ts| cor_c1(c, ts)),
                    "prop-p3-quotient" => {
                        per_case(cases, triples, |c, ts| prop_p3_quotient(c, ts, scope)).into_iter().flatten().collect()
                    }
                    "theorem-t1" => per_case(cases, triples, |c, ts| theorem_t1(c, ts, scope)),
                    "cor-c2" => per_case(cases, triples, |c, ts| cor_c2(c, ts, scope)),
                    "cor-c3" => per_case(cases, triples, |c, ts| cor_c3(c, ts)),
                    "prop-p3-bound" => {
                        per_case(cases, triples, |c, ts| prop_p3_bound(c, ts, scope)).into_iter().flatten().collect()
                    }
                    "cor-c4" => per_case(cases, triples, |c, ts| cor_c4(c, ts, scope)),
                    _ => per_case(cases, triples, |c, ts| oracle_case(c, ts, scope)),
                }
            }
            "cover-invariants" => {
                self.ensure_cases()?;
                let scope = self.scope;
                self.cases.as_ref().unwrap().par_iter().map(|c| cover_invariants(c, scope)).collect()
            }
            "prop-p2" => prop_p2(self.scope)?,
            "closed-form-dihedral" => closed_forms(Family::Dihedral, 2..=10, &self.scope.config),
            "closed-form-quaternion" => closed_forms(Family::Quaternion, 2..=8, &self.scope.config),
            "dihedral-quaternion-equality" => dihedral_quaternion_equality(2..=8, &self.scope.config),
            "dihedral-centralizers" => dihedral_centralizers(2..=10, &self.scope.config),
            "dwedge-vs-d" => dwedge_vs_d(1..=10, &self.scope.config),
            "multiplier-dihedral" => multiplier_dihedral(1..=12, &self.scope.config),
            "multiplier-facts" => multiplier_facts(&self.scope.config),
            "todd-coxeter" => todd_coxeter_suite(&self.scope.config),
            "snf-random" => vec![snf_random(1000, 40, 60, 0x5eed)],
            other => {
                let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
                return Err(Error::invalid(format!("unknown suite '{other}'; expected all or one of {}", names.join(", "))));
            }
        };
        // build errors are reported once, by the first suite that needed them
        let mut out: Vec<CheckReport> = self.build_failures[before..].to_vec();
        out.append(&mut reports);
        Ok(out)
    }
}

/// Applies `f` to each corpus group and its triples, in corpus order.
fn per_case<T: Send>(cases: &[Case], triples: &[Triple], f: impl Fn(&Case, &[&Triple]) -> T + Sync) -> Vec<T> {
    let mut grouped: Vec<Vec<&Triple>> = vec![Vec::new(); cases.len()];
    for t in triples {
        grouped[t.case].push(t);
    }
    cases.par_iter().zip(grouped.par_iter()).map(|(c, ts)| f(c, ts)).collect()
}

fn lemma_l1(case: &Case, triples: &[&Triple], scope: &Scope) -> CheckReport {
    let mut t = Tally::new("lemma-l1", case.name.clone());
    for tr in triples {
        let g = &case.group;
        let p = &tr.product;
        let kernel = &p.kernel_subgroup;
        for m in 1..=scope.max_m {
            let (_, table) = match tr.classes(m) {
                Ok(x) => x,
                Err(e) => {
                    t.error(&tr.label(&case.name, Some(m)), &e);
                    continue;
                }
            };
            for (i, &h) in table.representatives.iter().enumerate() {
                let hm = g.pow(h, m);
                let c = tr.k.centralizer(hm);
                // x -> h^m ∧ x on C_K(h^m) lands in ker κ' and is a homomorphism
                let image: Vec<usize> = c.elements().iter().map(|&x| p.pairing(hm, x)).collect();
                let in_kernel = image.iter().all(|&y| kernel.contains(y));
                let hom = c.elements().iter().enumerate().all(|(a, &x)| {
                    c.elements().iter().enumerate().all(|(b, &y)| {
                        let xy = g.mul(x, y);
                        let pos = c.elements().binary_search(&xy).expect("subgroup is closed");
                        image[pos] == p.product.mul(image[a], image[b])
                    })
                });
                let mut distinct = image.clone();
                distinct.sort_unstable();
                distinct.dedup();
                let l = table.l_orders[i];
                t.check(in_kernel && hom && distinct.len() as u64 == l && tr.multiplier % l == 0, || {
                    format!(
                        "{} h={h}: |L| = {l}, image size {}, |M(G,H,K)| = {}, in kernel {in_kernel}, homomorphism {hom}",
                        tr.label(&case.name, Some(m)),
                        distinct.len(),
                        tr.multiplier
                    )
                });
            }
        }
    }
    t.value("triples", triples.len());
    t.finish()
}

fn prop_p1(case: &Case, triples: &[&Triple]) -> Vec<CheckReport> {
    let g = &case.group;
    let mut t = Tally::new("prop-p1", case.name.clone());
    let mut link = Tally::new("prop-p1-first-link", case.name.clone());
    let exp = g.exponent() as u64;
    // H = K = G through the cover
    for p in prime_divisors(g.order() as u64) {
        let r = valuation(exp, p);
        match (0..=r).map(|j| exterior_degree_m(&case.cover, p.pow(j)).map(|d| d.value())).collect::<Result<Vec<_>>>() {
            Ok(chain) => t.check(chain.windows(2).all(|w| w[0] <= w[1]), || {
                let vals: Vec<String> = chain.iter().map(|&v| fraction(v)).collect();
                format!("H=whole K=whole p={p}: chain {}", vals.join(" , "))
            }),
            Err(e) => t.error(&format!("p={p}"), &e),
        }
    }
    // normal pairs with G = HK, through H ∧ K; the first link compares with H ∧ G
    let whole = g.whole();
    let by_pair: HashMap<(&[usize], &[usize]), &Triple> =
        triples.iter().map(|tr| ((tr.h.elements(), tr.k.elements()), *tr)).collect();
    for tr in triples {
        let Some(hg) = by_pair.get(&(tr.h.elements(), whole.elements())) else {
            t.check(false, || format!("{}: H ∧ G was not enumerated", tr.label(&case.name, None)));
            continue;
        };
        for p in prime_divisors(tr.h.order() as u64) {
            let r = valuation(tr.h.exponent() as u64, p);
            let values = (0..r)
                .map(|j| exterior_degree_of(&tr.product, p.pow(j)).map(|d| d.value()))
                .collect::<Result<Vec<_>>>()
                .and_then(|chain| Ok((chain, exterior_degree_of(&hg.product, p.pow(r - 1))?.value())));
            let (chain, top) = match values {
                Ok(v) => v,
                Err(e) => {
                    t.error(&tr.label(&case.name, None), &e);
                    continue;
                }
            };
            let label = || format!("{} p={p} r={r}", tr.label(&case.name, None));
            t.check(chain.windows(2).all(|w| w[0] <= w[1]), || {
                let vals: Vec<String> = chain.iter().map(|&v| fraction(v)).collect();
                format!("{}: chain {}", label(), vals.join(" , "))
            });
            // the sums Σ|C^∧_G(h^m)| >= Σ|C^∧_K(h^m)| compare; the degrees carry different denominators
            let last = *chain.last().expect("r >= 1 since p divides |H|");
            let (ng, nk) = (g.order() as u64, tr.k.order() as u64);
            let sum_g = top * Rational::from_integer(ng);
            let sum_k = last * Rational::from_integer(nk);
            t.check(sum_g >= sum_k, || format!("{}: sum over G {} < sum over K {}", label(), sum_g, sum_k));
            link.checked += 1;
            if top < last {
                link.finding(format!(
                    "{}: d^∧(H,G) = {} < d^∧(H,K) = {} at m = p^(r-1)",
                    label(),
                    fraction(top),
                    fraction(last)
                ));
            }
        }
    }
    vec![t.finish(), link.finish()]
}

fn cor_c1extra(case: &Case, triples: &[&Triple]) -> CheckReport {
    let mut t = Tally::new("cor-c1extra", case.name.clone());
    let mut met = 0;
    for tr in triples.iter().filter(|tr| tr.multiplier == 1) {
        let e = tr.h.exponent() as u64;
        for p in [2u64, 3, 5, 7, 11, 13] {
            if e % p == 0 {
                continue;
            }
            let r0 = if e == 1 { 1 } else { multiplicative_order(p, e) };
            for r in [r0, 2 * r0] {
                let Some(m) = p.checked_pow(r as u32) else { continue };
                met += 1;
                match tr.classes(m) {
                    Ok((_, table)) => t.check(
                        table.alpha.iter().all(|&a| a == 1) && table.l_orders.iter().all(|&l| l == 1),
                        || format!("{} (p={p}, r={r}): α {:?}, |L| {:?}", tr.label(&case.name, Some(m)), table.alpha, table.l_orders),
                    ),
                    Err(e) => t.error(&tr.label(&case.name, Some(m)), &e),
                }
            }
        }
    }
    t.value("hypotheses-met", met);
    t.finish()
}

fn cor_c1(case: &Case, triples: &[&Triple]) -> CheckReport {
    let mut t = Tally::new("cor-c1", case.name.clone());
    let mut min_classes = usize::MAX;
    let mut limit_checked = 0;
    for tr in triples {
        if tr.h.is_trivial() {
            continue;
        }
        let p_and_d = exterior_degree_of(&tr.product, 1).map(|d| d.value());
        let e = tr.h.exponent() as u64;
        let classes = conjugacy_classes_under(&tr.k, &tr.h).map(|c| c.len()).unwrap_or(0);
        min_classes = min_classes.min(classes);
        for p in prime_divisors(tr.h.order() as u64) {
            // r = 0: p^0 = 1
            match (&p_and_d, exterior_degree_of(&tr.product, p.pow(0))) {
                (Ok(a), Ok(b)) => t.check(*a == b.value(), || format!("{} p={p}: r = 0 differs", tr.label(&case.name, None))),
                (Err(e), _) => t.error(&tr.label(&case.name, None), e),
                (_, Err(e)) => t.error(&tr.label(&case.name, None), &e),
            }
            // d^∧_{p^r} is periodic in r once p^r kills the p-part of exp(H)
            let a = valuation(e, p);
            let e_prime = e / p.pow(a);
            let period = if e_prime == 1 { 1 } else { multiplicative_order(p, e_prime) as u32 };
            let mut ratios_one = true;
            let mut tail = Vec::new();
            for r in a..a + period {
                let m = reduced_power(p, r, e);
                match tr.classes(m) {
                    Ok((v, table)) => {
                        tail.push(v);
                        if table.alpha != table.l_orders {
                            ratios_one = false;
                        }
                    }
                    Err(err) => t.error(&tr.label(&case.name, Some(m)), &err),
                }
            }
            if ratios_one {
                limit_checked += 1;
                t.check(tail.iter().all(|&v| v == tr.d), || {
                    let vals: Vec<String> = tail.iter().map(|&v| fraction(v)).collect();
                    format!("{} p={p}: eventual values {} but d(H,K) = {}", tr.label(&case.name, None), vals.join(" , "), fraction(tr.d))
                });
            }
            if tr.h.order() as u64 == p {
                let inv_p = Rational::new(1, p);
                if tr.d != inv_p || tail.iter().any(|&v| v != inv_p) {
                    let vals: Vec<String> = tail.iter().map(|&v| fraction(v)).collect();
                    t.finding(format!(
                        "{} |H| = p = {p}: d(H,K) = {}, d^∧_(p^r) for large r = {}, remark predicts 1/{p}",
                        tr.label(&case.name, None),
                        fraction(tr.d),
                        vals.join(" , ")
                    ));
                }
            }
        }
    }
    if min_classes != usize::MAX {
        t.value("min-k_K(H)", min_classes);
    }
    t.value("limit-hypothesis-met", limit_checked);
    t.finish()
}

fn prop_p3_quotient(case: &Case, triples: &[&Triple], scope: &Scope) -> Vec<CheckReport> {
    let g = &case.group;
    let config = &scope.config;
    let mut t = Tally::new("prop-p3-quotient", case.name.clone());
    // the equality under N ⊆ Z^∧(H,K) together with h ∧ n = 1 for h in H, n in N
    let mut two = Tally::new("prop-p3-quotient-two-sided", case.name.clone());
    let normals: Vec<SubgroupHandle> = normal_subgroups(g).into_iter().filter(|n| !n.is_trivial()).collect();
    let mut equality_cases = 0;
    let (mut inequality_failures, mut equality_failures, mut same_pair_failures) = (0, 0, 0);
    for tr in triples {
        let meet = tr.h.intersection(&tr.k).expect("same parent");
        let center = match tr.product.exterior_center() {
            Ok(z) => z,
            Err(e) => {
                t.error(&tr.label(&case.name, None), &e);
                continue;
            }
        };
        for n in normals.iter().filter(|n| n.is_subgroup_of(&meet)) {
            let label = |m| format!("{} N={}", tr.label(&case.name, Some(m)), describe_subgroup(n));
            let pq = quotient(g, n)
                .and_then(|q| pair_product(&q.group, &q.image(&tr.h), &q.image(&tr.k), PairKind::Exterior, config));
            let pq = match pq {
                Ok(p) => p,
                Err(e) => {
                    t.error(&label(1), &e);
                    continue;
                }
            };
            let left = n.is_subgroup_of(&center);
            let right = n.elements().iter().all(|&y| tr.h.elements().iter().all(|&x| tr.product.pairing(x, y) == 0));
            if left {
                equality_cases += 1;
            }
            for m in 1..=scope.max_m {
                let (a, b) = match (exterior_degree_of(&tr.product, m), exterior_degree_of(&pq, m)) {
                    (Ok(a), Ok(b)) => (a.value(), b.value()),
                    (Err(e), _) | (_, Err(e)) => {
                        t.error(&label(m), &e);
                        continue;
                    }
                };
                let values = || format!("{}: d^∧_m(H,K) = {}, d^∧_m(H/N,K/N) = {}", label(m), fraction(a), fraction(b));
                if a > b {
                    inequality_failures += 1;
                }
                t.check(a <= b, values);
                if left {
                    if a != b {
                        equality_failures += 1;
                        if tr.h == tr.k {
                            same_pair_failures += 1;
                        }
                    }
                    t.check(a == b, || format!("{} with N in Z^∧(H,K)", values()));
                    if right {
                        two.check(a == b, || format!("{} with N in Z^∧(H,K) and H ∧ N = 1", values()));
                    }
                }
            }
        }
    }
    t.value("equality-instances", equality_cases);
    t.value("inequality-failures", inequality_failures);
    t.value("equality-failures", equality_failures);
    t.value("equality-failures-with-H=K", same_pair_failures);
    vec![t.finish(), two.finish()]
}

fn theorem_t1(case: &Case, triples: &[&Triple], scope: &Scope) -> CheckReport {
    let mut t = Tally::new("theorem-t1", case.name.clone());
    for tr in triples {
        for m in 1..=scope.max_m {
            match tr.classes(m) {
                Ok((v, table)) => {
                    let lower = Rational::from_integer(table.beta) * tr.d / Rational::from_integer(tr.multiplier);
                    let upper = Rational::from_integer(table.gamma) * tr.d;
                    t.check(lower <= v && v <= upper, || {
                        format!(
                            "{}: {} <= {} <= {} fails (β={}, γ={}, |M|={})",
                            tr.label(&case.name, Some(m)),
                            fraction(lower),
                            fraction(v),
                            fraction(upper),
                            table.beta,
                            table.gamma,
                            tr.multiplier
                        )
                    });
                }
                Err(e) => t.error(&tr.label(&case.name, Some(m)), &e),
            }
        }
    }
    t.value("triples", triples.len());
    t.finish()
}

/// Values of `m` with `exp(H) | m - 1`: the first few in `1..=max_m`, plus
/// `1 + exp(H)` and `1 + 2 exp(H)`.
fn exponent_shifts(e: u64, max_m: u64) -> Vec<u64> {
    let mut ms: Vec<u64> = (1..=max_m).filter(|m| (m - 1) % e == 0).collect();
    ms.extend([1 + e, 1 + 2 * e]);
    ms.sort_unstable();
    ms.dedup();
    ms
}

fn cor_c2(case: &Case, triples: &[&Triple], scope: &Scope) -> CheckReport {
    let mut t = Tally::new("cor-c2", case.name.clone());
    let mut met = 0;
    for tr in triples.iter().filter(|tr| tr.multiplier == 1) {
        for m in exponent_shifts(tr.h.exponent() as u64, scope.max_m) {
            met += 1;
            match exterior_degree_of(&tr.product, m) {
                Ok(v) => t.check(v.value() == tr.d, || {
                    format!("{}: d^∧_m = {} but d(H,K) = {}", tr.label(&case.name, Some(m)), v, fraction(tr.d))
                }),
                Err(e) => t.error(&tr.label(&case.name, Some(m)), &e),
            }
        }
    }
    t.value("hypotheses-met", met);
    t.finish()
}

fn cor_c3(case: &Case, triples: &[&Triple]) -> CheckReport {
    let mut t = Tally::new("cor-c3", case.name.clone());
    for tr in triples {
        let k_classes = match conjugacy_classes_under(&tr.k, &tr.h) {
            Ok(c) => c.len() as u64,
            Err(e) => {
                t.error(&tr.label(&case.name, None), &e);
                continue;
            }
        };
        for p in prime_divisors(tr.h.order() as u64) {
            let top = valuation(tr.h.exponent() as u64, p) + 1;
            let mut chain = Vec::new();
            let mut good_r = Vec::new();
            for r in 1..=top {
                let m = p.pow(r - 1);
                let (v, table) = match tr.classes(m) {
                    Ok(x) => x,
                    Err(e) => {
                        t.error(&tr.label(&case.name, Some(m)), &e);
                        break;
                    }
                };
                chain.push(v);
                let upper = Rational::new(table.gamma * k_classes, p);
                let lower = Rational::from_integer(table.beta) * tr.d / Rational::from_integer(tr.multiplier);
                let monotone = chain.windows(2).all(|w| w[0] <= w[1]);
                if upper >= v && monotone && chain[0] >= lower {
                    good_r.push(r);
                }
            }
            t.check(!good_r.is_empty(), || {
                let vals: Vec<String> = chain.iter().map(|&v| fraction(v)).collect();
                format!("{} p={p}: no r in 1..={top} satisfies the chain; values {}", tr.label(&case.name, None), vals.join(" , "))
            });
        }
    }
    t.finish()
}

fn smallest_prime(n: u64) -> Option<u64> {
    prime_divisors(n).first().copied()
}

fn prop_p3_bound(case: &Case, triples: &[&Triple], scope: &Scope) -> Vec<CheckReport> {
    let g = &case.group;
    let mut t = Tally::new("prop-p3-bound", case.name.clone());
    let mut alt = Tally::new("prop-p3-bound-k-reading", case.name.clone());
    let Some(p) = smallest_prime(g.order() as u64) else {
        return vec![t.finish()];
    };
    let bound = Rational::new(2 * p - 1, p * p);
    for tr in triples.iter().filter(|tr| !tr.product.kappa_image.is_trivial()) {
        let e = tr.h.exponent() as u64;
        let mut ms: Vec<u64> = (1..=scope.max_m).collect();
        ms.extend(exponent_shifts(e, scope.max_m));
        ms.sort_unstable();
        ms.dedup();
        for m in ms {
            let (v, table) = match tr.classes(m) {
                Ok(x) => x,
                Err(err) => {
                    t.error(&tr.label(&case.name, Some(m)), &err);
                    continue;
                }
            };
            let gamma_bound = Rational::from_integer(table.gamma) * bound;
            t.check(v <= gamma_bound, || {
                format!("{}: {} > γ(m)(2p-1)/p^2 = {} (p={p})", tr.label(&case.name, Some(m)), fraction(v), fraction(gamma_bound))
            });
            if (m - 1) % e == 0 {
                t.check(v <= Rational::new(2, p), || {
                    format!("{}: {} > 2/{p}", tr.label(&case.name, Some(m)), fraction(v))
                });
                // the same remark with p the smallest prime dividing |K|
                if let Some(q) = smallest_prime(tr.k.order() as u64) {
                    if q != p && v > Rational::new(2, q) {
                        alt.finding(format!(
                            "{}: {} > 2/{q} with q the smallest prime dividing |K|",
                            tr.label(&case.name, Some(m)),
                            fraction(v)
                        ));
                    }
                }
            }
        }
    }
    t.value("p", p);
    vec![t.finish(), alt.finish()]
}

fn cor_c4(case: &Case, triples: &[&Triple], scope: &Scope) -> CheckReport {
    let g = &case.group;
    let mut t = Tally::new("cor-c4", case.name.clone());
    let order = g.order() as u64;
    let smallest = smallest_prime(order);
    let mut met = 0;
    for tr in triples.iter().filter(|tr| tr.multiplier == 1) {
        for m in exponent_shifts(tr.h.exponent() as u64, scope.max_m) {
            let v = match exterior_degree_of(&tr.product, m) {
                Ok(v) => v.value(),
                Err(e) => {
                    t.error(&tr.label(&case.name, Some(m)), &e);
                    continue;
                }
            };
            for p in (2..=32u64).filter(|&p| is_prime(p)) {
                if v != Rational::new(2 * p - 1, p * p) {
                    continue;
                }
                met += 1;
                t.check(order % p == 0, || format!("{}: value (2p-1)/p^2 with p={p} not dividing |G|", tr.label(&case.name, Some(m))));
                if Some(p) == smallest {
                    let ih = tr.h.order() / tr.h.centralizer_of(&tr.k).expect("same parent").order();
                    let ik = tr.k.order() / tr.k.centralizer_of(&tr.h).expect("same parent").order();
                    t.check(ih as u64 == p && ik as u64 == p && tr.h != tr.k, || {
                        format!("{}: p={p} but |H:C_H(K)| = {ih}, |K:C_K(H)| = {ik}", tr.label(&case.name, Some(m)))
                    });
                }
            }
        }
    }
    t.value("hypotheses-met", met);
    t.finish()
}

fn oracle_case(case: &Case, triples: &[&Triple], scope: &Scope) -> CheckReport {
    let mut t = Tally::new("oracle", case.name.clone());
    let Some(tr) = triples.iter().find(|tr| tr.h.is_whole() && tr.k.is_whole()) else {
        t.check(false, || "G ∧ G was not enumerated".into());
        return t.finish();
    };
    compare_oracles(&mut t, &case.cover, &tr.product, scope.max_m);
    t.finish()
}

/// Cover-route pairing against the enumerated `G ∧ G`: the two pairings
/// must induce the same partition of `G x G`, the kernels must have equal
/// order, and exterior centers and degrees must coincide.
fn compare_oracles(t: &mut Tally, cover: &StemCover, product: &PairProduct, max_m: u64) {
    let g = cover.base();
    let n = g.order();
    let mut forward: HashMap<usize, usize> = HashMap::new();
    let mut backward: HashMap<usize, usize> = HashMap::new();
    let mut consistent = true;
    for x in 0..n {
        for y in 0..n {
            let a = cover.wedge(x, y);
            let b = product.pairing(x, y);
            if *forward.entry(a).or_insert(b) != b || *backward.entry(b).or_insert(a) != a {
                consistent = false;
            }
            t.check(cover.wedge_trivial(x, y) == (b == 0), || {
                format!("x={x} y={y}: cover trivial {}, enumerated trivial {}", cover.wedge_trivial(x, y), b == 0)
            });
        }
    }
    t.check(consistent, || "wedge values do not correspond one to one".into());
    let m_cover = cover.kernel().order();
    t.check(m_cover == product.kernel.order(), || {
        format!("|M(G)| = {m_cover} by homology, |ker κ'| = {}", product.kernel.order())
    });
    t.value("M(G)", cover.kernel());
    t.value("ker-kappa", &product.kernel);
    t.value("G∧G", product.order());
    match (cover.exterior_center(), product.exterior_center()) {
        (Ok(a), Ok(b)) => t.check(a == b, || format!("Z^∧(G): cover {:?}, enumerated {:?}", a.elements(), b.elements())),
        (Err(e), _) | (_, Err(e)) => t.error("exterior center", &e),
    }
    for m in 1..=max_m {
        match (exterior_degree_m(cover, m), exterior_degree_of(product, m)) {
            (Ok(a), Ok(b)) => t.check(a == b, || format!("m={m}: cover {a}, enumerated {b}")),
            (Err(e), _) | (_, Err(e)) => t.error(&format!("m={m}"), &e),
        }
    }
}

/// Cover route against the enumerated `G ∧ G` for a single group.
pub fn oracle_compare(g: &FiniteGroup, name: &str, config: &Config) -> Result<CheckReport> {
    let cover = build_cover(g, &config.caps)?;
    let product = pair_product(g, &g.whole(), &g.whole(), PairKind::Exterior, config)?;
    let mut t = Tally::new("oracle", name);
    compare_oracles(&mut t, &cover, &product, g.exponent() as u64 + 1);
    t.value("|G∧G| via cover", cover.exterior_square_order());
    Ok(t.finish())
}

fn cover_invariants(case: &Case, scope: &Scope) -> CheckReport {
    let g = &case.group;
    let cov = &case.cover;
    let mut t = Tally::new("cover-invariants", case.name.clone());
    t.check(cov.verify().is_ok(), || format!("{:?}", cov.verify()));
    let derived = cov.cover().derived_subgroup().order() as u64;
    let expected = cov.kernel().order() * g.derived_subgroup().order() as u64;
    t.check(derived == expected, || format!("|G*'| = {derived}, |M(G)||G'| = {expected}"));
    t.value("M(G)", cov.kernel());
    t.value("cover-order", cov.cover().order());
    for x in g.elements() {
        t.check(cov.wedge_trivial(x, x), || format!("x={x}: x ∧ x is not trivial"));
        for y in g.elements() {
            t.check(cov.wedge_trivial(x, y) == cov.wedge_trivial(y, x), || format!("x={x} y={y}: asymmetric"));
        }
        t.check(cov.exterior_centralizer(x).is_ok(), || format!("x={x}: {:?}", cov.exterior_centralizer(x).err()));
    }
    match cov.exterior_center() {
        Ok(z) => {
            t.check(z.is_subgroup_of(&g.center()), || "Z^∧(G) is not central".into());
            t.value("Z^∧(G)", z.order());
        }
        Err(e) => t.error("exterior center", &e),
    }
    let d = commutativity_degree(g).map(|d| d.value());
    let whole = g.whole();
    let mut power_prev: HashMap<u64, Rational> = HashMap::new();
    for m in 1..=scope.max_m.max(g.exponent() as u64) {
        let dw = match exterior_degree_m(cov, m) {
            Ok(v) => v.value(),
            Err(e) => {
                t.error(&format!("m={m}"), &e);
                continue;
            }
        };
        if m == 1 {
            if let Ok(d) = d {
                let equal_needed = cov.kernel().is_trivial();
                t.check(dw <= d && (!equal_needed || dw == d), || {
                    format!("d^∧(G) = {}, d(G) = {}, |M| = {}", fraction(dw), fraction(d), cov.kernel().order())
                });
            }
        }
        match power_commutativity_degree(m, &whole, &whole) {
            Ok(pc) => {
                let pc = pc.value();
                t.check(dw <= pc, || format!("m={m}: d^∧_m = {} exceeds the power commutativity degree {}", fraction(dw), fraction(pc)));
                // along prime-power chains the power commutativity degree does not decrease
                for p in prime_divisors(m) {
                    if m == p.pow(valuation(m, p)) {
                        if let Some(&prev) = power_prev.get(&p) {
                            t.check(prev <= pc, || format!("m={m}: power commutativity degree decreased"));
                        }
                        power_prev.insert(p, pc);
                    }
                }
            }
            Err(e) => t.error(&format!("m={m}"), &e),
        }
    }
    t.finish()
}

/// `(|A|, |B|)` coprime pairs checked for multiplicativity.
const COPRIME_PAIRS: &[(&str, &str)] = &[
    ("D(4)", "C(3)"),
    ("Q(2)", "C(3)"),
    ("C(2) x C(2)", "C(3)"),
    ("D(3)", "C(5)"),
    ("D(5)", "C(3)"),
    ("C(2) x C(2)", "C(5)"),
];

fn prop_p2(scope: &Scope) -> Result<Vec<CheckReport>> {
    let config = &scope.config;
    COPRIME_PAIRS
        .par_iter()
        .map(|&(a, b)| {
            let x = parse_group(a, config)?;
            let y = parse_group(b, config)?;
            let prod = direct_product(&x, &y)?;
            let mut t = Tally::new("prop-p2", format!("{a} x {b}"));
            let (cx, cy, cp) =
                (build_cover(&x, &config.caps)?, build_cover(&y, &config.caps)?, build_cover(&prod.group, &config.caps)?);
            let max_m = scope.max_m.max(prod.group.exponent() as u64);
            for m in 1..=max_m {
                let lhs = exterior_degree_m(&cp, m)?.value();
                let rhs = exterior_degree_m(&cx, m)?.value() * exterior_degree_m(&cy, m)?.value();
                t.check(lhs == rhs, || format!("whole groups, m={m}: {} != {}", fraction(lhs), fraction(rhs)));
            }
            // normal A, C of the first factor and B, D of the second, through the enumerated products
            let cap = config.caps.fp_pair;
            let nx = normal_subgroups(&x);
            let ny = normal_subgroups(&y);
            let embed = |s: &SubgroupHandle, t2: &SubgroupHandle| -> Result<SubgroupHandle> {
                let n2 = y.order();
                let elems = s.elements().iter().flat_map(|&u| t2.elements().iter().map(move |&v| u * n2 + v)).collect();
                SubgroupHandle::from_elements(&prod.group, elems)
            };
            let mut pairs = 0;
            for a_sub in &nx {
                for b_sub in &ny {
                    if a_sub.order() * b_sub.order() > cap {
                        continue;
                    }
                    for c_sub in &nx {
                        for d_sub in &ny {
                            if c_sub.order() * d_sub.order() > cap {
                                continue;
                            }
                            let left = embed(a_sub, b_sub)?;
                            let right = embed(c_sub, d_sub)?;
                            let whole = pair_product(&prod.group, &left, &right, PairKind::Exterior, config)?;
                            let first = pair_product(&x, a_sub, c_sub, PairKind::Exterior, config)?;
                            let second = pair_product(&y, b_sub, d_sub, PairKind::Exterior, config)?;
                            pairs += 1;
                            for m in 1..=scope.max_m {
                                let lhs = exterior_degree_of(&whole, m)?.value();
                                let rhs = exterior_degree_of(&first, m)?.value() * exterior_degree_of(&second, m)?.value();
                                t.check(lhs == rhs, || {
                                    format!(
                                        "A={} B={} C={} D={} m={m}: {} != {}",
                                        describe_subgroup(a_sub),
                                        describe_subgroup(b_sub),
                                        describe_subgroup(c_sub),
                                        describe_subgroup(d_sub),
                                        fraction(lhs),
                                        fraction(rhs)
                                    )
                                });
                            }
                        }
                    }
                }
            }
            t.value("subgroup-quadruples", pairs);
            Ok(t.finish())
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Dihedral,
    Quaternion,
}

fn family_group(f: Family, n: usize) -> Result<FiniteGroup> {
    match f {
        Family::Dihedral => build_dihedral(n),
        Family::Quaternion => build_quaternion(n),
    }
}

fn family_name(f: Family, n: usize) -> String {
    match f {
        Family::Dihedral => format!("D_{}", 2 * n),
        Family::Quaternion => format!("Q_{n}"),
    }
}

fn family_values(f: Family, n: usize, ms: impl Iterator<Item = u64>, config: &Config) -> Result<Vec<(u64, Rational)>> {
    let g = family_group(f, n)?;
    let cov = build_cover(&g, &config.caps)?;
    ms.map(|m| Ok((m, exterior_degree_m(&cov, m)?.value()))).collect()
}

fn closed_forms(f: Family, ns: std::ops::RangeInclusive<usize>, config: &Config) -> Vec<CheckReport> {
    let check = match f {
        Family::Dihedral => "closed-form-dihedral",
        Family::Quaternion => "closed-form-quaternion",
    };
    ns.collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let mut t = Tally::new(check, family_name(f, n));
            match family_values(f, n, 1..=2 * n as u64, config) {
                Ok(values) => {
                    for (m, v) in values {
                        let closed = match f {
                            Family::Dihedral => closed_form_dihedral(n as u64, m),
                            Family::Quaternion => closed_form_quaternion(n as u64, m),
                        };
                        match closed {
                            Ok(c) => t.check(c.value() == v, || format!("m={m}: computed {}, closed form {c}", fraction(v))),
                            Err(e) => t.error(&format!("m={m}"), &e),
                        }
                    }
                }
                Err(e) => t.error("cover", &e),
            }
            t.finish()
        })
        .collect()
}

fn dihedral_quaternion_equality(ns: std::ops::RangeInclusive<usize>, config: &Config) -> Vec<CheckReport> {
    ns.collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let mut t = Tally::new("dihedral-quaternion-equality", format!("n={n}"));
            let top = (2 * n as u64).max(8);
            let d = family_values(Family::Dihedral, n, 1..=top, config);
            let q = family_values(Family::Quaternion, n, 1..=top, config);
            match (d, q) {
                (Ok(d), Ok(q)) => {
                    for ((m, a), (_, b)) in d.into_iter().zip(q) {
                        t.check(a == b, || format!("m={m}: d^∧_m(D_2n) = {}, d^∧_m(Q_n) = {}", fraction(a), fraction(b)));
                    }
                }
                (Err(e), _) | (_, Err(e)) => t.error("cover", &e),
            }
            t.finish()
        })
        .collect()
}

fn dihedral_centralizers(ns: std::ops::RangeInclusive<usize>, config: &Config) -> Vec<CheckReport> {
    ns.map(|n| {
        let mut t = Tally::new("dihedral-centralizers", family_name(Family::Dihedral, n));
        let result = build_dihedral(n).and_then(|g| Ok((build_cover(&g, &config.caps)?, g)));
        match result {
            Ok((cov, g)) => {
                // rotations are 0..n, reflections n..2n
                for x in 1..2 * n {
                    let expected = if x < n { n } else { 2 };
                    match cov.exterior_centralizer(x) {
                        Ok(c) => t.check(c.order() == expected, || {
                            format!("x={} ({}): |C^∧(x)| = {}, expected {expected}", x, g.label(x), c.order())
                        }),
                        Err(e) => t.error(&format!("x={x}"), &e),
                    }
                }
                match cov.exterior_center() {
                    Ok(z) => t.check(z.is_trivial(), || format!("Z^∧ has order {}", z.order())),
                    Err(e) => t.error("exterior center", &e),
                }
            }
            Err(e) => t.error("cover", &e),
        }
        t.finish()
    })
    .collect()
}

fn dwedge_vs_d(ns: std::ops::RangeInclusive<usize>, config: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for f in [Family::Dihedral, Family::Quaternion] {
        for n in ns.clone() {
            if f == Family::Quaternion && n < 2 {
                continue;
            }
            let mut t = Tally::new("dwedge-vs-d", family_name(f, n));
            let r = family_group(f, n).and_then(|g| {
                let d = commutativity_degree(&g)?.value();
                let dw = exterior_degree_m(&build_cover(&g, &config.caps)?, 1)?.value();
                Ok((d, dw))
            });
            match r {
                Ok((d, dw)) => {
                    t.value("d", fraction(d));
                    t.value("d^∧", fraction(dw));
                    if d != dw {
                        t.finding(format!("d^∧ = {} differs from d = {}", fraction(dw), fraction(d)));
                    }
                }
                Err(e) => t.error("compute", &e),
            }
            out.push(t.finish());
        }
    }
    out
}

fn multiplier_dihedral(ns: std::ops::RangeInclusive<usize>, config: &Config) -> Vec<CheckReport> {
    ns.map(|n| {
        let mut t = Tally::new("multiplier-dihedral", family_name(Family::Dihedral, n));
        match build_dihedral(n).and_then(|g| schur_multiplier(&g, &config.caps)) {
            Ok(m) => {
                t.value("M", &m);
                if m.is_trivial() {
                    t.finding(format!("M(D_{}) is trivial", 2 * n));
                }
            }
            Err(e) => t.error("homology", &e),
        }
        t.finish()
    })
    .collect()
}

fn multiplier_facts(config: &Config) -> Vec<CheckReport> {
    let mut cyc = Tally::new("multiplier-facts", "C_n, n = 1..24");
    for n in 1..=24 {
        match build_cyclic(n).and_then(|g| schur_multiplier(&g, &config.caps)) {
            Ok(m) => cyc.check(m.is_trivial(), || format!("M(C_{n}) = {m}")),
            Err(e) => cyc.error(&format!("n={n}"), &e),
        }
    }
    let mut quat = Tally::new("multiplier-facts", "Q_n, n = 2..6");
    for n in 2..=6 {
        match build_quaternion(n).and_then(|g| schur_multiplier(&g, &config.caps)) {
            Ok(m) => quat.check(m.is_trivial(), || format!("M(Q_{n}) = {m}")),
            Err(e) => quat.error(&format!("n={n}"), &e),
        }
    }
    vec![cyc.finish(), quat.finish()]
}

fn todd_coxeter_suite(config: &Config) -> Vec<CheckReport> {
    let mut cases: Vec<(String, String, usize)> =
        (1..=30).map(|n| (format!("C_{n}"), format!("< a | a^{n} >"), n)).collect();
    cases.push(("S_3".into(), "< a,b | a^3, b^2, (ab)^2 >".into(), 6));
    cases.push(("D_8".into(), "< a,b | a^4, b^2, (ab)^2 >".into(), 8));
    for n in 2..=6 {
        cases.push((format!("Q_{n}"), format!("< a,b | a^{n} = b^2 = (ab)^2 >"), 4 * n));
    }
    cases
        .into_par_iter()
        .map(|(name, text, order)| {
            let mut t = Tally::new("todd-coxeter", name);
            t.value("presentation", &text);
            match parse_presentation(&text) {
                Ok(p) => {
                    for strategy in [Strategy::Hlt, Strategy::Felsch] {
                        match todd_coxeter(&p, &[], config.caps.coset_rows, strategy) {
                            Ok(table) => {
                                t.check(table.is_complete() && table.index() == order, || {
                                    format!("{strategy:?}: complete {}, index {}", table.is_complete(), table.index())
                                });
                                t.check(table.verify().is_ok(), || format!("{strategy:?}: relator scan {:?}", table.verify()));
                            }
                            Err(e) => t.error(&format!("{strategy:?}"), &e),
                        }
                    }
                }
                Err(e) => t.error("parse", &e),
            }
            t.finish()
        })
        .collect()
}

/// Random sparse matrices with dimensions up to `rows x cols` and entries in
/// `[-9, 9]`: checks `U M V = S`, unimodularity of `U` and `V`, `U U^-1 = 1`
/// and the divisor chain.
pub fn snf_random(count: usize, rows: usize, cols: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs: Vec<(usize, usize, Vec<Vec<i64>>)> = (0..count)
        .map(|_| {
            let r = rng.gen_range(1..=rows);
            let c = rng.gen_range(1..=cols);
            let density = rng.gen_range(0.02..0.3);
            let m = (0..r)
                .map(|_| (0..c).map(|_| if rng.gen_bool(density) { rng.gen_range(-9..=9) } else { 0 }).collect())
                .collect();
            (r, c, m)
        })
        .collect();
    let results: Vec<(usize, std::result::Result<(), String>)> = specs
        .into_par_iter()
        .enumerate()
        .map(|(i, (r, _, dense))| {
            let m = SparseIntMatrix::from_dense(&dense);
            let snf = smith_normal_form(&m);
            let check = || -> std::result::Result<(), String> {
                let u = snf.u.as_ref().ok_or("U missing")?;
                let v = snf.v.as_ref().ok_or("V missing")?;
                let ui = snf.u_inv.as_ref().ok_or("U^-1 missing")?;
                let s = u.mul(&m).and_then(|x| x.mul(v)).map_err(|e| e.to_string())?;
                if s != snf.s_matrix() {
                    return Err("U M V differs from S".into());
                }
                if u.mul(ui).map_err(|e| e.to_string())? != SparseIntMatrix::identity(r) {
                    return Err("U U^-1 is not the identity".into());
                }
                if !u.is_unimodular().map_err(|e| e.to_string())? || !v.is_unimodular().map_err(|e| e.to_string())? {
                    return Err("U or V is not unimodular".into());
                }
                let d = &snf.diagonal;
                if d.iter().any(|x| x.is_negative()) {
                    return Err("negative diagonal entry".into());
                }
                for w in d.windows(2) {
                    let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
                    if !ok {
                        return Err(format!("divisor chain broken: {} then {}", w[0], w[1]));
                    }
                }
                Ok(())
            };
            (i, check())
        })
        .collect();
    let mut t = Tally::new("snf-random", format!("{count} matrices up to {rows}x{cols}, seed {seed:#x}"));
    for (i, r) in results {
        t.check(r.is_ok(), || format!("matrix #{i}: {}", r.unwrap_err()));
    }
    t.finish()
}
