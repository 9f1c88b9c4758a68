//! Named small groups used by the sweeps and the verification suites.

use crate::config::Config;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::spec::parse_group;

/// Name, order and group expression of every corpus group, by increasing order.
pub const CORPUS: &[(&str, usize, &str)] = &[
    ("C1", 1, "C(1)"),
    ("C2", 2, "C(2)"),
    ("C3", 3, "C(3)"),
    ("C4", 4, "C(4)"),
    ("C2xC2", 4, "C(2) x C(2)"),
    ("C5", 5, "C(5)"),
    ("C6", 6, "C(6)"),
    ("S3", 6, "D(3)"),
    ("C7", 7, "C(7)"),
    ("C8", 8, "C(8)"),
    ("C4xC2", 8, "C(4) x C(2)"),
    ("C2^3", 8, "C(2) x C(2) x C(2)"),
    ("D8", 8, "D(4)"),
    ("Q8", 8, "Q(2)"),
    ("C9", 9, "C(9)"),
    ("C3xC3", 9, "C(3) x C(3)"),
    ("C10", 10, "C(10)"),
    ("D10", 10, "D(5)"),
    ("C11", 11, "C(11)"),
    ("C12", 12, "C(12)"),
    ("C2xC6", 12, "C(2) x C(6)"),
    ("D12", 12, "D(6)"),
    ("Q12", 12, "Q(3)"),
    ("A4", 12, "perm:[(1 2 3), (1 2)(3 4)]"),
    ("C13", 13, "C(13)"),
    ("C14", 14, "C(14)"),
    ("D14", 14, "D(7)"),
    ("C15", 15, "C(15)"),
    ("C16", 16, "C(16)"),
    ("C8xC2", 16, "C(8) x C(2)"),
    ("C4xC4", 16, "C(4) x C(4)"),
    ("C4xC2^2", 16, "C(4) x C(2) x C(2)"),
    ("C2^4", 16, "C(2) x C(2) x C(2) x C(2)"),
    ("D16", 16, "D(8)"),
    ("Q16", 16, "Q(4)"),
    ("SD16", 16, "fp:<a,b | a^8, b^2, b a b^-1 = a^3>"),
    ("M16", 16, "fp:<a,b | a^8, b^2, b a b^-1 = a^5>"),
    ("D8xC2", 16, "D(4) x C(2)"),
    ("Q8xC2", 16, "Q(2) x C(2)"),
    ("C4:C4", 16, "fp:<a,b | a^4, b^4, b a b^-1 = a^-1>"),
    ("C4oD8", 16, "fp:<a,b,c | a^4, b^2, (ab)^2, c^2 a^-2, ac = ca, bc = cb>"),
    ("C2^2:C4", 16, "fp:<a,b,c | a^4, b^2, c^2, ab = ba, bc = cb, c a c = a b>"),
    ("C18", 18, "C(18)"),
    ("D18", 18, "D(9)"),
    ("C3xS3", 18, "C(3) x D(3)"),
    ("C3xC6", 18, "C(3) x C(6)"),
    ("C20", 20, "C(20)"),
    ("D20", 20, "D(10)"),
    ("Q20", 20, "Q(5)"),
    ("C21", 21, "C(21)"),
    ("D22", 22, "D(11)"),
    ("C24", 24, "C(24)"),
    ("C2xC12", 24, "C(2) x C(12)"),
    ("S4", 24, "S(4)"),
    ("D8xC3", 24, "D(4) x C(3)"),
    ("Q8xC3", 24, "Q(2) x C(3)"),
    ("D24", 24, "D(12)"),
    ("Q24", 24, "Q(6)"),
    ("A4xC2", 24, "perm:[(1 2 3), (1 2)(3 4)] x C(2)"),
];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub spec: &'static str,
    pub group: FiniteGroup,
}

/// Corpus groups of order at most `max_order`, in table order.
pub fn corpus(max_order: usize, config: &Config) -> Result<Vec<CorpusEntry>> {
    CORPUS
        .iter()
        .filter(|(_, order, _)| *order <= max_order)
        .map(|&(name, _, spec)| Ok(CorpusEntry { name, spec, group: parse_group(spec, config)? }))
        .collect()
}
