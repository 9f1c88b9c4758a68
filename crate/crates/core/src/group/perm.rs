use std::collections::HashMap;

use super::FiniteGroup;
use crate::config::Caps;
use crate::error::{Error, Result};

/// A permutation of `{1..d}`, stored 0-based as an image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    fn padded(&self, degree: usize) -> Vec<usize> {
        let mut v = self.0.clone();
        v.extend(self.0.len()..degree);
        v
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&cycle_string(&self.0))
    }
}

/// Cycle notation with 1-based points; the identity prints as `()`.
pub(crate) fn cycle_string(images: &[usize]) -> String {
    let mut seen = vec![false; images.len()];
    let mut out = String::new();
    for start in 0..images.len() {
        if seen[start] || images[start] == start {
            continue;
        }
        out.push('(');
        let mut p = start;
        let mut first = true;
        while !seen[p] {
            seen[p] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(p + 1).to_string());
            first = false;
            p = images[p];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses cycle notation such as `"(1 2 3)(4 5)"`. Points are 1-based;
/// commas may separate points inside a cycle.
pub fn parse_cycles(text: &str) -> Result<Permutation> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\n' => i += 1,
            b'(' => {
                i += 1;
                let mut cycle = Vec::new();
                loop {
                    while i < bytes.len() && matches!(bytes[i], b' ' | b',' | b'\t') {
                        i += 1;
                    }
                    if i >= bytes.len() {
                        return Err(Error::parse(i, "unterminated cycle"));
                    }
                    if bytes[i] == b')' {
                        i += 1;
                        break;
                    }
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(Error::parse(i, "expected a point number"));
                    }
                    let point: usize = text[start..i]
                        .parse()
                        .map_err(|_| Error::parse(start, "point number too large"))?;
                    if point == 0 {
                        return Err(Error::parse(start, "points are numbered from 1"));
                    }
                    cycle.push(point - 1);
                }
                cycles.push(cycle);
            }
            _ => return Err(Error::parse(i, "expected '('")),
        }
    }
    let degree = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(0);
    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    for cycle in &cycles {
        for (k, &p) in cycle.iter().enumerate() {
            if used[p] {
                return Err(Error::parse(0, format!("point {} appears twice", p + 1)));
            }
            used[p] = true;
            images[p] = cycle[(k + 1) % cycle.len()];
        }
    }
    Ok(Permutation(images))
}

/// Closure of a set of permutations, using the default order cap.
pub fn from_permutations(generators: &[Permutation]) -> Result<FiniteGroup> {
    from_permutations_with_cap(generators, Caps::default().permutation_closure)
}

/// Closure of a set of permutations.
///
/// Elements are numbered breadth-first from the identity, extending each
/// element by the generators in the order given. Products compose left to
/// right: `(x*y)(p) = y(x(p))`.
pub fn from_permutations_with_cap(generators: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    let degree = generators.iter().map(Permutation::degree).max().unwrap_or(0);
    let gens: Vec<Vec<usize>> = generators.iter().map(|g| g.padded(degree)).collect();
    for (k, g) in gens.iter().enumerate() {
        let mut hit = vec![false; degree];
        for &p in g {
            if p >= degree || hit[p] {
                return Err(Error::invalid(format!("generator {k} is not a bijection")));
            }
            hit[p] = true;
        }
    }
    let compose = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().map(|&p| y[p]).collect() };

    let mut elements: Vec<Vec<usize>> = vec![(0..degree).collect()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        for g in &gens {
            let next = compose(&elements[head], g);
            if !index.contains_key(&next) {
                if elements.len() == cap {
                    return Err(Error::CapExceeded {
                        what: "permutation group order".into(),
                        size: cap + 1,
                        cap,
                    });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        head += 1;
    }
    let order = elements.len();
    let mut table = Vec::with_capacity(order * order);
    for x in &elements {
        for y in &elements {
            table.push(index[&compose(x, y)] as u32);
        }
    }
    let labels = elements.iter().map(|p| cycle_string(p)).collect();
    FiniteGroup::from_flat_capped(order, table, Some(labels), cap.max(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_dihedral;

    fn perms(texts: &[&str]) -> Vec<Permutation> {
        texts.iter().map(|t| parse_cycles(t).unwrap()).collect()
    }

    #[test]
    fn parses_cycle_notation() {
        let p = parse_cycles("(1 2 3)(4 5)").unwrap();
        assert_eq!(p.0, vec![1, 2, 0, 4, 3]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(parse_cycles("()").unwrap().degree(), 0);
        assert_eq!(parse_cycles("(1,3)").unwrap().0, vec![2, 1, 0]);
    }

    #[test]
    fn rejects_malformed_permutations() {
        assert!(matches!(parse_cycles("(1 2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_cycles("(1 0)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_cycles("(1 2 1)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_cycles("1 2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn closure_examples() {
        let c2 = from_permutations(&perms(&["(1 2)"])).unwrap();
        assert_eq!(c2.order(), 2);

        let d8 = from_permutations(&perms(&["(1 2 3 4)", "(1 3)"])).unwrap();
        assert_eq!(d8.order(), 8);
        let reference = build_dihedral(4).unwrap();
        assert_eq!(d8.order_statistics(), reference.order_statistics());
        assert_eq!(d8.class_sizes(), reference.class_sizes());

        let v = from_permutations(&perms(&["(1 2)", "(3 4)"])).unwrap();
        assert_eq!(v.order(), 4);
        assert!(v.is_abelian());
    }

    #[test]
    fn closure_respects_cap() {
        let s5 = perms(&["(1 2 3 4 5)", "(1 2)"]);
        assert!(matches!(
            from_permutations_with_cap(&s5, 100),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(from_permutations(&s5).unwrap().order(), 120);
    }

    #[test]
    fn numbering_is_breadth_first() {
        let g = from_permutations(&perms(&["(1 2 3)"])).unwrap();
        assert_eq!(g.labels(), &["()", "(1 2 3)", "(1 3 2)"]);
    }
}
