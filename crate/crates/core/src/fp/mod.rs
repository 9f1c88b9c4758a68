//! Finitely presented groups: parsing, coset enumeration, the regular
//! representation of a finite presentation, and the pair products `H ⊗ K`
//! and `H ∧ K` built literally from their defining relations.

mod coset;
mod pair;
mod presentation;

pub use coset::{todd_coxeter, CosetTable, EnumerationStatus};
pub use pair::{
    pair_product, relative_exterior_center, relative_exterior_degree, triple_multiplier, PairKind,
    PairProduct, PairProductReport,
};
pub use presentation::{
    canonical_relator, cyclic_reduce, free_reduce, generator_letter, invert, parse_presentation, Letter,
    Presentation, Simplified, Word,
};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A finite presentation realized as a Cayley table.
#[derive(Clone, Debug)]
pub struct RegularRepresentation {
    pub group: FiniteGroup,
    /// Element of each generator.
    pub generator_images: Vec<usize>,
    /// For each element, the coset-tree parent and the letter leading to it.
    tree: Vec<(usize, Letter)>,
    pub table: CosetTable,
}

impl RegularRepresentation {
    /// Element represented by a word.
    pub fn evaluate(&self, w: &[Letter]) -> usize {
        self.table.act(0, w).expect("complete table")
    }

    /// Breadth-first tree word of an element.
    pub fn word_of(&self, mut x: usize) -> Word {
        let mut w = Vec::new();
        while x != 0 {
            let (p, l) = self.tree[x];
            w.push(l);
            x = p;
        }
        w.reverse();
        w
    }

    /// Images of elements under the homomorphism fixed by letter images,
    /// checked to be multiplicative on every pair of elements.
    pub fn extend_homomorphism(
        &self,
        target: &FiniteGroup,
        letter_image: impl Fn(Letter) -> usize,
    ) -> Result<Vec<usize>> {
        let n = self.group.order();
        let mut image = vec![0usize; n];
        for x in 1..n {
            let (p, l) = self.tree[x];
            image[x] = target.mul(image[p], letter_image(l));
        }
        for x in 0..n {
            for y in 0..n {
                if image[self.group.mul(x, y)] != target.mul(image[x], image[y]) {
                    return Err(Error::Invariant(format!("map is not multiplicative at ({x},{y})")));
                }
            }
        }
        for g in 0..self.table.presentation().num_generators() {
            let l = generator_letter(g, false);
            if image[self.evaluate(&[l])] != letter_image(l) {
                return Err(Error::Invariant(format!("generator {g} is not mapped as prescribed")));
            }
        }
        Ok(image)
    }
}

/// Enumerates `p` over the trivial subgroup and builds the Cayley table of
/// the right regular action.
pub fn regular_representation(p: &Presentation, config: &Config) -> Result<RegularRepresentation> {
    if p.abelianization_rank() > 0 {
        return Err(Error::Infinite(format!("abelianization of {p} has positive rank")));
    }
    let table = todd_coxeter(p, &[], config.caps.coset_rows, config.strategy)?;
    if !table.is_complete() {
        return Err(Error::Enumeration { instance: p.to_string(), cap: config.caps.coset_rows });
    }
    let n = table.index();
    if n > config.caps.cayley {
        return Err(Error::CapExceeded { what: "enumerated group order".into(), size: n, cap: config.caps.cayley });
    }
    // cosets are numbered breadth first, so a parent precedes its children
    let cols = table.columns() as Letter;
    let mut tree = vec![(0usize, 0 as Letter); n];
    let mut seen = vec![false; n];
    seen[0] = true;
    for c in 0..n {
        for l in 0..cols {
            let d = table.get(c, l).expect("complete table");
            if !seen[d] {
                seen[d] = true;
                tree[d] = (c, l);
            }
        }
    }
    // x * y = (x * parent(y)) . letter(y)
    let mut flat = vec![0u32; n * n];
    for x in 0..n {
        flat[x * n] = x as u32;
        for y in 1..n {
            let (p, l) = tree[y];
            let xp = flat[x * n + p] as usize;
            flat[x * n + y] = table.get(xp, l).expect("complete table") as u32;
        }
    }
    let word_of = |mut c: usize| {
        let mut w = Vec::new();
        while c != 0 {
            w.push(tree[c].1);
            c = tree[c].0;
        }
        w.reverse();
        w
    };
    let labels: Vec<String> = (0..n).map(|x| p.format_word(&word_of(x))).collect();
    let group = FiniteGroup::from_flat_capped(n, flat, Some(labels), config.caps.cayley)?;
    let generator_images =
        (0..p.num_generators()).map(|g| table.get(0, generator_letter(g, false)).expect("complete")).collect();
    Ok(RegularRepresentation { group, generator_images, tree, table })
}

pub fn regular_group(p: &Presentation, config: &Config) -> Result<FiniteGroup> {
    Ok(regular_representation(p, config)?.group)
}
