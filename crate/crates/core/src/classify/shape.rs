use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{FiniteMatrixGroup, Subgroup};

/// A permutation of the four computational basis states: `p[j]` is the
/// image of `j`.
pub type Perm4 = [u8; 4];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeTag {
    S4,
    A4,
    D4,
    V4,
    Other(String),
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeTag::S4 => f.write_str("S4"),
            ShapeTag::A4 => f.write_str("A4"),
            ShapeTag::D4 => f.write_str("D4"),
            ShapeTag::V4 => f.write_str("V4"),
            ShapeTag::Other(s) => f.write_str(s),
        }
    }
}

impl ShapeTag {
    pub fn parse(s: &str) -> ShapeTag {
        match s {
            "S4" => ShapeTag::S4,
            "A4" => ShapeTag::A4,
            "D4" => ShapeTag::D4,
            "V4" => ShapeTag::V4,
            other => ShapeTag::Other(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub tag: ShapeTag,
    /// The permutation image, sorted.
    pub image: Vec<Perm4>,
}

/// Shape of a monomial group together with its diagonal subgroup.
#[derive(Debug, Clone)]
pub struct MonomialStructure<'a> {
    pub shape: Shape,
    pub delta: Subgroup<'a, FiniteMatrixGroup>,
}

fn compose(a: &Perm4, b: &Perm4) -> Perm4 {
    [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize], a[b[3] as usize]]
}

fn perm_order(p: &Perm4) -> u32 {
    let id: Perm4 = [0, 1, 2, 3];
    let mut q = *p;
    let mut k = 1;
    while q != id {
        q = compose(&q, p);
        k += 1;
    }
    k
}

fn close_perms(gens: &[Perm4]) -> Vec<Perm4> {
    let mut set: BTreeSet<Perm4> = BTreeSet::from([[0, 1, 2, 3]]);
    let mut frontier: Vec<Perm4> = vec![[0, 1, 2, 3]];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(&x, g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

/// Isomorphism type of a subgroup of `S4` from its order and element orders.
pub fn classify_image(image: &[Perm4]) -> ShapeTag {
    let mut orders: BTreeMap<u32, usize> = BTreeMap::new();
    for p in image {
        *orders.entry(perm_order(p)).or_insert(0) += 1;
    }
    let count = |k| orders.get(&k).copied().unwrap_or(0);
    match image.len() {
        24 => ShapeTag::S4,
        12 if count(6) == 0 => ShapeTag::A4,
        8 if count(2) == 5 && count(4) == 2 => ShapeTag::D4,
        4 if count(2) == 3 => ShapeTag::V4,
        1 => ShapeTag::Other("trivial".into()),
        n => ShapeTag::Other(format!("order {n}")),
    }
}

fn is_diagonal(m: &crate::linal::GateMatrix) -> bool {
    let d = m.dim();
    (0..d).all(|i| (0..d).all(|j| i == j || m.get(i, j).is_zero()))
}

/// `None` if some generator is not monomial; otherwise the permutation
/// image and the kernel `Δ` of diagonal elements.
pub fn monomial_shape<'a>(g: &Subgroup<'a, FiniteMatrixGroup>) -> Option<MonomialStructure<'a>> {
    let amb = g.ambient();
    let mut perm_gens = Vec::with_capacity(g.generators().len());
    for &x in g.generators() {
        let (perm, _) = amb.element(x).monomial_parts()?;
        if perm.len() != 4 {
            return None;
        }
        perm_gens.push([perm[0] as u8, perm[1] as u8, perm[2] as u8, perm[3] as u8]);
    }
    let image = close_perms(&perm_gens);
    let diag: Vec<u32> = g.members().iter().copied().filter(|&x| is_diagonal(amb.element(x))).collect();
    debug_assert_eq!(diag.len() * image.len(), g.order());
    let delta = Subgroup::from_members(amb, diag.clone(), diag);
    Some(MonomialStructure { shape: Shape { tag: classify_image(&image), image }, delta })
}
