//! Finite matrix groups: closure, index arithmetic, subgroups and lattices.
//!
//! A [`FiniteMatrixGroup`] stores its elements in breadth-first order together
//! with the word tree that produced them. Every element is addressed by a
//! `u32` index, and products are evaluated by replaying the word of the right
//! factor through per-generator permutations, so no matrix arithmetic is
//! needed once the closure is built.

mod abstract_group;
pub mod cache;
mod fingerprint;
mod lattice;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use indexmap::IndexSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::linal::GateMatrix;

pub use abstract_group::CayleyGroup;
pub use fingerprint::{FingerprintExtension, GroupFingerprint};
pub use lattice::{all_subgroups, Quotient, MAX_QUOTIENT_ORDER};
pub use cache::GroupCache;
pub use subgroup::Subgroup;

pub const DEFAULT_CAP: usize = 200_000;

pub(crate) const ROOT: u8 = u8::MAX;
const BATCH: usize = 4096;

/// Minimal interface shared by matrix groups and Cayley-table groups.
/// Element `0` is the identity.
pub trait IndexGroup: Sync {
    fn size(&self) -> usize;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
    fn element_order(&self, a: u32) -> u32;

    /// `s⁻¹ x s`.
    fn conj(&self, x: u32, s: u32) -> u32 {
        self.mul(self.inv(self.mul(self.inv(x), s)), s)
    }

    /// `a⁻¹ b⁻¹ a b`.
    fn commutator(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    fn pow(&self, a: u32, k: u32) -> u32 {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LiftSymbol {
    None,
    Tau,
    Sigma,
}

impl LiftSymbol {
    pub fn from_scalar_order(n: u64) -> Self {
        match n {
            4 => LiftSymbol::Sigma,
            2 => LiftSymbol::Tau,
            _ => LiftSymbol::None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            LiftSymbol::None => "",
            LiftSymbol::Tau => "τ",
            LiftSymbol::Sigma => "σ",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "" | "none" => Ok(LiftSymbol::None),
            "τ" | "tau" => Ok(LiftSymbol::Tau),
            "σ" | "sigma" => Ok(LiftSymbol::Sigma),
            other => Err(Error::Lookup(format!("lift symbol '{other}'"))),
        }
    }
}

impl fmt::Display for LiftSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Size of the scalar subgroup and the matching lift symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftClass {
    pub scalar_subgroup_order: u64,
    pub symbol: LiftSymbol,
}

/// Distinct trace values and, for every element, the index of its trace.
#[derive(Debug, Clone)]
pub struct TraceTable {
    pub values: Vec<Cyclotomic>,
    pub of: Vec<u32>,
}

pub struct FiniteMatrixGroup {
    dim: usize,
    generators: Vec<GateMatrix>,
    elements: IndexSet<GateMatrix>,
    parent: Vec<u32>,
    via: Vec<u8>,
    word_off: Vec<u32>,
    words: Vec<u8>,
    right: Vec<Vec<u32>>,
    left_inv: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    orders: OnceLock<Vec<u32>>,
    traces: OnceLock<TraceTable>,
    scalars: OnceLock<Vec<u32>>,
}

impl fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMatrixGroup")
            .field("dim", &self.dim)
            .field("generators", &self.generators.len())
            .field("order", &self.order())
            .finish()
    }
}

/// Raw BFS output shared by matrix closure, subgroup materialization and the
/// disk cache.
pub(crate) struct Skeleton {
    pub dim: usize,
    pub generators: Vec<GateMatrix>,
    pub elements: IndexSet<GateMatrix>,
    pub parent: Vec<u32>,
    pub via: Vec<u8>,
    pub right: Vec<Vec<u32>>,
}

fn check_generators(gens: &[GateMatrix]) -> Result<usize> {
    let dim = gens.first().map(|g| g.dim()).ok_or_else(|| Error::Domain("empty generator list".into()))?;
    if gens.len() >= ROOT as usize {
        return Err(Error::Domain(format!("{} generators; at most 254 supported", gens.len())));
    }
    for (k, g) in gens.iter().enumerate() {
        if g.dim() != dim {
            return Err(Error::Dimension(format!("generator {k} is {0}x{0}, expected {dim}x{dim}", g.dim())));
        }
        if !g.det().is_one() {
            return Err(Error::Domain(format!("generator {k} does not have determinant 1")));
        }
    }
    Ok(dim)
}

impl FiniteMatrixGroup {
    /// Breadth-first closure of `gens`, failing once more than `cap` elements
    /// have been found.
    pub fn closure(gens: &[GateMatrix], cap: usize) -> Result<Self> {
        let dim = check_generators(gens)?;
        let mut elements = IndexSet::new();
        elements.insert(GateMatrix::identity(dim));
        let mut parent = vec![0u32];
        let mut via = vec![ROOT];
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut next = 0usize;
        while next < elements.len() {
            let end = (next + BATCH).min(elements.len());
            let products: Vec<Vec<GateMatrix>> = (next..end)
                .into_par_iter()
                .map(|x| gens.iter().map(|g| elements[x].mul(g)).collect())
                .collect();
            for (off, prods) in products.into_iter().enumerate() {
                let x = (next + off) as u32;
                for (gi, p) in prods.into_iter().enumerate() {
                    let (idx, new) = elements.insert_full(p);
                    if new {
                        if elements.len() > cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        parent.push(x);
                        via.push(gi as u8);
                    }
                    right[gi].push(idx as u32);
                }
            }
            next = end;
        }
        Ok(Self::finish(Skeleton { dim, generators: gens.to_vec(), elements, parent, via, right }))
    }

    /// The trivial group in dimension `dim`.
    pub fn trivial(dim: usize) -> Self {
        let mut elements = IndexSet::new();
        elements.insert(GateMatrix::identity(dim));
        Self::finish(Skeleton {
            dim,
            generators: Vec::new(),
            elements,
            parent: vec![0],
            via: vec![ROOT],
            right: Vec::new(),
        })
    }

    pub(crate) fn finish(sk: Skeleton) -> Self {
        let n = sk.elements.len();
        let mut word_off = Vec::with_capacity(n + 1);
        let mut words: Vec<u8> = Vec::new();
        word_off.push(0u32);
        word_off.push(0u32);
        for x in 1..n {
            let p = sk.parent[x] as usize;
            let (s, e) = (word_off[p] as usize, word_off[p + 1] as usize);
            words.extend_from_within(s..e);
            words.push(sk.via[x]);
            word_off.push(words.len() as u32);
        }
        let left_inv: Vec<Vec<u32>> = (0..sk.right.len())
            .map(|g| {
                let mut left = vec![0u32; n];
                left[0] = sk.right[g][0];
                for x in 1..n {
                    let h = sk.via[x] as usize;
                    left[x] = sk.right[h][left[sk.parent[x] as usize] as usize];
                }
                let mut li = vec![0u32; n];
                for (x, &y) in left.iter().enumerate() {
                    li[y as usize] = x as u32;
                }
                li
            })
            .collect();
        let mut inverse = vec![0u32; n];
        for x in 1..n {
            let h = sk.via[x] as usize;
            inverse[x] = left_inv[h][inverse[sk.parent[x] as usize] as usize];
        }
        FiniteMatrixGroup {
            dim: sk.dim,
            generators: sk.generators,
            elements: sk.elements,
            parent: sk.parent,
            via: sk.via,
            word_off,
            words,
            right: sk.right,
            left_inv,
            inverse,
            orders: OnceLock::new(),
            traces: OnceLock::new(),
            scalars: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[GateMatrix] {
        &self.generators
    }

    /// Elements in breadth-first order; index 0 is the identity.
    pub fn elements(&self) -> &IndexSet<GateMatrix> {
        &self.elements
    }

    pub fn element(&self, idx: u32) -> &GateMatrix {
        &self.elements[idx as usize]
    }

    pub fn index_of(&self, m: &GateMatrix) -> Option<u32> {
        self.elements.get_index_of(m).map(|i| i as u32)
    }

    pub fn contains(&self, m: &GateMatrix) -> bool {
        self.elements.contains(m)
    }

    /// Index of the `k`-th generator.
    pub fn generator_index(&self, k: usize) -> u32 {
        self.right[k][0]
    }

    pub fn generator_indices(&self) -> Vec<u32> {
        (0..self.generators.len()).map(|k| self.generator_index(k)).collect()
    }

    /// Generator sequence whose product (left to right) is element `x`.
    pub fn word(&self, x: u32) -> &[u8] {
        let x = x as usize;
        &self.words[self.word_off[x] as usize..self.word_off[x + 1] as usize]
    }

    pub(crate) fn skeleton_parts(&self) -> (&[u32], &[u8], &[Vec<u32>]) {
        (&self.parent, &self.via, &self.right)
    }

    /// Multiplicative order of every element.
    pub fn element_orders(&self) -> &[u32] {
        self.orders.get_or_init(|| {
            (0..self.order() as u32)
                .into_par_iter()
                .map(|x| {
                    let mut y = x;
                    let mut k = 1;
                    while y != 0 {
                        y = self.mul(y, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn traces(&self) -> &TraceTable {
        self.traces.get_or_init(|| {
            let mut index: HashMap<Cyclotomic, u32> = HashMap::new();
            let mut values = Vec::new();
            let mut of = Vec::with_capacity(self.order());
            for m in &self.elements {
                let t = m.trace();
                let id = *index.entry(t.clone()).or_insert_with(|| {
                    values.push(t);
                    (values.len() - 1) as u32
                });
                of.push(id);
            }
            TraceTable { values, of }
        })
    }

    /// Indices of scalar elements.
    pub fn scalar_indices(&self) -> &[u32] {
        self.scalars.get_or_init(|| {
            (0..self.order() as u32).filter(|&x| self.element(x).is_scalar().is_some()).collect()
        })
    }

    pub fn lift_class(&self) -> LiftClass {
        let n = self.scalar_indices().len() as u64;
        LiftClass { scalar_subgroup_order: n, symbol: LiftSymbol::from_scalar_order(n) }
    }

    pub fn projective_order(&self) -> u64 {
        self.order() as u64 / self.lift_class().scalar_subgroup_order
    }

    /// The whole group as a subgroup view of itself.
    pub fn whole(&self) -> Subgroup<'_, Self> {
        Subgroup::from_members(self, (0..self.order() as u32).collect(), self.generator_indices())
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup(&self, gens: &[u32]) -> Subgroup<'_, Self> {
        Subgroup::generate(self, gens)
    }

    /// Subgroup generated by matrices, each of which must lie in the group.
    pub fn subgroup_of(&self, gens: &[GateMatrix]) -> Result<Subgroup<'_, Self>> {
        let idx = gens
            .iter()
            .map(|m| self.index_of(m).ok_or_else(|| Error::Lookup("generator is not an element of the ambient group".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup(&idx))
    }

    pub fn derived_subgroup(&self) -> FiniteMatrixGroup {
        self.whole().derived().to_group()
    }

    pub fn center(&self) -> Subgroup<'_, Self> {
        self.whole().center()
    }

    pub fn is_perfect(&self) -> bool {
        self.whole().is_perfect()
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        self.whole().fingerprint()
    }

    /// Whether every element of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &FiniteMatrixGroup) -> bool {
        self.dim == other.dim && self.elements.iter().all(|m| other.contains(m))
    }

    /// Whether `self ⊆ other` and `other` normalizes `self`.
    pub fn is_normal_in(&self, other: &FiniteMatrixGroup) -> bool {
        if !self.is_subgroup_of(other) {
            return false;
        }
        other.generators.iter().all(|g| {
            let gi = g.adjoint();
            self.generators.iter().all(|h| self.contains(&gi.mul(h).mul(g)))
        })
    }

    /// Equality as sets of matrices.
    pub fn same_elements(&self, other: &FiniteMatrixGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }
}

impl IndexGroup for FiniteMatrixGroup {
    fn size(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let mut x = a;
        for &g in self.word(b) {
            x = self.right[g as usize][x as usize];
        }
        x
    }

    fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    fn element_order(&self, a: u32) -> u32 {
        self.element_orders()[a as usize]
    }

    fn conj(&self, x: u32, s: u32) -> u32 {
        if s != 0 && self.word(s).len() == 1 {
            let g = self.word(s)[0] as usize;
            return self.right[g][self.left_inv[g][x as usize] as usize];
        }
        self.mul(self.inv(self.mul(self.inv(x), s)), s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{constant, parse_generator_list};

    fn group(src: &str) -> FiniteMatrixGroup {
        FiniteMatrixGroup::closure(&parse_generator_list(src).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn pauli_group_has_32_elements() {
        let p2 = group("XI, ZI, IX, IZ");
        assert_eq!(p2.order(), 32);
        assert_eq!(p2.lift_class(), LiftClass { scalar_subgroup_order: 2, symbol: LiftSymbol::Tau });
        assert_eq!(p2.projective_order(), 16);
    }

    #[test]
    fn index_arithmetic_matches_matrices() {
        let g = group("SH, BELL");
        let n = g.order() as u32;
        for a in (0..n).step_by(7) {
            for b in (0..n).step_by(11) {
                let want = g.element(a).mul(g.element(b));
                assert_eq!(g.element(g.mul(a, b)), &want);
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
            let s = g.generator_index(1);
            let want = g.element(s).adjoint().mul(g.element(a)).mul(g.element(s));
            assert_eq!(g.element(g.conj(a, s)), &want);
        }
    }

    #[test]
    fn trivial_and_cap() {
        let t = FiniteMatrixGroup::closure(&[GateMatrix::identity(4)], 10).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.lift_class().symbol, LiftSymbol::None);
        let err = FiniteMatrixGroup::closure(&parse_generator_list("SI, HI, IS, IH").unwrap(), 100);
        assert!(matches!(err, Err(Error::CapExceeded { cap: 100 })));
        let bad = FiniteMatrixGroup::closure(&[GateMatrix::identity(2), GateMatrix::identity(4)], 10);
        assert!(matches!(bad, Err(Error::Dimension(_))));
    }

    #[test]
    fn q1_is_pauli_group() {
        let g = FiniteMatrixGroup::closure(&crate::gates::q(1), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.contains(&constant("Z").unwrap()));
    }

    #[test]
    fn orders_of_pauli_elements() {
        let p2 = group("XI, ZI, IX, IZ");
        let mut hist = std::collections::BTreeMap::new();
        for &o in p2.element_orders() {
            *hist.entry(o).or_insert(0) += 1;
        }
        // ±II, then the 30 non-scalar elements: weight-one strings have
        // order 4, weight-two strings order 2
        assert_eq!(hist.get(&1), Some(&1));
        assert_eq!(hist.get(&2), Some(&(1 + 18)));
        assert_eq!(hist.get(&4), Some(&12));
    }
}
