//! Quotients by normal subgroups and the full subgroup lattice of a small
//! abstract group via cyclic extension.
//!
//! Every subgroup `U` has a subnormal chain from its perfect residuum `P`
//! with prime-index steps, each step adding one element `z` that normalizes
//! the previous term and has prime order modulo it. Starting from the
//! trivial group and all perfect subgroups, repeated extension therefore
//! reaches every subgroup. Perfect subgroups are found as perfect residua of
//! two-generator subgroups and closed under conjugation.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use super::{CayleyGroup, FiniteMatrixGroup, IndexGroup, Subgroup};
use crate::error::{Error, Result};

/// Largest quotient order [`Quotient::new`] accepts.
pub const MAX_QUOTIENT_ORDER: usize = 5000;

fn is_prime(k: u32) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)
}

/// Representatives of the conjugacy classes of `g`.
fn class_representatives<G: IndexGroup>(g: &G) -> Vec<u32> {
    let n = g.size();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut reps = Vec::new();
    for x in 0..n as u32 {
        if seen.contains(x as usize) {
            continue;
        }
        reps.push(x);
        for s in 0..n as u32 {
            seen.insert(g.conj(x, s) as usize);
        }
    }
    reps
}

/// All nontrivial perfect subgroups that arise as perfect residua of
/// two-generator subgroups, closed under conjugation.
fn perfect_subgroups<G: IndexGroup>(g: &G) -> Vec<Subgroup<'_, G>> {
    let n = g.size() as u32;
    let mut seen_pairs: HashSet<FixedBitSet> = HashSet::new();
    let mut found: HashMap<FixedBitSet, Subgroup<'_, G>> = HashMap::new();
    for a in class_representatives(g) {
        if a == 0 {
            continue;
        }
        for b in 0..n {
            let k = Subgroup::generate(g, &[a, b]);
            if k.order() < 60 || !seen_pairs.insert(k.mask().clone()) {
                continue;
            }
            let p = k.perfect_residuum();
            if p.order() > 1 {
                found.entry(p.mask().clone()).or_insert(p);
            }
        }
    }
    let mut queue: Vec<Subgroup<'_, G>> = found.values().cloned().collect();
    let mut i = 0;
    while i < queue.len() {
        let p = queue[i].clone();
        i += 1;
        for s in 0..n {
            let c = p.conjugate(s);
            if !found.contains_key(c.mask()) {
                found.insert(c.mask().clone(), c.clone());
                queue.push(c);
            }
        }
    }
    let mut out: Vec<_> = found.into_values().collect();
    out.sort_by(|x, y| (x.order(), x.members()).cmp(&(y.order(), y.members())));
    out
}

/// Every subgroup of `g`, including the trivial group and `g` itself,
/// sorted by order and then by member list.
pub fn all_subgroups<G: IndexGroup>(g: &G) -> Vec<Subgroup<'_, G>> {
    let n = g.size() as u32;
    let mut index: HashSet<FixedBitSet> = HashSet::new();
    let mut list: Vec<Subgroup<'_, G>> = Vec::new();
    for s in std::iter::once(Subgroup::trivial(g)).chain(perfect_subgroups(g)) {
        if index.insert(s.mask().clone()) {
            list.push(s);
        }
    }
    let mut next = 0;
    while next < list.len() {
        let h = list[next].clone();
        next += 1;
        let mut covered = h.mask().clone();
        for z in 0..n {
            if covered.contains(z as usize) {
                continue;
            }
            let mut y = z;
            let mut k = 1u32;
            while !h.contains(y) {
                y = g.mul(y, z);
                k += 1;
            }
            if !is_prime(k) {
                continue;
            }
            if !h.generators().iter().all(|&x| h.contains(g.conj(x, z))) {
                continue;
            }
            let mut members = Vec::with_capacity(h.order() * k as usize);
            let mut w = 0u32;
            for _ in 0..k {
                members.extend(h.members().iter().map(|&x| g.mul(x, w)));
                w = g.mul(w, z);
            }
            let mut gens = h.generators().to_vec();
            gens.push(z);
            let ext = Subgroup::from_members(g, members, gens);
            covered.union_with(ext.mask());
            if index.insert(ext.mask().clone()) {
                list.push(ext);
            }
        }
    }
    list.sort_by(|x, y| (x.order(), x.members()).cmp(&(y.order(), y.members())));
    list
}

/// `H / N` for `N` normal in `H`, with cosets numbered so that the identity
/// coset is 0 and the others follow the order of their minimal canonical key.
pub struct Quotient<'a> {
    h: Subgroup<'a, FiniteMatrixGroup>,
    n: Subgroup<'a, FiniteMatrixGroup>,
    group: CayleyGroup,
    cosets: Vec<Vec<u32>>,
    reps: Vec<u32>,
}

impl<'a> Quotient<'a> {
    pub fn new(h: &Subgroup<'a, FiniteMatrixGroup>, n: &Subgroup<'a, FiniteMatrixGroup>) -> Result<Self> {
        if !n.is_normal_in(h) {
            return Err(Error::Domain("quotient by a subgroup that is not normal".into()));
        }
        let q = h.order() / n.order();
        if q > MAX_QUOTIENT_ORDER {
            return Err(Error::Resource(format!("quotient of order {q} exceeds {MAX_QUOTIENT_ORDER}")));
        }
        let amb = h.ambient();
        let mut assigned = FixedBitSet::with_capacity(amb.order());
        let mut raw: Vec<(String, u32, Vec<u32>)> = Vec::with_capacity(q);
        for &x in h.members() {
            if assigned.contains(x as usize) {
                continue;
            }
            let members: Vec<u32> = n.members().iter().map(|&m| amb.mul(x, m)).collect();
            let (key, rep) = members
                .iter()
                .map(|&m| (amb.element(m).canonical_key(), m))
                .min()
                .expect("nonempty coset");
            for &m in &members {
                assigned.insert(m as usize);
            }
            raw.push((key, rep, members));
        }
        raw[1..].sort_by(|a, b| a.0.cmp(&b.0));
        let mut coset_of = vec![u32::MAX; amb.order()];
        let mut cosets = Vec::with_capacity(q);
        let mut reps = Vec::with_capacity(q);
        for (id, (_, rep, mut members)) in raw.into_iter().enumerate() {
            for &m in &members {
                coset_of[m as usize] = id as u32;
            }
            members.sort_unstable();
            cosets.push(members);
            reps.push(rep);
        }
        let mut table = Vec::with_capacity(q * q);
        for a in 0..q {
            for b in 0..q {
                table.push(coset_of[amb.mul(reps[a], reps[b]) as usize]);
            }
        }
        let group = CayleyGroup::from_table(q, table)?;
        Ok(Quotient { h: h.clone(), n: n.clone(), group, cosets, reps })
    }

    pub fn group(&self) -> &CayleyGroup {
        &self.group
    }

    pub fn representatives(&self) -> &[u32] {
        &self.reps
    }

    /// Preimage of a subgroup of the quotient.
    pub fn pullback(&self, k: &Subgroup<'_, CayleyGroup>) -> Subgroup<'a, FiniteMatrixGroup> {
        let members: Vec<u32> = k.members().iter().flat_map(|&c| self.cosets[c as usize].iter().copied()).collect();
        let mut gens = self.n.generators().to_vec();
        gens.extend(k.generators().iter().map(|&c| self.reps[c as usize]));
        Subgroup::from_members(self.h.ambient(), members, gens)
    }

    /// Every subgroup between `N` and `H`, endpoints included.
    pub fn lattice(&self) -> Vec<Subgroup<'a, FiniteMatrixGroup>> {
        all_subgroups(&self.group).iter().map(|k| self.pullback(k)).collect()
    }
}

impl<'a> Subgroup<'a, FiniteMatrixGroup> {
    /// Subgroups strictly between `p` and `self`; `p` must be normal in `self`.
    pub fn intermediate_subgroups(&self, p: &Subgroup<'a, FiniteMatrixGroup>) -> Result<Vec<Self>> {
        let q = Quotient::new(self, p)?;
        Ok(q.lattice().into_iter().filter(|s| s.order() != self.order() && s.order() != p.order()).collect())
    }
}

impl FiniteMatrixGroup {
    /// Subgroups strictly between `p` and the whole group.
    pub fn intermediate_subgroups<'a>(&'a self, p: &Subgroup<'a, FiniteMatrixGroup>) -> Result<Vec<Subgroup<'a, FiniteMatrixGroup>>> {
        self.whole().intermediate_subgroups(p)
    }
}
