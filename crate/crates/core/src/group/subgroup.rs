//! Subgroups as index sets inside an ambient [`IndexGroup`].

use std::collections::{BTreeMap, HashSet};

use fixedbitset::FixedBitSet;

use super::fingerprint::{invariant_factors, FingerprintExtension, GroupFingerprint};
use super::{FiniteMatrixGroup, IndexGroup, Skeleton};

/// A subgroup of `G`, stored as a membership mask plus a generating set.
pub struct Subgroup<'a, G: IndexGroup> {
    ambient: &'a G,
    mask: FixedBitSet,
    members: Vec<u32>,
    gens: Vec<u32>,
}

impl<G: IndexGroup> std::fmt::Debug for Subgroup<'_, G> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup").field("order", &self.order()).field("gens", &self.gens).finish()
    }
}

impl<G: IndexGroup> Clone for Subgroup<'_, G> {
    fn clone(&self) -> Self {
        Subgroup { ambient: self.ambient, mask: self.mask.clone(), members: self.members.clone(), gens: self.gens.clone() }
    }
}

impl<G: IndexGroup> PartialEq for Subgroup<'_, G> {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask
    }
}

impl<G: IndexGroup> Eq for Subgroup<'_, G> {}

impl<'a, G: IndexGroup> Subgroup<'a, G> {
    /// Builds a view from a member list that is already known to be closed.
    pub fn from_members(ambient: &'a G, mut members: Vec<u32>, gens: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = FixedBitSet::with_capacity(ambient.size());
        for &m in &members {
            mask.insert(m as usize);
        }
        Subgroup { ambient, mask, members, gens }
    }

    /// Breadth-first closure of `gens` under right multiplication.
    pub fn generate(ambient: &'a G, gens: &[u32]) -> Self {
        let gens: Vec<u32> = {
            let mut seen = HashSet::new();
            gens.iter().copied().filter(|&g| g != 0 && seen.insert(g)).collect()
        };
        let mut mask = FixedBitSet::with_capacity(ambient.size());
        mask.insert(0);
        let mut members = vec![0u32];
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            next += 1;
            for &s in &gens {
                let y = ambient.mul(x, s);
                if !mask.put(y as usize) {
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { ambient, mask, members, gens }
    }

    pub fn trivial(ambient: &'a G) -> Self {
        Self::generate(ambient, &[])
    }

    pub fn ambient(&self) -> &'a G {
        self.ambient
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn contains(&self, x: u32) -> bool {
        self.mask.contains(x as usize)
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.mask.is_subset(&other.mask)
    }

    /// Whether every generator of `other` normalizes `self`; assumes `self ⊆ other`.
    pub fn is_normalized_by(&self, other: &Self) -> bool {
        other.gens.iter().all(|&s| self.gens.iter().all(|&h| self.contains(self.ambient.conj(h, s))))
    }

    pub fn is_normal_in(&self, other: &Self) -> bool {
        self.is_subgroup_of(other) && self.is_normalized_by(other)
    }

    /// The conjugate `s⁻¹ H s`.
    pub fn conjugate(&self, s: u32) -> Self {
        let g = self.ambient;
        let members = self.members.iter().map(|&x| g.conj(x, s)).collect();
        let gens = self.gens.iter().map(|&x| g.conj(x, s)).collect();
        Self::from_members(g, members, gens)
    }

    /// Smallest subgroup of `self` containing `seeds` and normalized by `self`.
    pub fn normal_closure(&self, seeds: &[u32]) -> Self {
        let g = self.ambient;
        let mut gens: Vec<u32> = seeds.to_vec();
        let mut n = Self::generate(g, &gens);
        gens = n.gens.clone();
        loop {
            let mut grew = false;
            let mut i = 0;
            while i < gens.len() {
                for &s in &self.gens {
                    let c = g.conj(gens[i], s);
                    if !n.contains(c) {
                        gens.push(c);
                        n = Self::generate(g, &gens);
                        grew = true;
                    }
                }
                i += 1;
            }
            if !grew {
                return n;
            }
        }
    }

    /// Commutator subgroup, as the normal closure of generator commutators.
    pub fn derived(&self) -> Self {
        let g = self.ambient;
        let mut comms = Vec::new();
        for (i, &a) in self.gens.iter().enumerate() {
            for &b in &self.gens[i + 1..] {
                let c = g.commutator(a, b);
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.normal_closure(&comms)
    }

    /// Orders along `G ⊇ G' ⊇ G'' ⊇ …` until the series stabilizes.
    pub fn derived_series(&self) -> Vec<u64> {
        let mut out = vec![self.order() as u64];
        let mut cur = self.clone();
        loop {
            let d = cur.derived();
            if d.order() == cur.order() {
                return out;
            }
            out.push(d.order() as u64);
            cur = d;
        }
    }

    /// Last term of the derived series.
    pub fn perfect_residuum(&self) -> Self {
        let mut cur = self.clone();
        loop {
            let d = cur.derived();
            if d.order() == cur.order() {
                return cur;
            }
            cur = d;
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.derived().order() == self.order()
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.ambient;
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let g = self.ambient;
        let mut seen = FixedBitSet::with_capacity(g.size());
        let mut classes = Vec::new();
        for &x in &self.members {
            if seen.put(x as usize) {
                continue;
            }
            let mut orbit = vec![x];
            let mut next = 0;
            while next < orbit.len() {
                let y = orbit[next];
                next += 1;
                for &s in &self.gens {
                    let z = g.conj(y, s);
                    if !seen.put(z as usize) {
                        orbit.push(z);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        classes
    }

    pub fn center(&self) -> Self {
        let g = self.ambient;
        let members: Vec<u32> = self
            .members
            .iter()
            .copied()
            .filter(|&x| self.gens.iter().all(|&s| g.conj(x, s) == x))
            .collect();
        let gens = members.iter().copied().filter(|&x| x != 0).collect();
        Self::from_members(g, members, gens)
    }

    pub fn element_order_multiset(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for &x in &self.members {
            *out.entry(self.ambient.element_order(x)).or_insert(0) += 1;
        }
        out
    }

    /// Invariant factors `d₁ | d₂ | …` of `self / self'`, trivial factors omitted.
    pub fn abelianization(&self) -> Vec<u64> {
        let d = self.derived();
        self.abelianization_with(&d)
    }

    fn abelianization_with(&self, d: &Self) -> Vec<u64> {
        let g = self.ambient;
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for &x in &self.members {
            let mut y = x;
            let mut k = 1u64;
            while !d.contains(y) {
                y = g.mul(y, x);
                k += 1;
            }
            *counts.entry(k).or_insert(0) += 1;
        }
        let scale = d.order() as u64;
        let counts: BTreeMap<u64, u64> = counts.into_iter().map(|(k, c)| (k, c / scale)).collect();
        invariant_factors(&counts)
    }

    /// The basic isomorphism-invariant tuple, with `scalar_order` supplied by the caller.
    pub fn fingerprint_with_scalars(&self, scalar_order: u64) -> GroupFingerprint {
        let d = self.derived();
        let classes = self.conjugacy_classes();
        let mut class_sizes = BTreeMap::new();
        for c in &classes {
            *class_sizes.entry(c.len() as u64).or_insert(0) += 1;
        }
        GroupFingerprint {
            order: self.order() as u64,
            element_orders: self.element_order_multiset(),
            class_sizes,
            center_order: classes.iter().filter(|c| c.len() == 1).count() as u64,
            derived_order: d.order() as u64,
            abelianization: self.abelianization_with(&d),
            scalar_order,
            extension: None,
        }
    }

    /// Escalation data: derived series and the joint (element order, class
    /// size) histogram. The ring label is filled in by the caller.
    pub fn fingerprint_extension(&self) -> FingerprintExtension {
        let mut hist: BTreeMap<(u32, u64), u64> = BTreeMap::new();
        for c in self.conjugacy_classes() {
            let o = self.ambient.element_order(c[0]);
            *hist.entry((o, c.len() as u64)).or_insert(0) += 1;
        }
        FingerprintExtension {
            derived_series: self.derived_series(),
            order_class_histogram: hist.into_iter().map(|((o, s), n)| (o, s, n)).collect(),
            ring: None,
        }
    }
}

impl<'a> Subgroup<'a, FiniteMatrixGroup> {
    pub fn scalar_order(&self) -> u64 {
        self.ambient.scalar_indices().iter().filter(|&&x| self.contains(x)).count() as u64
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        self.fingerprint_with_scalars(self.scalar_order())
    }

    /// Materializes the subgroup as a standalone matrix group; the
    /// generators are the subgroup's generating elements.
    pub fn to_group(&self) -> FiniteMatrixGroup {
        let amb = self.ambient;
        let dim = amb.dim();
        let generators = self.gens.iter().map(|&g| amb.element(g).clone()).collect();
        let mut local = std::collections::HashMap::with_capacity(self.order());
        let mut order = vec![0u32];
        local.insert(0u32, 0u32);
        let mut parent = vec![0u32];
        let mut via = vec![super::ROOT];
        let mut right: Vec<Vec<u32>> = vec![Vec::with_capacity(self.order()); self.gens.len()];
        let mut next = 0;
        while next < order.len() {
            let x = order[next];
            for (gi, &s) in self.gens.iter().enumerate() {
                let y = amb.mul(x, s);
                let id = match local.get(&y) {
                    Some(&id) => id,
                    None => {
                        let id = order.len() as u32;
                        local.insert(y, id);
                        order.push(y);
                        parent.push(next as u32);
                        via.push(gi as u8);
                        id
                    }
                };
                right[gi].push(id);
            }
            next += 1;
        }
        let elements = order.iter().map(|&x| amb.element(x).clone()).collect();
        FiniteMatrixGroup::finish(Skeleton { dim, generators, elements, parent, via, right })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::parse_generator_list;
    use crate::group::DEFAULT_CAP;

    fn group(src: &str) -> FiniteMatrixGroup {
        FiniteMatrixGroup::closure(&parse_generator_list(src).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn center_of_pauli_group_by_brute_force() {
        let p2 = group("XI, ZI, IX, IZ");
        let z = p2.center();
        let brute: Vec<u32> = (0..32)
            .filter(|&x| (0..32).all(|y| p2.element(x).mul(p2.element(y)) == p2.element(y).mul(p2.element(x))))
            .collect();
        assert_eq!(z.members(), &brute[..]);
        assert_eq!(z.order(), 2);
    }

    #[test]
    fn derived_of_pauli_is_sign_group() {
        let p2 = group("XI, ZI, IX, IZ");
        let d = p2.whole().derived();
        assert_eq!(d.order(), 2);
        assert_eq!(p2.whole().abelianization(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn single_qubit_clifford_chain() {
        let c1 = group("S, H");
        assert_eq!(c1.order(), 48);
        let d = c1.whole().derived();
        assert_eq!(d.order(), 24);
        assert_eq!(c1.whole().abelianization(), vec![2]);
        let c1p = group("Z, F");
        assert!(d.to_group().same_elements(&c1p));
        assert_eq!(c1p.whole().derived().order(), 8);
        assert_eq!(c1p.whole().abelianization(), vec![3]);
    }

    #[test]
    fn classes_partition_and_divide() {
        let g = group("S, H");
        let classes = g.whole().conjugacy_classes();
        assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), 48);
        assert!(classes.iter().all(|c| 48 % c.len() == 0));
        // brute-force class of each element
        for c in &classes {
            let x = c[0];
            let mut brute: Vec<u32> = (0..48u32).map(|s| g.conj(x, s)).collect();
            brute.sort_unstable();
            brute.dedup();
            assert_eq!(&brute, c);
        }
    }

    #[test]
    fn to_group_round_trip() {
        let g = group("S, H");
        let sub = g.subgroup(&[g.generator_index(0)]);
        let m = sub.to_group();
        assert_eq!(m.order(), sub.order());
        assert!(m.is_subgroup_of(&g));
    }
}
