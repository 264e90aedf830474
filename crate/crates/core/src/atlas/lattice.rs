//! Subgroup lattice of the Clifford group above the Pauli group, matched
//! against the catalog.
//!
//! `P2` alone is not normal in `C2`, so the lattice is computed above
//! `N = ⟨P2, iII⟩` through the quotient `C2/N`. Catalog groups are matched
//! through their `⟨G, iII⟩` versions. The number of subgroups containing
//! `P2` itself is counted separately from index-two data.

use std::collections::{BTreeMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{all_entries, AtlasEntry, Filter};
use crate::classify::character_ring;
use crate::error::{Error, Result};
use crate::gates::{constant, pauli2_generators};
use crate::group::{FiniteMatrixGroup, GroupFingerprint, IndexGroup, Quotient, Subgroup, DEFAULT_CAP};

/// Base fingerprint extended by the derived series, the joint order/class
/// histogram and the character ring.
pub fn full_key(h: &Subgroup<'_, FiniteMatrixGroup>) -> Result<GroupFingerprint> {
    let mut fp = h.fingerprint();
    let mut ext = h.fingerprint_extension();
    ext.ring = Some(character_ring(h)?.display_name());
    fp.extension = Some(ext);
    Ok(fp)
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeClass {
    pub order: u64,
    pub projective_order: u64,
    /// Number of lattice subgroups in the class.
    pub members: usize,
    pub ring: String,
    pub names: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    /// Subgroups between `N` and `C2`, both included.
    pub total: usize,
    pub strictly_between: usize,
    /// Subgroups strictly between `P2` and `C2`.
    pub strictly_between_pauli: u64,
    pub base_classes: usize,
    pub classes: Vec<LatticeClass>,
    /// Catalog entries whose `⟨G, iII⟩` is not one of the lattice subgroups.
    pub entries_not_in_lattice: Vec<String>,
    /// Base-fingerprint collisions that the extended key separates.
    pub separated_by_extension: Vec<Vec<String>>,
}

impl LatticeReport {
    pub fn unmatched_classes(&self) -> Vec<&LatticeClass> {
        self.classes.iter().filter(|c| c.names.is_empty()).collect()
    }

    pub fn ambiguous_classes(&self) -> Vec<&LatticeClass> {
        self.classes.iter().filter(|c| c.names.len() > 1).collect()
    }

    /// Every class carries exactly one catalog name.
    pub fn is_bijective(&self) -> bool {
        self.entries_not_in_lattice.is_empty() && self.classes.iter().all(|c| c.names.len() == 1)
    }
}

fn iii() -> crate::linal::GateMatrix {
    constant("iII").expect("builtin")
}

/// Number of subgroups `H` with `P2 ≤ H ≤ K̃` and `H·N = K̃`, `H ≠ K̃`.
///
/// Such an `H` has index two and misses `iII`; these correspond to the
/// hyperplanes of `K̃/Φ` avoiding the image of `iII`, where `Φ` is generated
/// by the derived subgroup, the squares and `P2`.
fn index_two_pauli_complements(k: &Subgroup<'_, FiniteMatrixGroup>, p2: &Subgroup<'_, FiniteMatrixGroup>, i_idx: u32) -> u64 {
    let amb = k.ambient();
    let mut seeds: Vec<u32> = k.derived().generators().to_vec();
    seeds.extend(k.generators().iter().map(|&g| amb.mul(g, g)));
    seeds.extend(p2.generators().iter().copied());
    let phi = Subgroup::generate(amb, &seeds);
    if phi.contains(i_idx) {
        return 0;
    }
    let d = (k.order() / phi.order()).trailing_zeros();
    1 << (d - 1)
}

/// Enumerates the lattice above `⟨P2, iII⟩` in `c2` and matches it against
/// the Pauli-containing catalog entries.
pub fn clifford_lattice(c2: &FiniteMatrixGroup) -> Result<LatticeReport> {
    let mut n_gens = pauli2_generators();
    let p2 = c2.subgroup_of(&n_gens)?;
    n_gens.push(iii());
    let n = c2.subgroup_of(&n_gens)?;
    let i_idx = c2.index_of(&iii()).ok_or_else(|| Error::Domain("iII is not in the group".into()))?;
    let q = Quotient::new(&c2.whole(), &n)?;
    let lattice = q.lattice();

    let literal: u64 = lattice.iter().map(|k| 1 + index_two_pauli_complements(k, &p2, i_idx)).sum();

    let masks: HashSet<&FixedBitSet> = lattice.iter().map(|h| h.mask()).collect();
    let mut keyed: BTreeMap<GroupFingerprint, (usize, String, Vec<String>)> = BTreeMap::new();
    for h in &lattice {
        let key = full_key(h)?;
        let ring = key.extension.as_ref().and_then(|e| e.ring.clone()).unwrap_or_default();
        keyed.entry(key).or_insert_with(|| (0, ring, Vec::new())).0 += 1;
    }
    let base_classes = keyed.keys().map(|k| k.without_extension()).collect::<HashSet<_>>().len();

    let mut entries_not_in_lattice = Vec::new();
    for e in all_entries(Filter::PauliClifford) {
        let mut gens = e.generator_matrices()?;
        gens.push(iii());
        let h = c2.subgroup_of(&gens)?;
        if !masks.contains(h.mask()) {
            entries_not_in_lattice.push(e.name.clone());
            continue;
        }
        if let Some(slot) = keyed.get_mut(&full_key(&h)?) {
            slot.2.push(e.name.clone());
        }
    }

    let mut by_base: BTreeMap<GroupFingerprint, Vec<String>> = BTreeMap::new();
    for (k, (_, _, names)) in &keyed {
        by_base.entry(k.without_extension()).or_default().extend(names.iter().cloned());
    }
    let separated_by_extension = by_base.into_values().filter(|v| v.len() > 1).collect();

    let classes = keyed
        .into_iter()
        .map(|(k, (members, ring, names))| LatticeClass {
            order: k.order,
            projective_order: k.order / k.scalar_order,
            members,
            ring,
            names,
        })
        .collect();
    Ok(LatticeReport {
        total: lattice.len(),
        strictly_between: lattice.len() - 2,
        strictly_between_pauli: literal - 2,
        base_classes,
        classes,
        entries_not_in_lattice,
        separated_by_extension,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CollidingPair {
    pub a: String,
    pub b: String,
    pub ring_a: String,
    pub ring_b: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExceptionReport {
    pub checked: Vec<String>,
    /// Pairs of entries with equal base fingerprints.
    pub pairs: Vec<CollidingPair>,
}

/// Looks for base-fingerprint collisions among `entries`.
pub fn exception_check(entries: &[&AtlasEntry], cap: usize) -> Result<ExceptionReport> {
    let mut keyed: Vec<(String, GroupFingerprint, String)> = Vec::new();
    for e in entries {
        let g = FiniteMatrixGroup::closure(&e.generator_matrices()?, cap)?;
        let w = g.whole();
        keyed.push((e.name.clone(), w.fingerprint(), character_ring(&w)?.display_name()));
    }
    let mut pairs = Vec::new();
    for i in 0..keyed.len() {
        for j in i + 1..keyed.len() {
            if keyed[i].1 == keyed[j].1 {
                pairs.push(CollidingPair {
                    a: keyed[i].0.clone(),
                    b: keyed[j].0.clone(),
                    ring_a: keyed[i].2.clone(),
                    ring_b: keyed[j].2.clone(),
                });
            }
        }
    }
    Ok(ExceptionReport { checked: keyed.into_iter().map(|k| k.0).collect(), pairs })
}

/// Convenience: closes `C2` and runs [`clifford_lattice`].
pub fn compute_clifford_lattice() -> Result<LatticeReport> {
    let c2 = FiniteMatrixGroup::closure(&super::entry("C2")?.generator_matrices()?, DEFAULT_CAP)?;
    clifford_lattice(&c2)
}
