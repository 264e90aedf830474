//! Bounded Clifford-hierarchy membership.
//!
//! Level 1 holds the Pauli operators up to global phase. Level `r` holds the gates that conjugate every Pauli element into level
//! `r - 1`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gates::{pauli1_generators, pauli2_generators};
use crate::group::FiniteMatrixGroup;
use crate::linal::GateMatrix;

pub const DEFAULT_MAX_LEVEL: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HierarchyLevel {
    Level(u32),
    NotWithin(u32),
}

impl HierarchyLevel {
    pub fn level(&self) -> Option<u32> {
        match self {
            HierarchyLevel::Level(r) => Some(*r),
            HierarchyLevel::NotWithin(_) => None,
        }
    }
}

impl fmt::Display for HierarchyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HierarchyLevel::Level(r) => write!(f, "{r}"),
            HierarchyLevel::NotWithin(r) => write!(f, "NotWithin({r})"),
        }
    }
}

/// Memoizing membership oracle for one qubit count.
pub struct Hierarchy {
    dim: usize,
    paulis: Vec<GateMatrix>,
    memo: HashMap<(GateMatrix, u32), bool>,
}

impl Hierarchy {
    fn with_generators(gens: Vec<GateMatrix>) -> Self {
        let dim = gens[0].dim();
        let paulis = FiniteMatrixGroup::closure(&gens, 64).expect("Pauli group").elements().iter().cloned().collect();
        Hierarchy { dim, paulis, memo: HashMap::new() }
    }

    pub fn two_qubit() -> Self {
        Self::with_generators(pauli2_generators())
    }

    pub fn one_qubit() -> Self {
        Self::with_generators(pauli1_generators())
    }

    pub fn for_dim(dim: usize) -> Option<Self> {
        match dim {
            2 => Some(Self::one_qubit()),
            4 => Some(Self::two_qubit()),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn in_level(&mut self, m: &GateMatrix, r: u32) -> bool {
        assert!(r >= 1);
        if r == 1 {
            return self.paulis.iter().any(|p| m.projectively_equal(p));
        }
        if let Some(&v) = self.memo.get(&(m.clone(), r)) {
            return v;
        }
        let md = m.adjoint();
        let mut ok = true;
        for k in 0..self.paulis.len() {
            let c = m.mul(&self.paulis[k]).mul(&md);
            if !self.in_level(&c, r - 1) {
                ok = false;
                break;
            }
        }
        self.memo.insert((m.clone(), r), ok);
        ok
    }

    /// Smallest `r ≤ max_level` with `m` in level `r`.
    pub fn level(&mut self, m: &GateMatrix, max_level: u32) -> HierarchyLevel {
        (1..=max_level)
            .find(|&r| self.in_level(m, r))
            .map_or(HierarchyLevel::NotWithin(max_level), HierarchyLevel::Level)
    }

    /// Maximum level over `gens`; `NotWithin` as soon as one generator is.
    pub fn group_level(&mut self, gens: &[GateMatrix], max_level: u32) -> HierarchyLevel {
        let mut best = 1;
        for g in gens {
            match self.level(g, max_level) {
                HierarchyLevel::Level(r) => best = best.max(r),
                nw => return nw,
            }
        }
        HierarchyLevel::Level(best)
    }
}

/// Level of a one- or two-qubit gate; `None` for other dimensions.
pub fn hierarchy_level(m: &GateMatrix, max_level: u32) -> Option<HierarchyLevel> {
    Some(Hierarchy::for_dim(m.dim())?.level(m, max_level))
}

/// Level of the group generated by `gens`.
pub fn group_hierarchy_level(gens: &[GateMatrix], max_level: u32) -> Option<HierarchyLevel> {
    Some(Hierarchy::for_dim(gens.first()?.dim())?.group_level(gens, max_level))
}

/// Whether some generator lies outside every level up to `max_level`.
pub fn is_exotic_up_to(gens: &[GateMatrix], max_level: u32) -> Option<bool> {
    group_hierarchy_level(gens, max_level).map(|l| matches!(l, HierarchyLevel::NotWithin(_)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{constant, parse_expr, ph};

    #[test]
    fn two_qubit_examples() {
        let mut h = Hierarchy::two_qubit();
        assert_eq!(h.level(&parse_expr("ZI").unwrap(), 4), HierarchyLevel::Level(1));
        assert_eq!(h.level(&parse_expr("SI").unwrap(), 4), HierarchyLevel::Level(2));
        assert_eq!(h.level(&parse_expr("BELL").unwrap(), 4), HierarchyLevel::Level(2));
        assert_eq!(h.level(&parse_expr("Ph8 I").unwrap(), 4), HierarchyLevel::Level(3));
        assert_eq!(h.level(&parse_expr("Ph16 I").unwrap(), 4), HierarchyLevel::Level(4));
        assert_eq!(h.level(&parse_expr("PHI I").unwrap(), 4), HierarchyLevel::NotWithin(4));
    }

    #[test]
    fn one_qubit_examples() {
        let mut h = Hierarchy::one_qubit();
        assert_eq!(h.level(&constant("X").unwrap(), 3), HierarchyLevel::Level(1));
        assert_eq!(h.level(&constant("H").unwrap(), 3), HierarchyLevel::Level(2));
        assert_eq!(h.level(&ph(8), 3), HierarchyLevel::Level(3));
        assert_eq!(h.level(&ph(16), 3), HierarchyLevel::NotWithin(3));
    }

    #[test]
    fn levels_are_nested() {
        let mut h = Hierarchy::two_qubit();
        for src in ["SI", "HI", "IS", "CZ", "CNOT12", "SWAP", "BELL", "Ph8 I", "CNOT·Ph8 Ph8"] {
            let m = parse_expr(src).unwrap();
            for r in 1..4 {
                if h.in_level(&m, r) {
                    assert!(h.in_level(&m, r + 1), "{src} at {r}");
                }
            }
        }
    }
}
