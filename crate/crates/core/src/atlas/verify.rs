use serde::Serialize;

use super::AtlasEntry;
use crate::classify::{classify, monomial_shape, ClassificationReport, Hierarchy, HierarchyLevel, DEFAULT_MAX_LEVEL, HAAR_MOMENTS};
use crate::error::Result;
use crate::gates::pauli2_generators;
use crate::group::{FiniteMatrixGroup, GroupCache, DEFAULT_CAP};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub cap: usize,
    pub max_level: u32,
    pub cache: Option<GroupCache>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { cap: DEFAULT_CAP, max_level: DEFAULT_MAX_LEVEL, cache: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldDiff {
    pub field: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub name: String,
    pub report: Option<ClassificationReport>,
    pub diffs: Vec<FieldDiff>,
    /// Set when the group could not be built at all.
    pub error: Option<String>,
    /// The error came from a size or environment limit.
    pub resource_limited: bool,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.diffs.is_empty()
    }
}

struct Differ(Vec<FieldDiff>);

impl Differ {
    fn check<T: PartialEq + ToString>(&mut self, field: &str, expected: Option<T>, computed: T) {
        if let Some(e) = expected {
            if e != computed {
                self.0.push(FieldDiff { field: field.into(), expected: e.to_string(), computed: computed.to_string() });
            }
        }
    }

    fn fail(&mut self, field: &str, expected: impl ToString, computed: impl ToString) {
        self.0.push(FieldDiff { field: field.into(), expected: expected.to_string(), computed: computed.to_string() });
    }
}

fn build(entry: &AtlasEntry, opts: &VerifyOptions) -> Result<FiniteMatrixGroup> {
    let gens = entry.generator_matrices()?;
    match &opts.cache {
        Some(c) => c.get_or_build(&gens, opts.cap),
        None => FiniteMatrixGroup::closure(&gens, opts.cap),
    }
}

/// Builds the group of `entry`, classifies it and compares every expected
/// field. Failures are reported as diffs, never raised.
pub fn verify(entry: &AtlasEntry, opts: &VerifyOptions) -> Verification {
    let mut out = Verification { name: entry.name.clone(), report: None, diffs: Vec::new(), error: None, resource_limited: false };
    let g = match build(entry, opts) {
        Ok(g) => g,
        Err(e) => {
            out.resource_limited = e.is_resource();
            out.error = Some(e.to_string());
            return out;
        }
    };
    let w = g.whole();
    let mut hierarchy = Hierarchy::for_dim(g.dim());
    let report = match classify(&entry.name, &w, hierarchy.as_mut(), opts.max_level) {
        Ok(r) => r,
        Err(e) => {
            out.resource_limited = e.is_resource();
            out.error = Some(e.to_string());
            return out;
        }
    };
    let x = &entry.expected;
    let mut d = Differ(Vec::new());
    d.check("order", Some(x.order), report.order);
    d.check("projective_order", Some(x.projective_order), report.projective_order);
    d.check("lift", Some(x.lift.as_str()), report.lift.as_str());
    d.check("shape", x.shape.as_deref(), report.shape.as_deref().unwrap_or("not monomial"));
    if let Some(e) = x.delta_order {
        d.check("delta_order", Some(e.to_string()), report.delta_order.map_or("-".into(), |v| v.to_string()));
    }
    if let Some(dg) = entry.delta_generator_matrices() {
        let same = match (dg, monomial_shape(&w)) {
            (Ok(dg), Some(m)) => g.subgroup_of(&dg).map(|s| s.mask() == m.delta.mask()).unwrap_or(false),
            _ => false,
        };
        if !same {
            d.fail("delta_generators", x.delta_generators.as_deref().unwrap_or_default(), "different diagonal subgroup");
        }
    }
    let ring = report.character_ring.label.clone().unwrap_or_else(|| format!("Z<{}>", report.character_ring.basis.join(", ")));
    d.check("ring", x.ring.clone(), ring);
    d.check("perfect", x.perfect, report.perfect);
    d.check("irreducible", x.irreducible, report.irreducible);
    d.check("entanglement", x.entanglement, report.entanglement);
    if let Some(want) = x.contains_pauli {
        let has = pauli2_generators().iter().all(|p| g.contains(p));
        d.check("contains_pauli", Some(want), has);
    }
    let fp = &report.frame_potentials;
    for t in 1..=3u32 {
        let haar = HAAR_MOMENTS[t as usize - 1];
        if fp.get(t) < haar {
            d.fail(&format!("frame_potential_t{t}"), format!(">= {haar}"), fp.get(t));
        }
    }
    if let Some(k) = x.design_at_least {
        for t in 1..=k.min(3) {
            let haar = HAAR_MOMENTS[t as usize - 1];
            d.check(&format!("frame_potential_t{t}"), Some(haar), fp.get(t));
        }
    }
    if let Some(t) = x.not_design {
        let haar = HAAR_MOMENTS[t as usize - 1];
        if fp.get(t) <= haar {
            d.fail(&format!("frame_potential_t{t}"), format!("> {haar}"), fp.get(t));
        }
    }
    if let Some(r) = x.hierarchy_level {
        d.check("hierarchy_level", Some(HierarchyLevel::Level(r).to_string()), report.hierarchy_level.clone());
    }
    if let Some(bound) = x.hierarchy_level_at_most {
        let ok = report.hierarchy_level.parse::<u32>().is_ok_and(|r| r <= bound);
        if !ok {
            d.fail("hierarchy_level", format!("<= {bound}"), &report.hierarchy_level);
        }
    }
    out.diffs = d.0;
    out.report = Some(report);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::entry;

    #[test]
    fn pauli_group_verifies() {
        let v = verify(entry("P2").unwrap(), &VerifyOptions::default());
        assert!(v.passed(), "{:?}", v.diffs);
    }

    #[test]
    fn corrupted_order_gives_one_diff() {
        let mut e = entry("M(48σ,A4)").unwrap().clone();
        e.expected.order = 1;
        let v = verify(&e, &VerifyOptions::default());
        assert_eq!(v.diffs.len(), 1, "{:?}", v.diffs);
        assert_eq!(v.diffs[0].field, "order");
    }

    #[test]
    fn cap_failure_is_reported_not_raised() {
        let opts = VerifyOptions { cap: 10, ..VerifyOptions::default() };
        let v = verify(entry("P2").unwrap(), &opts);
        assert!(!v.passed());
        assert!(v.error.is_some() && v.resource_limited);
    }
}
