//! Catalog of named groups with their expected invariants, plus the
//! parametrized monomial and local series.
//!
//! The catalog is a JSON document compiled into the library; see
//! `data/atlas.json`.

mod export;
mod lattice;
mod verify;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::classify::EntanglementClass;
use crate::error::{Error, Result};
use crate::gates::parse_group_generators;
use crate::linal::GateMatrix;

pub use export::{export_csv, export_gap_script, export_json, CSV_HEADER};
pub use lattice::{
    clifford_lattice, compute_clifford_lattice, exception_check, full_key, CollidingPair, ExceptionReport, LatticeClass,
    LatticeReport,
};
pub use verify::{verify, FieldDiff, Verification, VerifyOptions};

/// Schema version of the catalog file this build understands.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest series parameter accepted by [`instantiate_series`].
pub const MAX_SERIES_PARAM: u32 = 5;

const CATALOG: &str = include_str!("../../data/atlas.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    PrimitiveLocal,
    PrimitiveNonEntangling,
    PrimitiveEntangling,
    MonomialS4,
    MonomialA4,
    MonomialD4,
    MonomialV4,
    NonMonomialLocal,
    NonMonomialEntangling,
    CliffordNoPauli,
    Exotic,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::PrimitiveLocal,
        Family::PrimitiveNonEntangling,
        Family::PrimitiveEntangling,
        Family::MonomialS4,
        Family::MonomialA4,
        Family::MonomialD4,
        Family::MonomialV4,
        Family::NonMonomialLocal,
        Family::NonMonomialEntangling,
        Family::CliffordNoPauli,
        Family::Exotic,
    ];

    /// Kebab-case form used on the command line, e.g. `monomial-s4`.
    pub fn slug(&self) -> &'static str {
        match self {
            Family::PrimitiveLocal => "primitive-local",
            Family::PrimitiveNonEntangling => "primitive-non-entangling",
            Family::PrimitiveEntangling => "primitive-entangling",
            Family::MonomialS4 => "monomial-s4",
            Family::MonomialA4 => "monomial-a4",
            Family::MonomialD4 => "monomial-d4",
            Family::MonomialV4 => "monomial-v4",
            Family::NonMonomialLocal => "non-monomial-local",
            Family::NonMonomialEntangling => "non-monomial-entangling",
            Family::CliffordNoPauli => "clifford-no-pauli",
            Family::Exotic => "exotic",
        }
    }

    /// Human-readable class heading.
    pub fn class_name(&self) -> &'static str {
        match self {
            Family::PrimitiveLocal => "Primitive local",
            Family::PrimitiveNonEntangling => "Primitive non-entangling",
            Family::PrimitiveEntangling => "Primitive entangling",
            Family::MonomialS4 => "Imprimitive monomial shape S4",
            Family::MonomialA4 => "Imprimitive monomial shape A4",
            Family::MonomialD4 => "Imprimitive monomial shape D4",
            Family::MonomialV4 => "Imprimitive monomial shape V4",
            Family::NonMonomialLocal => "Imprimitive non-monomial local",
            Family::NonMonomialEntangling => "Imprimitive non-monomial entangling",
            Family::CliffordNoPauli => "Clifford entangling without P2",
            Family::Exotic => "Exotic",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.slug() == key || format!("{f:?}").to_ascii_lowercase() == key)
            .ok_or_else(|| Error::Lookup(s.to_string()))
    }
}

/// Expected invariants. Absent fields are not checked.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub order: u64,
    pub projective_order: u64,
    pub lift: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_generators: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perfect: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contains_pauli: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
    /// Carried as metadata; not computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entanglement: Option<EntanglementClass>,
    /// The group is a unitary `t`-design for every `t` up to this value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design_at_least: Option<u32>,
    /// The group is not a unitary `t`-design for this `t`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub not_design: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hierarchy_level: Option<u32>,
    /// Upper bound on the hierarchy level when the exact value is not claimed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hierarchy_level_at_most: Option<u32>,
}

impl Expected {
    pub fn order_string(&self) -> String {
        if self.order == self.projective_order {
            self.order.to_string()
        } else {
            format!("{}={}{}", self.order, self.projective_order, self.lift)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalIds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projective_gap: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub name: String,
    pub family: Family,
    /// Comma-separated generator list; items may name groups such as `P2`
    /// or `C1⊗C1'`.
    pub generators: String,
    /// Generator list as originally published, kept when it differs from
    /// `generators` because it does not produce the listed group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub published_generators: Option<String>,
    pub expected: Expected,
    /// Roman-numeral index in the classical list of primitive subgroups.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog_index: Option<u32>,
    #[serde(default)]
    pub external_ids: ExternalIds,
}

impl AtlasEntry {
    pub fn generator_matrices(&self) -> Result<Vec<GateMatrix>> {
        parse_group_generators(&self.generators)
    }

    pub fn delta_generator_matrices(&self) -> Option<Result<Vec<GateMatrix>>> {
        self.expected.delta_generators.as_deref().map(parse_group_generators)
    }

    /// Whether the entry is one of the Clifford subgroups containing the Pauli group.
    pub fn is_pauli_clifford(&self) -> bool {
        self.expected.contains_pauli == Some(true) && self.family != Family::Exotic
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderFormula {
    pub coefficient: u64,
    /// Exponent of 2 contributed by each parameter.
    pub exponents: Vec<u32>,
    pub offset: i32,
}

impl OrderFormula {
    pub fn evaluate(&self, params: &[u32]) -> u64 {
        let e: i64 = self.exponents.iter().zip(params).map(|(&a, &r)| (a * r) as i64).sum::<i64>() + self.offset as i64;
        if e >= 0 {
            self.coefficient << e
        } else {
            self.coefficient >> (-e)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesBase {
    pub params: Vec<u32>,
    pub entry: String,
}

/// A family of groups indexed by one or two hierarchy levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub name: String,
    /// Template with `{r}` or `{r1}`, `{r2}` placeholders.
    pub generators: String,
    pub parameters: Vec<String>,
    pub projective_order: OrderFormula,
    pub lift: String,
    /// Parameter values at which the series reproduces a catalog entry.
    pub base: SeriesBase,
}

impl SeriesSpec {
    pub fn generators_at(&self, params: &[u32]) -> String {
        let mut s = self.generators.clone();
        for (name, v) in self.parameters.iter().zip(params) {
            s = s.replace(&format!("{{{name}}}"), &v.to_string());
        }
        s
    }

    pub fn instance_name(&self, params: &[u32]) -> String {
        let vals: Vec<String> = params.iter().map(|p| p.to_string()).collect();
        format!("{}[{}]", self.name, vals.join(","))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Atlas {
    pub schema_version: u32,
    pub entries: Vec<AtlasEntry>,
    pub series: Vec<SeriesSpec>,
}

impl Atlas {
    /// Parses and validates a catalog document.
    pub fn from_json(text: &str) -> Result<Atlas> {
        let atlas: Atlas = serde_json::from_str(text)?;
        if atlas.schema_version != SCHEMA_VERSION {
            return Err(Error::Params(format!(
                "catalog schema version {} (expected {SCHEMA_VERSION})",
                atlas.schema_version
            )));
        }
        let mut names: Vec<&str> = atlas.entries.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Params(format!("duplicate catalog name '{}'", w[0])));
        }
        Ok(atlas)
    }
}

/// The built-in catalog.
pub fn atlas() -> &'static Atlas {
    static ATLAS: OnceLock<Atlas> = OnceLock::new();
    ATLAS.get_or_init(|| Atlas::from_json(CATALOG).expect("built-in catalog is valid"))
}

pub fn entry(name: &str) -> Result<&'static AtlasEntry> {
    let name = name.trim();
    atlas()
        .entries
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Lookup(name.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    All,
    Family(Family),
    /// The Clifford subgroups that contain the Pauli group.
    PauliClifford,
    /// Entries carrying the primitive heading.
    Primitive,
}

impl Filter {
    pub fn accepts(&self, e: &AtlasEntry) -> bool {
        match self {
            Filter::All => true,
            Filter::Family(f) => e.family == *f,
            Filter::PauliClifford => e.is_pauli_clifford(),
            Filter::Primitive => e.expected.primitive == Some(true),
        }
    }
}

/// Entries accepted by `filter`, in catalog order.
pub fn all_entries(filter: Filter) -> Vec<&'static AtlasEntry> {
    atlas().entries.iter().filter(|e| filter.accepts(e)).collect()
}

pub fn series(name: &str) -> Result<&'static SeriesSpec> {
    atlas().series.iter().find(|s| s.name == name).ok_or_else(|| Error::Lookup(name.to_string()))
}

/// A catalog-style entry for one member of a series.
///
/// The expected level is the largest parameter when it is at least 2; at
/// parameter 1 only the bound "at most 2" is recorded.
pub fn instantiate_series(name: &str, params: &[u32]) -> Result<AtlasEntry> {
    let spec = series(name)?;
    if params.len() != spec.parameters.len() {
        return Err(Error::Params(format!(
            "series {name} takes {} parameter(s), got {}",
            spec.parameters.len(),
            params.len()
        )));
    }
    if let Some(&bad) = params.iter().find(|&&r| r == 0 || r > MAX_SERIES_PARAM) {
        return Err(Error::Params(format!("series parameter {bad} outside 1..={MAX_SERIES_PARAM}")));
    }
    let projective_order = spec.projective_order.evaluate(params);
    let scalars = match spec.lift.as_str() {
        "σ" => 4,
        "τ" => 2,
        _ => 1,
    };
    let top = *params.iter().max().expect("nonempty");
    let family = match spec.name.as_str() {
        "S4" => Family::MonomialS4,
        "A4" => Family::MonomialA4,
        n if n.starts_with("D4") => Family::MonomialD4,
        "V4" | "QxQ" => Family::MonomialV4,
        "QxC1" | "QxC1'" => Family::NonMonomialLocal,
        _ => Family::NonMonomialEntangling,
    };
    Ok(AtlasEntry {
        name: spec.instance_name(params),
        family,
        generators: spec.generators_at(params),
        published_generators: None,
        expected: Expected {
            order: projective_order * scalars,
            projective_order,
            lift: spec.lift.clone(),
            hierarchy_level: (top >= 2).then_some(top),
            hierarchy_level_at_most: (top < 2).then_some(2),
            ..Expected::default()
        },
        catalog_index: None,
        external_ids: ExternalIds::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads_with_unique_names() {
        let a = atlas();
        assert_eq!(a.schema_version, SCHEMA_VERSION);
        assert_eq!(all_entries(Filter::PauliClifford).len(), 56);
        assert_eq!(all_entries(Filter::Family(Family::MonomialS4)).len(), 6);
    }

    #[test]
    fn lookup() {
        let c2 = entry("C2").unwrap();
        assert_eq!((c2.expected.order, c2.expected.projective_order, c2.expected.lift.as_str()), (46080, 11520, "σ"));
        let ex = entry("Ex(25920τ)").unwrap();
        assert_eq!(ex.expected.perfect, Some(true));
        assert_eq!(ex.expected.ring.as_deref(), Some("Z[ζ3]"));
        assert!(matches!(entry("nope"), Err(Error::Lookup(_))));
    }

    #[test]
    fn every_generator_parses_to_det_one() {
        for e in &atlas().entries {
            for m in e.generator_matrices().unwrap() {
                assert!(m.det().is_one(), "{}", e.name);
            }
            if let Some(d) = e.delta_generator_matrices() {
                assert!(d.unwrap().iter().all(|m| m.det().is_one()), "{}", e.name);
            }
        }
    }

    #[test]
    fn series_formulas() {
        assert_eq!(instantiate_series("S4", &[2]).unwrap().expected.projective_order, 768);
        let v = instantiate_series("V4", &[1, 1]).unwrap();
        assert_eq!(v.expected.projective_order, 32);
        assert_eq!(v.expected.hierarchy_level_at_most, Some(2));
        let a = instantiate_series("A4", &[3]).unwrap();
        assert_eq!((a.expected.projective_order, a.expected.hierarchy_level), (3072, Some(3)));
        assert!(matches!(instantiate_series("S4", &[6]), Err(Error::Params(_))));
        assert!(matches!(instantiate_series("S4", &[2, 2]), Err(Error::Params(_))));
        for s in &atlas().series {
            let inst = instantiate_series(&s.name, &s.base.params).unwrap();
            let base = entry(&s.base.entry).unwrap();
            assert_eq!(inst.expected.projective_order, base.expected.projective_order, "{}", s.name);
        }
    }

    #[test]
    fn family_slugs_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.slug().parse::<Family>().unwrap(), f);
        }
        assert_eq!("MonomialS4".parse::<Family>().unwrap(), Family::MonomialS4);
    }
}
