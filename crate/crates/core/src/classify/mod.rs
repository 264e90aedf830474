//! Classification invariants of finite matrix groups.

mod hierarchy;
mod ring;
mod shape;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::gates::constant;
use crate::group::{FiniteMatrixGroup, GroupFingerprint, Subgroup};

pub use hierarchy::{group_hierarchy_level, hierarchy_level, is_exotic_up_to, Hierarchy, HierarchyLevel, DEFAULT_MAX_LEVEL};
pub use ring::{reference_rings, ring_generated_by, same_module, CharacterRing};
pub use shape::{classify_image, monomial_shape, MonomialStructure, Perm4, Shape, ShapeTag};

/// Haar moments `E|tr U|^{2t}` on `U(4)` for `t = 1, 2, 3`.
pub const HAAR_MOMENTS: [u64; 3] = [1, 2, 6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntanglementClass {
    Local,
    NonEntangling,
    Entangling,
}

impl fmt::Display for EntanglementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntanglementClass::Local => "local",
            EntanglementClass::NonEntangling => "non-entangling",
            EntanglementClass::Entangling => "entangling",
        })
    }
}

/// Counts of each distinct trace among the members of `g`.
fn trace_histogram(g: &Subgroup<'_, FiniteMatrixGroup>) -> Vec<(Cyclotomic, u64)> {
    let table = g.ambient().traces();
    let mut counts: HashMap<u32, u64> = HashMap::new();
    for &x in g.members() {
        *counts.entry(table.of[x as usize]).or_insert(0) += 1;
    }
    let mut out: Vec<(Cyclotomic, u64)> = counts.into_iter().map(|(k, c)| (table.values[k as usize].clone(), c)).collect();
    out.sort_by(|a, b| a.0.to_string().cmp(&b.0.to_string()));
    out
}

/// `(1/|G|) Σ |tr g|^{2t}`, exact. The result is always a nonnegative integer.
pub fn frame_potential(g: &Subgroup<'_, FiniteMatrixGroup>, t: u32) -> Result<Rational> {
    let total = Cyclotomic::sum_of_products(
        trace_histogram(g)
            .iter()
            .map(|(v, c)| (v.abs_squared().pow(t), Cyclotomic::from_int(*c as i64)))
            .collect::<Vec<_>>()
            .iter()
            .map(|(a, b)| (a, b)),
    );
    let sum = total.to_rational().ok_or_else(|| Error::Internal("frame potential is not rational".into()))?;
    let fp = &sum / &Rational::from_int(g.order() as i64);
    if !fp.is_integer() {
        return Err(Error::Internal(format!("frame potential {fp} is not an integer")));
    }
    Ok(fp)
}

/// Character norm test `Σ |tr g|² = |G|`.
pub fn is_irreducible(g: &Subgroup<'_, FiniteMatrixGroup>) -> bool {
    frame_potential(g, 1).map(|v| v.is_one()).unwrap_or(false)
}

/// Local and non-entangling gates each form a group, so generators decide.
pub fn entanglement_class(g: &Subgroup<'_, FiniteMatrixGroup>) -> EntanglementClass {
    let amb = g.ambient();
    if amb.dim() != 4 {
        return EntanglementClass::Entangling;
    }
    let swap_inv = constant("SWAP").expect("builtin").adjoint();
    let mut local = true;
    for &x in g.generators() {
        let m = amb.element(x);
        if m.tensor_factorizable() {
            continue;
        }
        local = false;
        if !m.mul(&swap_inv).tensor_factorizable() {
            return EntanglementClass::Entangling;
        }
    }
    if local {
        EntanglementClass::Local
    } else {
        EntanglementClass::NonEntangling
    }
}

/// The ring generated by the traces of `g`.
pub fn character_ring(g: &Subgroup<'_, FiniteMatrixGroup>) -> Result<CharacterRing> {
    let values: Vec<Cyclotomic> = trace_histogram(g).into_iter().map(|(v, _)| v).collect();
    ring_generated_by(&values)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramePotentials {
    pub t1: u64,
    pub t2: u64,
    pub t3: u64,
}

impl FramePotentials {
    pub fn get(&self, t: u32) -> u64 {
        match t {
            1 => self.t1,
            2 => self.t2,
            _ => self.t3,
        }
    }

    /// Largest `t ≤ 3` for which the group is a unitary `t`-design.
    pub fn design_strength(&self) -> u32 {
        (1..=3).take_while(|&t| self.get(t) == HAAR_MOMENTS[t as usize - 1]).last().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSummary {
    pub label: Option<String>,
    pub basis: Vec<String>,
}

impl From<&CharacterRing> for RingSummary {
    fn from(r: &CharacterRing) -> Self {
        RingSummary { label: r.label.clone(), basis: r.basis.iter().map(|b| b.to_gap()).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub name: String,
    pub order: u64,
    pub projective_order: u64,
    pub lift: String,
    pub irreducible: bool,
    pub entanglement: EntanglementClass,
    pub shape: Option<String>,
    pub delta_order: Option<u64>,
    pub character_ring: RingSummary,
    pub hierarchy_level: String,
    pub frame_potentials: FramePotentials,
    pub perfect: bool,
    pub fingerprint: GroupFingerprint,
}

impl ClassificationReport {
    /// `"1536=384σ"` style order string.
    pub fn order_string(&self) -> String {
        if self.order == self.projective_order {
            self.order.to_string()
        } else {
            format!("{}={}{}", self.order, self.projective_order, self.lift)
        }
    }
}

/// Runs every invariant on `g`. `hierarchy` is reused across calls so its
/// memo table persists.
pub fn classify(
    name: &str,
    g: &Subgroup<'_, FiniteMatrixGroup>,
    hierarchy: Option<&mut Hierarchy>,
    max_level: u32,
) -> Result<ClassificationReport> {
    let amb = g.ambient();
    let scalars = g.scalar_order();
    let lift = crate::group::LiftSymbol::from_scalar_order(scalars);
    let mono = monomial_shape(g);
    let ring = character_ring(g)?;
    let gens: Vec<_> = g.generators().iter().map(|&x| amb.element(x).clone()).collect();
    let level = match hierarchy {
        Some(h) if h.dim() == amb.dim() => h.group_level(&gens, max_level),
        _ => match Hierarchy::for_dim(amb.dim()) {
            Some(mut h) => h.group_level(&gens, max_level),
            None => HierarchyLevel::NotWithin(0),
        },
    };
    let fp = |t| -> Result<u64> {
        let v = frame_potential(g, t)?;
        v.to_i64().map(|x| x as u64).ok_or_else(|| Error::Internal("frame potential overflow".into()))
    };
    let frame_potentials = FramePotentials { t1: fp(1)?, t2: fp(2)?, t3: fp(3)? };
    let mut fingerprint = g.fingerprint();
    let mut ext = g.fingerprint_extension();
    ext.ring = Some(ring.display_name());
    fingerprint.extension = Some(ext);
    Ok(ClassificationReport {
        name: name.to_string(),
        order: g.order() as u64,
        projective_order: g.order() as u64 / scalars,
        lift: lift.as_str().to_string(),
        irreducible: frame_potentials.t1 == 1,
        entanglement: entanglement_class(g),
        shape: mono.as_ref().map(|m| m.shape.tag.to_string()),
        delta_order: mono.as_ref().map(|m| m.delta.order() as u64),
        character_ring: RingSummary::from(&ring),
        hierarchy_level: level.to_string(),
        frame_potentials,
        perfect: g.is_perfect(),
        fingerprint,
    })
}
