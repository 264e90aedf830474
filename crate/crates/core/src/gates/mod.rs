//! Determinant-one gate constants and parametric constructors.
//!
//! Every matrix here is in SU(2) or SU(4). Single-qubit Paulis carry the
//! `-i` phase (`X = -iσ_x`), and the two-qubit permutation gates carry
//! `ζ_8^{-1}`.

mod expr;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linal::GateMatrix;

pub use expr::{parse_expr, parse_generator_list, parse_group_generators};

#[derive(Debug, Clone)]
pub struct GateDef {
    pub name: &'static str,
    pub matrix: GateMatrix,
    pub source: &'static str,
}

fn c(k: i64) -> Cyclotomic {
    Cyclotomic::from_int(k)
}

fn zeta(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn sqrt(d: i64) -> Cyclotomic {
    Cyclotomic::sqrt_named(d).expect("named square root")
}

fn inv_sqrt(d: i64) -> Cyclotomic {
    sqrt(d).inverse().expect("nonzero")
}

fn m(rows: Vec<Vec<Cyclotomic>>) -> GateMatrix {
    GateMatrix::from_rows(rows).expect("well-formed constant")
}

/// `Ph(2π/m) = diag(ζ_{2m}^{-1}, ζ_{2m})`.
pub fn ph(m_: u32) -> GateMatrix {
    assert!(m_ >= 1);
    GateMatrix::diagonal(vec![zeta(2 * m_, -1), zeta(2 * m_, 1)]).expect("2x2")
}

/// Generators of the binary dihedral group `BD_m = ⟨Ph(2π/m), X⟩`.
pub fn bd(m_: u32) -> Vec<GateMatrix> {
    vec![ph(m_), constant("X").expect("X")]
}

/// Generators of the generalized quaternion group `Q^(r) = BD_{2^r}`.
pub fn q(r: u32) -> Vec<GateMatrix> {
    assert!((1..=16).contains(&r));
    bd(1 << r)
}

fn build_table() -> BTreeMap<&'static str, GateDef> {
    let i = Cyclotomic::i();
    let ni = -&i;
    let z8inv = zeta(8, -1);
    let s2inv = inv_sqrt(2);

    let mut defs: Vec<GateDef> = Vec::new();
    let mut add = |name: &'static str, matrix: GateMatrix, source: &'static str| {
        defs.push(GateDef { name, matrix, source });
    };

    add("I", GateMatrix::identity(2), "single-qubit identity");
    add("X", m(vec![vec![c(0), ni.clone()], vec![ni.clone(), c(0)]]), "-i X");
    add("Y", m(vec![vec![c(0), c(-1)], vec![c(1), c(0)]]), "-i Y");
    add("Z", m(vec![vec![ni.clone(), c(0)], vec![c(0), i.clone()]]), "-i Z");
    add("S", ph(4), "ζ8* S = Ph(2π/4)");
    add(
        "H",
        m(vec![vec![ni.clone(), ni.clone()], vec![ni.clone(), i.clone()]]).scale(&s2inv),
        "-i H",
    );
    add(
        "F",
        m(vec![vec![c(1), ni.clone()], vec![c(1), i.clone()]]).scale(&(&z8inv * &s2inv)),
        "ζ8* F (facet gate)",
    );

    let bell = m(vec![
        vec![c(1), i.clone(), c(0), c(0)],
        vec![c(0), c(0), i.clone(), c(1)],
        vec![c(0), c(0), i.clone(), c(-1)],
        vec![c(1), ni.clone(), c(0), c(0)],
    ])
    .scale(&(&zeta(8, 3) * &s2inv));
    add("BELL", bell, "Bell gate, ζ8^3/√2 prefactor");

    let perm = |p: [usize; 4]| GateMatrix::permutation(&p).expect("4x4");
    add("SWAP", perm([0, 2, 1, 3]).scale(&z8inv), "ζ8* SWAP");
    add("iII", GateMatrix::scalar(4, i.clone()), "global phase i");
    add("CNOT12", perm([0, 1, 3, 2]).scale(&z8inv), "ζ8* CNOT, control 1");
    add("CNOT", perm([0, 1, 3, 2]).scale(&z8inv), "alias of CNOT12");
    add("CNOT21", perm([0, 3, 2, 1]).scale(&z8inv), "ζ8* CNOT, control 2");
    // columns: |00>->|00>, |01>->|10>, |10>->|11>, |11>->|01>
    add("DCNOT", perm([0, 2, 3, 1]), "CNOT12 · CNOT21 up to phase");
    add(
        "CZ",
        GateMatrix::diagonal(vec![c(1), c(1), c(1), c(-1)]).expect("4x4").scale(&z8inv),
        "ζ8* CZ",
    );
    add(
        "K",
        m(vec![
            vec![c(1), c(0), ni.clone(), c(0)],
            vec![c(0), ni.clone(), c(0), c(-1)],
            vec![ni.clone(), c(0), c(1), c(0)],
            vec![c(0), c(1), c(0), i.clone()],
        ])
        .scale(&s2inv),
        "F⊗I · exp(iπ/4 Y⊗Z), closed form",
    );
    add(
        "A",
        m(vec![
            vec![c(0), c(0), c(-1), c(0)],
            vec![c(0), ni.clone(), c(0), c(0)],
            vec![c(1), c(0), c(0), c(0)],
            vec![c(0), c(0), c(0), i.clone()],
        ]),
        "monomial generator of the order-120 perfect Clifford group",
    );

    // golden ratio φ and φ^{-1} = φ - 1
    let phi = (&c(1) + &sqrt(5)).scale(&half());
    let phi_inv = &phi - &c(1);
    let i_phi_inv = &i * &phi_inv;
    add(
        "PHI",
        m(vec![vec![&phi + &i_phi_inv, c(1)], vec![c(-1), &phi - &i_phi_inv]]).scale_rational(&half()),
        "binary icosahedral generator Φ",
    );

    let z3 = zeta(3, 1);
    let z3c = zeta(3, -1);
    add(
        "U1",
        m(vec![
            vec![sqrt(-3), c(0), c(0), c(0)],
            vec![c(0), c(1), c(1), c(1)],
            vec![c(0), c(1), z3.clone(), z3c.clone()],
            vec![c(0), c(1), z3c.clone(), z3.clone()],
        ])
        .scale(&inv_sqrt(-3)),
        "U1, 1/√-3 prefactor",
    );
    add(
        "U2",
        m(vec![
            vec![c(0), c(0), c(1), c(0)],
            vec![c(0), c(-1), c(0), c(0)],
            vec![c(1), c(0), c(0), c(0)],
            vec![c(0), c(0), c(0), c(1)],
        ]),
        "U2",
    );
    add(
        "V1",
        m(vec![
            vec![c(1), c(0), c(0), c(0)],
            vec![c(0), c(0), c(0), zeta(7, -1)],
            vec![c(0), zeta(7, 5), c(0), c(0)],
            vec![c(0), c(0), zeta(7, 3), c(0)],
        ]),
        "V1",
    );
    let s = (&c(1) + &sqrt(-7)).scale(&half());
    let sb = (&c(1) - &sqrt(-7)).scale(&half());
    add(
        "V2",
        m(vec![
            vec![&sb * &sb, c(1), c(1), c(1)],
            vec![c(1), s.clone(), sb.clone(), sb.clone()],
            vec![c(1), sb.clone(), s.clone(), sb.clone()],
            vec![c(1), sb.clone(), sb.clone(), s.clone()],
        ])
        .scale(&inv_sqrt(-7)),
        "V2, 1/√-7 prefactor, s = (1+√-7)/2",
    );
    let r2 = sqrt(2);
    add(
        "W1",
        m(vec![
            vec![c(1), c(0), c(0), r2.clone()],
            vec![c(0), c(-1), r2.clone(), c(0)],
            vec![c(0), r2.clone(), c(1), c(0)],
            vec![r2.clone(), c(0), c(0), c(-1)],
        ])
        .scale(&inv_sqrt(3)),
        "W1, 1/√3 prefactor",
    );
    let r3h = sqrt(3).scale(&half());
    let h = Cyclotomic::from_rational(half());
    add(
        "W2",
        m(vec![
            vec![r3h.clone(), h.clone(), c(0), c(0)],
            vec![h.clone(), -&r3h, c(0), c(0)],
            vec![c(0), c(0), c(0), c(1)],
            vec![c(0), c(0), c(1), c(0)],
        ]),
        "W2",
    );
    add("W3", GateMatrix::diagonal(vec![c(1), c(1), z3, z3c]).expect("4x4"), "W3");

    defs.into_iter().map(|d| (d.name, d)).collect()
}

fn table() -> &'static BTreeMap<&'static str, GateDef> {
    static TABLE: OnceLock<BTreeMap<&'static str, GateDef>> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

/// All named gate definitions, sorted by name.
pub fn all_defs() -> impl Iterator<Item = &'static GateDef> {
    table().values()
}

/// Gate constant by name. `Ph<m>` (e.g. `Ph8`) gives `Ph(2π/m)`.
pub fn constant(name: &str) -> Result<GateMatrix> {
    if let Some(d) = table().get(name) {
        return Ok(d.matrix.clone());
    }
    if let Some(digits) = name.strip_prefix("Ph") {
        if let Ok(k) = digits.parse::<u32>() {
            if (1..=1 << 16).contains(&k) {
                return Ok(ph(k));
            }
        }
    }
    Err(Error::Lookup(name.to_string()))
}

/// Names the expression tokenizer recognizes, longest first.
pub(crate) fn names_longest_first() -> Vec<&'static str> {
    let mut v: Vec<&'static str> = table().keys().copied().collect();
    v.sort_by_key(|s| std::cmp::Reverse(s.len()));
    v
}

/// The 32-element two-qubit Pauli group generators `XI, ZI, IX, IZ`.
pub fn pauli2_generators() -> Vec<GateMatrix> {
    ["XI", "ZI", "IX", "IZ"].iter().map(|s| parse_expr(s).expect("pauli")).collect()
}

/// The 8-element single-qubit Pauli group generators.
pub fn pauli1_generators() -> Vec<GateMatrix> {
    ["X", "Z"].iter().map(|s| constant(s).expect("pauli")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_constant_has_unit_determinant() {
        for d in all_defs() {
            assert!(d.matrix.det().is_one(), "det({}) = {:?}", d.name, d.matrix.det());
            let u = d.matrix.mul(&d.matrix.adjoint());
            assert_eq!(u, GateMatrix::identity(d.matrix.dim()), "{} is not unitary", d.name);
        }
        for k in 1..=9 {
            assert!(ph(k).det().is_one());
        }
    }

    #[test]
    fn phase_gate_examples() {
        assert_eq!(ph(2), constant("Z").unwrap());
        assert_eq!(ph(4), constant("S").unwrap());
        assert_eq!(constant("Ph8").unwrap(), ph(8));
        assert!(constant("Nope").is_err());
    }

    #[test]
    fn k_trace_is_sqrt2() {
        // (1 - i + 1 + i)/√2
        assert_eq!(constant("K").unwrap().trace(), Cyclotomic::sqrt_named(2).unwrap());
    }

    #[test]
    fn k_matches_product_form() {
        // exp(iπ/4 Y⊗Z) = (I + i Y⊗Z)/√2 because (Y⊗Z)^2 = I; with the
        // unit-determinant Paulis Y⊗Z = (-iY)(-iZ) = -Y⊗Z.
        let yz = parse_expr("Y⊗Z").unwrap().neg();
        let i = Cyclotomic::i();
        let mut sum = GateMatrix::identity(4);
        let iyz = yz.scale(&i);
        let entries: Vec<Cyclotomic> =
            sum.entries().iter().zip(iyz.entries()).map(|(a, b)| a + b).collect();
        sum = GateMatrix::new(4, entries).unwrap();
        let exp = sum.scale(&Cyclotomic::sqrt_named(2).unwrap().inverse().unwrap());
        let fi = parse_expr("FI").unwrap();
        assert_eq!(fi.mul(&exp), constant("K").unwrap());
    }

    #[test]
    fn cz_and_dcnot() {
        let cz = constant("CZ").unwrap();
        let z8 = Cyclotomic::root_of_unity(8, -1);
        for (k, s) in [1, 1, 1, -1].iter().enumerate() {
            assert_eq!(cz.get(k, k), &z8.scale(&Rational::from_int(*s)));
        }
        let prod = constant("CNOT12").unwrap().mul(&constant("CNOT21").unwrap());
        let dcnot = constant("DCNOT").unwrap();
        assert_eq!(prod, dcnot.scale(&Cyclotomic::i().conj()));
    }

    #[test]
    fn phi_trace_is_golden_ratio() {
        let phi = (&Cyclotomic::one() + &Cyclotomic::sqrt_named(5).unwrap()).scale(&half());
        assert_eq!(constant("PHI").unwrap().trace(), phi);
        assert_eq!(constant("PHI").unwrap().det().scale(&Rational::from_int(4)), Cyclotomic::from_int(4));
    }

    #[test]
    fn single_qubit_relations() {
        let s = constant("S").unwrap();
        let z = constant("Z").unwrap();
        assert_eq!(s.mul(&s), z);
        let f = constant("F").unwrap();
        let order = f.order(24).expect("F has finite order");
        assert_eq!(24 % order, 0);
        assert_eq!(order, 6);
        assert_eq!(constant("H").unwrap().order(24), Some(4));
    }
}
