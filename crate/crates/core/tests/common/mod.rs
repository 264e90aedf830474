//! Strategies and property bodies shared by the property suites and the
//! acceptance run.
#![allow(dead_code)]

use cliffsub::atlas::{all_entries, Family, Filter};
use cliffsub::cyclo::{Cyclotomic, Rational};
use cliffsub::gates::{constant, parse_expr};
use cliffsub::group::{all_subgroups, FiniteMatrixGroup};
use cliffsub::linal::GateMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

pub const CONDUCTORS: [u32; 12] = [1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24];

fn element_of(n: u32) -> impl Strategy<Value = Cyclotomic> {
    let term = (0..n as i64, -9i64..=9, 1i64..=6);
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        terms.into_iter().fold(Cyclotomic::zero(), |acc, (k, p, q)| {
            &acc + &Cyclotomic::root_of_unity(n, k).scale(&Rational::new(p, q))
        })
    })
}

/// Three elements of one randomly chosen field `Q(ζ_n)`, plus a unit mod `n`.
pub fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic, i64)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| {
        let unit = (0..n as i64).prop_map(move |k| (k..).find(|j| num_integer::gcd(*j, n as i64) == 1).unwrap());
        (element_of(n), element_of(n), element_of(n), unit)
    })
}

pub fn field_axioms(a: &Cyclotomic, b: &Cyclotomic, c: &Cyclotomic) -> Result<(), TestCaseError> {
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(&(a + &Cyclotomic::zero()), a);
    prop_assert_eq!(&(a * &Cyclotomic::one()), a);
    prop_assert!((a - a).is_zero());
    prop_assert!((a + &(-a.clone())).is_zero());
    if a.is_zero() {
        prop_assert!(a.inverse().is_err());
    } else {
        prop_assert!((a * &a.inverse().unwrap()).is_one());
    }
    Ok(())
}

pub const POOL: [&str; 14] = ["XI", "IZ", "ZI", "IX", "SI", "IS", "HI", "CZ", "SWAP", "CNOT", "FI", "BELL", "Ph8 I", "DCNOT"];
pub const SMALL_CAP: usize = 4000;

pub fn gates() -> impl Strategy<Value = Vec<GateMatrix>> {
    prop::sample::subsequence(POOL.to_vec(), 1..=3).prop_map(|names| names.iter().map(|n| parse_expr(n).unwrap()).collect())
}

/// Closing the group again, from its generators plus any of its elements,
/// gives the same group. Groups above `SMALL_CAP` are skipped.
pub fn closure_idempotent(gens: &[GateMatrix], pick: prop::sample::Index) -> Result<(), TestCaseError> {
    let Ok(g) = FiniteMatrixGroup::closure(gens, SMALL_CAP) else { return Ok(()) };
    let all: Vec<GateMatrix> = g.elements().iter().cloned().collect();
    // closure accepts at most 254 generators
    let mut sample = gens.to_vec();
    sample.extend(all.iter().step_by(all.len() / 200 + 1).cloned());
    prop_assert!(FiniteMatrixGroup::closure(&sample, SMALL_CAP).unwrap().same_elements(&g));
    let mut more = gens.to_vec();
    more.push(all[pick.index(all.len())].clone());
    prop_assert!(FiniteMatrixGroup::closure(&more, SMALL_CAP).unwrap().same_elements(&g));
    for m in g.elements() {
        prop_assert!(g.contains(&m.adjoint()));
    }
    Ok(())
}

pub fn lagrange(gens: &[GateMatrix]) -> Result<(), TestCaseError> {
    let Ok(g) = FiniteMatrixGroup::closure(gens, SMALL_CAP) else { return Ok(()) };
    for &o in g.element_orders() {
        prop_assert_eq!(g.order() % o as usize, 0);
    }
    if g.order() <= 400 {
        for h in all_subgroups(&g) {
            prop_assert_eq!(g.order() % h.order(), 0);
        }
    }
    Ok(())
}

/// Checks `P(perm)·D = m` for every element of every monomial catalog
/// group; returns the number of elements checked.
pub fn monomial_round_trip_all() -> Result<usize, String> {
    let families = [Family::MonomialS4, Family::MonomialA4, Family::MonomialD4, Family::MonomialV4];
    let mut checked = 0;
    for f in families {
        for e in all_entries(Filter::Family(f)) {
            let g = FiniteMatrixGroup::closure(&e.generator_matrices().map_err(|x| x.to_string())?, 10_000)
                .map_err(|x| x.to_string())?;
            for m in g.elements() {
                let (perm, d) = m.monomial_parts().ok_or_else(|| format!("{}: element not monomial", e.name))?;
                if &GateMatrix::permutation(&perm).unwrap().mul(&d) != m {
                    return Err(format!("{}: round trip differs", e.name));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn q(a: i64, b: i64) -> Cyclotomic {
    Cyclotomic::from_rational(Rational::new(a, b))
}

/// Rational point on the unit 3-sphere by inverse stereographic projection.
fn unit_quaternion((u, v, w, scale): (i64, i64, i64, i64)) -> [Cyclotomic; 4] {
    let s = u * u + v * v + w * w;
    let den = s + scale * scale;
    [q(2 * u * scale, den), q(2 * v * scale, den), q(2 * w * scale, den), q(s - scale * scale, den)]
}

/// Matrix of `x ↦ p·x·r̄` on quaternions `x = a + bi + cj + dk`; always in SO(4).
fn so4_from_quaternions(p: &[Cyclotomic; 4], r: &[Cyclotomic; 4]) -> GateMatrix {
    let [a, b, c, d] = p;
    let left = vec![
        vec![a.clone(), -b.clone(), -c.clone(), -d.clone()],
        vec![b.clone(), a.clone(), -d.clone(), c.clone()],
        vec![c.clone(), d.clone(), a.clone(), -b.clone()],
        vec![d.clone(), -c.clone(), b.clone(), a.clone()],
    ];
    let [a, b, c, d] = r;
    let right_conj = vec![
        vec![a.clone(), b.clone(), c.clone(), d.clone()],
        vec![-b.clone(), a.clone(), -d.clone(), c.clone()],
        vec![-c.clone(), d.clone(), a.clone(), -b.clone()],
        vec![-d.clone(), -c.clone(), b.clone(), a.clone()],
    ];
    GateMatrix::from_rows(left).unwrap().mul(&GateMatrix::from_rows(right_conj).unwrap())
}

pub type QuaternionSeed = (i64, i64, i64, i64);

pub fn so4_seeds() -> impl Strategy<Value = (QuaternionSeed, QuaternionSeed)> {
    let seed = (-6i64..=6, -6i64..=6, -6i64..=6, 1i64..=5);
    (seed.clone(), seed)
}

/// `BELL·O·BELL†` is a local gate for every `O` in SO(4).
pub fn magic_locality(a: QuaternionSeed, b: QuaternionSeed) -> Result<(), TestCaseError> {
    let o = so4_from_quaternions(&unit_quaternion(a), &unit_quaternion(b));
    prop_assert_eq!(o.mul(&o.adjoint()), GateMatrix::identity(4));
    prop_assert!(o.det().is_one());
    let bell = constant("BELL").unwrap();
    prop_assert!(bell.mul(&o).mul(&bell.adjoint()).tensor_factorizable(), "not local for {:?} {:?}", a, b);
    Ok(())
}

pub fn magic_reflection_is_entangling() -> bool {
    let reflection = GateMatrix::diagonal(vec![q(1, 1), q(1, 1), q(1, 1), q(-1, 1)]).unwrap();
    let bell = constant("BELL").unwrap();
    !bell.mul(&reflection).mul(&bell.adjoint()).tensor_factorizable()
}

/// Haar-random unitary: Gram-Schmidt on a Ginibre matrix, column by column.
fn haar_unitary(rng: &mut StdRng) -> [[Complex64; 4]; 4] {
    let mut cols = [[Complex64::new(0.0, 0.0); 4]; 4];
    for j in 0..4 {
        let mut v: [Complex64; 4] =
            std::array::from_fn(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)));
        for prev in cols.iter().take(j) {
            let dot: Complex64 = (0..4).map(|i| prev[i].conj() * v[i]).sum();
            for i in 0..4 {
                v[i] -= dot * prev[i];
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
        cols[j] = v;
    }
    cols
}

/// Sample means of `|tr U|^{2t}`, `t = 1, 2, 3`, over Haar-random U(4).
pub fn haar_moment_estimates(samples: usize, seed: u64) -> [f64; 3] {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut sums = [0.0f64; 3];
    for _ in 0..samples {
        let u = haar_unitary(&mut rng);
        let a = (0..4).map(|i| u[i][i]).sum::<Complex64>().norm_sqr();
        sums[0] += a;
        sums[1] += a * a;
        sums[2] += a * a * a;
    }
    sums.map(|s| s / samples as f64)
}
