//! The ring generated by a set of algebraic integers, as a Z-module in
//! Hermite normal form over the reduced basis of a common cyclotomic field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};

const MAX_ROUNDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRing {
    /// Conductor of the field the basis coordinates refer to.
    pub conductor: u32,
    /// Z-basis in Hermite normal form; always spans 1.
    pub basis: Vec<Cyclotomic>,
    pub label: Option<String>,
}

impl CharacterRing {
    /// The label, or the basis written out when no reference ring matches.
    pub fn display_name(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => {
                let parts: Vec<String> = self.basis.iter().map(|b| b.to_gap()).collect();
                format!("Z<{}>", parts.join(", "))
            }
        }
    }
}

fn lcm_all<'a>(values: impl IntoIterator<Item = &'a Cyclotomic>) -> u32 {
    values.into_iter().fold(1u32, |l, v| l.lcm(&v.conductor()))
}

fn integer_rows(values: &[Cyclotomic], l: u32) -> Result<Vec<Vec<BigInt>>> {
    values
        .iter()
        .map(|v| {
            v.coordinates(l)?
                .iter()
                .map(|c: &Rational| {
                    if c.is_integer() {
                        Ok(c.numer())
                    } else {
                        Err(Error::Domain(format!("{v} is not an algebraic integer in the reduced basis")))
                    }
                })
                .collect()
        })
        .collect()
}

/// Row Hermite normal form: positive pivots, entries above each pivot
/// reduced into `[0, pivot)`, zero rows dropped.
pub(crate) fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let ncols = rows.first().map_or(0, Vec::len);
    let mut done: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for c in 0..ncols {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).expect("nonempty");
            let pivot = rows[p].clone();
            for &i in &nz {
                if i == p {
                    continue;
                }
                let q = rows[i][c].div_floor(&pivot[c]);
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            let mut r = rows.swap_remove(i);
            if r[c].is_negative() {
                r.iter_mut().for_each(|x| *x = -&*x);
            }
            done.push((c, r));
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    for i in 0..done.len() {
        let (c, pivot) = (done[i].0, done[i].1.clone());
        for row in done.iter_mut().take(i) {
            let q = row.1[c].div_floor(&pivot[c]);
            if !q.is_zero() {
                for (x, y) in row.1.iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
    }
    done.into_iter().map(|(_, r)| r).collect()
}

fn to_values(rows: &[Vec<BigInt>], l: u32) -> Result<Vec<Cyclotomic>> {
    rows.iter()
        .map(|r| {
            let coords: Vec<Rational> = r.iter().map(|x| Rational::from_big(x.clone(), BigInt::one())).collect();
            Cyclotomic::from_coordinates(l, &coords)
        })
        .collect()
}

/// Canonical form of the Z-span of `values` inside `Q(ζ_l)`.
pub fn module_hnf(values: &[Cyclotomic], l: u32) -> Result<Vec<Vec<BigInt>>> {
    Ok(hermite_normal_form(integer_rows(values, l)?))
}

/// Named rings with explicit Z-bases, used for labels.
pub fn reference_rings() -> Vec<(&'static str, Vec<Cyclotomic>)> {
    let one = Cyclotomic::one();
    let i = Cyclotomic::i();
    let z8 = |k| Cyclotomic::root_of_unity(8, k);
    let sqrt = |d| Cyclotomic::sqrt_named(d).expect("supported radicand");
    let two = Rational::from_int(2);
    let half = Rational::new(1, 2);
    vec![
        ("Z", vec![one.clone()]),
        ("Z[i]", vec![one.clone(), i.clone()]),
        ("Z[ζ8]", vec![one.clone(), z8(1), z8(2), z8(3)]),
        ("Z[i,√2]", vec![one.clone(), i.clone(), sqrt(2), &i * &sqrt(2)]),
        ("Z[i,2ζ8]", vec![one.clone(), i.clone(), z8(1).scale(&two), z8(3).scale(&two)]),
        ("Z[ζ3]", vec![one.clone(), Cyclotomic::root_of_unity(3, 1)]),
        ("Z[(1+√-7)/2]", vec![one.clone(), (&one + &sqrt(-7)).scale(&half)]),
        ("Z[i,√3]", vec![one.clone(), i.clone(), sqrt(3), &i * &sqrt(3)]),
    ]
}

/// Whether two finite sets span the same Z-module.
pub fn same_module(a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<bool> {
    let l = lcm_all(a.iter().chain(b));
    Ok(module_hnf(a, l)? == module_hnf(b, l)?)
}

/// The ring `Z[values]`: the Z-span of 1 and `values`, closed under
/// products until the Hermite form stops changing.
pub fn ring_generated_by(values: &[Cyclotomic]) -> Result<CharacterRing> {
    let l = lcm_all(values);
    let mut seed = vec![Cyclotomic::one()];
    seed.extend(values.iter().cloned());
    let mut module = module_hnf(&seed, l)?;
    for _ in 0..MAX_ROUNDS {
        let basis = to_values(&module, l)?;
        let mut all = basis.clone();
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a..] {
                all.push(x * y);
            }
        }
        let next = module_hnf(&all, l)?;
        if next == module {
            let label = reference_rings()
                .into_iter()
                .find(|(_, r)| same_module(&basis, r).unwrap_or(false))
                .map(|(name, _)| name.to_string());
            return Ok(CharacterRing { conductor: l, basis, label });
        }
        module = next;
    }
    Err(Error::Internal("ring closure did not stabilize".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_small_cases() {
        assert_eq!(hermite_normal_form(big(&[&[2, 4], &[3, 5]])), big(&[&[1, 1], &[0, 2]]));
        assert_eq!(hermite_normal_form(big(&[&[0, 0], &[0, -3], &[0, 6]])), big(&[&[0, 3]]));
        assert_eq!(hermite_normal_form(big(&[&[4, 0], &[0, 4], &[2, 2]])), big(&[&[2, 2], &[0, 4]]));
    }

    #[test]
    fn reference_bases_are_rings() {
        for (name, basis) in reference_rings() {
            let r = ring_generated_by(&basis).unwrap();
            assert_eq!(r.label.as_deref(), Some(name), "{name}");
            assert_eq!(r.basis.len(), basis.len(), "{name}");
        }
    }

    #[test]
    fn generated_rings() {
        let i = Cyclotomic::i();
        assert_eq!(ring_generated_by(&[Cyclotomic::from_int(4)]).unwrap().label.as_deref(), Some("Z"));
        // 1 + i generates Z[i]
        assert_eq!(ring_generated_by(&[&Cyclotomic::one() + &i]).unwrap().label.as_deref(), Some("Z[i]"));
        // 4i alone gives the proper suborder Z + 4iZ
        let r = ring_generated_by(&[i.scale(&Rational::from_int(4))]).unwrap();
        assert_eq!(r.label, None);
        assert_eq!(r.basis.len(), 2);
        // √2 and i together
        let s2 = Cyclotomic::sqrt_named(2).unwrap();
        assert_eq!(ring_generated_by(&[s2.clone(), i.clone()]).unwrap().label.as_deref(), Some("Z[i,√2]"));
        // √2 alone misses i
        assert_eq!(ring_generated_by(&[s2]).unwrap().label, None);
    }
}
