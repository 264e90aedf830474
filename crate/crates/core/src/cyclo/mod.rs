//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`Cyclotomic`] is a rational combination of `ζ_N^k` over the reduced
//! (Zumbroich) basis of `Q(ζ_N)`, always stored at its minimal conductor.
//! Two values are equal iff their representations are identical, so derived
//! `Eq` and `Hash` are semantic.

mod rational;
pub(crate) mod table;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;

pub use rational::Rational;

use crate::error::{Error, Result};
use table::{component, table};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    /// Minimal conductor; never `≡ 2 (mod 4)`.
    n: u32,
    /// Basis exponents ascending, nonzero coefficients.
    terms: Vec<(u32, Rational)>,
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { n: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::ONE)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_int(k))
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            Cyclotomic { n: 1, terms: vec![(0, r)] }
        }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let e = k.rem_euclid(n as i64) as u32;
        Self::normalize(n, vec![(e, Rational::ONE)])
    }

    /// `i = ζ_4`.
    pub fn i() -> Self {
        Self::root_of_unity(4, 1)
    }

    /// Principal square roots of the radicands used by the gate tables:
    /// `√2 = ζ_8 + ζ_8^{-1}`, `√3 = ζ_12 + ζ_12^{-1}`, `√-3 = ζ_3 - ζ_3^2`,
    /// `√5` and `√-7` as quadratic Gauss sums.
    pub fn sqrt_named(d: i64) -> Result<Self> {
        let z = Self::root_of_unity;
        Ok(match d {
            2 => &z(8, 1) + &z(8, -1),
            3 => &z(12, 1) + &z(12, -1),
            -3 => &z(3, 1) - &z(3, 2),
            5 => {
                // 1 + 2(ζ_5 + ζ_5^4) = 1 + 4cos(2π/5) > 0
                let s = &z(5, 1) + &z(5, 4);
                &Self::one() + &(&s * &Self::from_int(2))
            }
            -7 => {
                // Σ χ(k) ζ_7^k with χ the Legendre symbol mod 7; imaginary part positive
                let mut acc = Self::zero();
                for k in 1..7i64 {
                    let chi = if [1, 2, 4].contains(&k) { 1 } else { -1 };
                    acc = &acc + &(&z(7, k) * &Self::from_int(chi));
                }
                acc
            }
            _ => return Err(Error::Domain(format!("no named square root for {d}"))),
        })
    }

    /// The value in GAP syntax, e.g. `1/2*E(8)+E(8)^3`; also used as a
    /// readable form.
    pub fn to_gap(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in &self.terms {
            let (num, den) = (c.numer(), c.denom());
            let neg = c.signum() < 0;
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mag = num.magnitude().to_string();
            let root = match (self.n, e) {
                (_, 0) => None,
                (n, 1) => Some(format!("E({n})")),
                (n, k) => Some(format!("E({n})^{k}")),
            };
            let coeff_one = mag == "1" && den == num_bigint::BigInt::from(1);
            match (root, coeff_one) {
                (Some(r), true) => out.push_str(&r),
                (r, _) => {
                    out.push_str(&mag);
                    if den != num_bigint::BigInt::from(1) {
                        out.push_str(&format!("/{den}"));
                    }
                    if let Some(r) = r {
                        out.push('*');
                        out.push_str(&r);
                    }
                }
            }
        }
        out
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// `(exponent, coefficient)` pairs over the reduced basis of `Q(ζ_conductor)`.
    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    /// The value as a rational, when it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        match (self.n, self.terms.as_slice()) {
            (_, []) => Some(Rational::ZERO),
            (1, [(0, r)]) => Some(r.clone()),
            _ => None,
        }
    }

    /// Canonicalizes an arbitrary combination `Σ c ζ_n^e` (exponents need not
    /// be basis exponents, repeats allowed).
    pub(crate) fn normalize(n: u32, raw: Vec<(u32, Rational)>) -> Self {
        let (n, raw) = if n % 4 == 2 {
            // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m
            let m = n / 2;
            let half = (m + 1) / 2;
            let mapped = raw
                .into_iter()
                .map(|(e, c)| {
                    let c = if e % 2 == 1 { -c } else { c };
                    ((e as u64 * half as u64 % m as u64) as u32, c)
                })
                .collect();
            (m, mapped)
        } else {
            (n, raw)
        };
        let t = table(n);
        let mut expanded: Vec<(u32, Rational)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            if c.is_zero() {
                continue;
            }
            let exp = &t.expansion[e as usize];
            if exp.len() == 1 && exp[0].1 == 1 {
                expanded.push((exp[0].0, c));
            } else {
                for &(b, s) in exp {
                    expanded.push((b, if s > 0 { c.clone() } else { -&c }));
                }
            }
        }
        let terms = merge(expanded);
        let mut out = Cyclotomic { n, terms };
        out.reduce_conductor();
        out
    }

    /// Rewrites `self` at the smallest conductor that supports it.
    fn reduce_conductor(&mut self) {
        if self.terms.is_empty() {
            self.n = 1;
            return;
        }
        'outer: loop {
            if self.n == 1 {
                return;
            }
            let t = table(self.n);
            for pp in &t.parts {
                if let Some(next) = self.try_descend(pp) {
                    *self = next;
                    continue 'outer;
                }
            }
            return;
        }
    }

    fn try_descend(&self, pp: &table::PrimePower) -> Option<Cyclotomic> {
        let n = self.n;
        if pp.p == 2 && pp.k == 2 {
            // a_4 must vanish, i.e. 4 | e; lands in the odd conductor n/4
            if self.terms.iter().all(|(e, _)| e % 4 == 0) {
                let terms = self.terms.iter().map(|(e, c)| (e / 4, c.clone())).collect();
                return Some(Cyclotomic { n: n / 4, terms });
            }
            return None;
        }
        if pp.k >= 2 {
            let p = pp.p;
            if self.terms.iter().all(|(e, _)| e % p == 0) {
                let terms = self.terms.iter().map(|(e, c)| (e / p, c.clone())).collect();
                return Some(Cyclotomic { n: n / p, terms });
            }
            return None;
        }
        // p exactly divides n, p odd: every remaining-component block must
        // carry all p-1 exponents with one common coefficient
        let p = pp.p;
        let mut groups: Vec<(u32, u32, &Rational)> = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let a = component(pp, *e);
            let rest = (*e + n - (a as u64 * pp.cofactor as u64 % n as u64) as u32) % n;
            groups.push((rest, a, c));
        }
        groups.sort_by_key(|g| (g.0, g.1));
        let mut out = Vec::new();
        for block in groups.chunk_by(|x, y| x.0 == y.0) {
            if block.len() != (p - 1) as usize {
                return None;
            }
            let c = block[0].2;
            if block.iter().any(|g| g.2 != c) {
                return None;
            }
            out.push((block[0].0 / p, -c));
        }
        out.sort_by_key(|x| x.0);
        Some(Cyclotomic { n: n / p, terms: out })
    }

    fn lifted(&self, l: u32) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        let f = l / self.n;
        self.terms.iter().map(move |(e, c)| (e * f, c))
    }

    /// Coordinates in the reduced basis of `Q(ζ_l)`, ordered like
    /// [`basis_exponents`]. `l` must be a multiple of the conductor.
    pub fn coordinates(&self, l: u32) -> Result<Vec<Rational>> {
        if l == 0 || l % 4 == 2 || l % self.n != 0 {
            return Err(Error::Domain(format!("conductor {} does not embed in Q(ζ_{l}) as a reduced field", self.n)));
        }
        let t = table(l);
        let basis = basis_exponents(l);
        let mut out = vec![Rational::ZERO; basis.len()];
        for (e, c) in self.lifted(l) {
            for &(b, s) in &t.expansion[e as usize] {
                let k = basis.binary_search(&b).expect("expansion lands in basis");
                out[k] = if s > 0 { &out[k] + c } else { &out[k] - c };
            }
        }
        Ok(out)
    }

    /// Inverse of [`Cyclotomic::coordinates`].
    pub fn from_coordinates(l: u32, coords: &[Rational]) -> Result<Self> {
        if l == 0 || l % 4 == 2 {
            return Err(Error::Domain(format!("Q(ζ_{l}) is not a reduced conductor")));
        }
        let basis = basis_exponents(l);
        if coords.len() != basis.len() {
            return Err(Error::Dimension(format!("{} coordinates for a field of degree {}", coords.len(), basis.len())));
        }
        Ok(Self::normalize(l, basis.into_iter().zip(coords.iter().cloned()).collect()))
    }

    /// `Σ a_i b_i` normalized once at the end.
    pub fn sum_of_products<'a, I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'a Cyclotomic, &'a Cyclotomic)> + Clone,
    {
        let mut l = 1;
        for (a, b) in pairs.clone() {
            if !a.is_zero() && !b.is_zero() {
                l = lcm(l, lcm(a.n, b.n));
            }
        }
        let mut raw = Vec::new();
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            for (ea, ca) in a.lifted(l) {
                for (eb, cb) in b.lifted(l) {
                    raw.push(((ea + eb) % l, ca * cb));
                }
            }
        }
        Self::normalize(l, raw)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic { n: self.n, terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect() }
    }

    /// Image under `ζ ↦ ζ^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n;
        debug_assert_eq!((k.rem_euclid(n as i64) as u32).gcd(&n), 1);
        let k = k.rem_euclid(n as i64) as u64;
        let raw = self.terms.iter().map(|(e, c)| ((*e as u64 * k % n as u64) as u32, c.clone())).collect();
        Self::normalize(n, raw)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        if self.n <= 2 {
            return self.clone();
        }
        self.galois(-1)
    }

    /// Multiplicative inverse via the product of the nontrivial Galois
    /// conjugates divided by the norm.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip()?));
        }
        let n = self.n as i64;
        let mut others = Self::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (self * &others)
            .to_rational()
            .ok_or_else(|| Error::Internal("norm is not rational".into()))?;
        Ok(others.scale(&norm.recip()?))
    }

    /// Floating-point rendering for display and debugging only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.terms {
            let theta = 2.0 * std::f64::consts::PI * *e as f64 / self.n as f64;
            let v = c.to_f64();
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }

    /// `|self|^2` as a rational, when `self·conj(self)` is rational.
    pub fn abs_squared(&self) -> Self {
        self * &self.conj()
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

/// Exponents `e` such that `ζ_l^e` belongs to the reduced basis, ascending.
/// `l` must not be `≡ 2 (mod 4)`.
pub fn basis_exponents(l: u32) -> Vec<u32> {
    let t = table(l);
    (0..l).filter(|&e| t.is_basis(e)).collect()
}

fn merge(mut v: Vec<(u32, Rational)>) -> Vec<(u32, Rational)> {
    v.sort_unstable_by_key(|x| x.0);
    let mut out: Vec<(u32, Rational)> = Vec::with_capacity(v.len());
    for (e, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == e => last.1 = &last.1 + &c,
            _ => out.push((e, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let l = lcm(self.n, rhs.n);
        let raw = self.lifted(l).chain(rhs.lifted(l)).map(|(e, c)| (e, c.clone())).collect();
        Cyclotomic::normalize(l, raw)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { n: self.n, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if let Some(r) = self.to_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.to_rational() {
            return self.scale(&r);
        }
        Cyclotomic::sum_of_products([(self, rhs)])
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl fmt::Display for Cyclotomic {
    /// Canonical text form `c<N>:<k>=<num>/<den>,...`, exponents ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}:", self.n)?;
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}={c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_complex();
        write!(f, "{self} (≈{re:.4}{im:+.4}i)")
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    /// Parses the canonical text form. Input that is not already canonical
    /// (unsorted, non-basis exponents, reducible conductor) is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg} in '{s}'") };
        let body = s.strip_prefix('c').ok_or_else(|| err("missing 'c' prefix"))?;
        let (n, rest) = body.split_once(':').ok_or_else(|| err("missing ':'"))?;
        let n: u32 = n.parse().map_err(|_| err("bad conductor"))?;
        if n == 0 || n % 4 == 2 {
            return Err(err("invalid conductor"));
        }
        let mut terms = Vec::new();
        if !rest.is_empty() {
            for item in rest.split(',') {
                let (e, c) = item.split_once('=').ok_or_else(|| err("missing '='"))?;
                let e: u32 = e.parse().map_err(|_| err("bad exponent"))?;
                if e >= n {
                    return Err(err("exponent out of range"));
                }
                let c: Rational = c.parse()?;
                terms.push((e, c));
            }
        }
        let value = Cyclotomic::normalize(n, terms.clone());
        if value.n != n || value.terms != terms {
            return Err(err("not canonical"));
        }
        Ok(value)
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn gap_rendering() {
        assert_eq!(Cyclotomic::zero().to_gap(), "0");
        assert_eq!(Cyclotomic::from_int(-3).to_gap(), "-3");
        assert_eq!(Cyclotomic::i().to_gap(), "E(4)");
        assert_eq!(Cyclotomic::root_of_unity(8, 1).scale(&Rational::new(-1, 2)).to_gap(), "-1/2*E(8)");
        assert_eq!((&Cyclotomic::one() + &Cyclotomic::i()).to_gap(), "1+E(4)");
    }

    #[test]
    fn coordinates_round_trip() {
        let x = &Cyclotomic::sqrt_named(2).unwrap() + &Cyclotomic::root_of_unity(3, 1);
        for l in [24u32, 48, 120] {
            let c = x.coordinates(l).unwrap();
            assert_eq!(c.len(), super::basis_exponents(l).len());
            assert_eq!(Cyclotomic::from_coordinates(l, &c).unwrap(), x);
        }
        assert!(x.coordinates(8).is_err());
        assert_eq!(Cyclotomic::i().coordinates(4).unwrap(), vec![Rational::ZERO, Rational::ONE]);
    }

    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn roots_of_unity_examples() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(8, 2), z(4, 1));
        assert_eq!(z(8, 2).conductor(), 4);
        assert!(z(7, 7).is_one());
        assert_eq!(z(2, 1), Cyclotomic::from_int(-1));
        assert_eq!(z(6, 1), -&z(3, 2));
        assert_eq!(z(10, 3).conductor(), 5);
    }

    #[test]
    fn arithmetic_examples() {
        assert!((&z(8, 1) * &z(8, 7)).is_one());
        let s = &z(8, 1) + &z(8, -1);
        assert_eq!(&s * &s, Cyclotomic::from_int(2));
        assert_eq!(z(7, 3).conj(), z(7, 4));
    }

    #[test]
    fn cyclotomic_relations_collapse() {
        // 1 + ζ_3 + ζ_3^2 = 0 and Σ_{k<5} ζ_5^k = 0
        let s3 = &(&z(3, 0) + &z(3, 1)) + &z(3, 2);
        assert!(s3.is_zero());
        let mut s5 = Cyclotomic::zero();
        for k in 0..5 {
            s5 = &s5 + &z(5, k);
        }
        assert!(s5.is_zero());
        // ζ_15 · ζ_15^{-1} descends all the way to Q
        assert!((&z(15, 4) * &z(15, -4)).is_one());
    }

    #[test]
    fn named_square_roots() {
        for d in [2, 3, -3, 5, -7] {
            let r = Cyclotomic::sqrt_named(d).unwrap();
            assert_eq!(&r * &r, Cyclotomic::from_int(d), "d = {d}");
            let (re, im) = r.to_complex();
            if d > 0 {
                assert!(re > 0.0 && im.abs() < 1e-12);
            } else {
                assert!(im > 0.0 && re.abs() < 1e-12);
            }
        }
        assert!(Cyclotomic::sqrt_named(6).is_err());
    }

    #[test]
    fn gauss_sum_square_by_brute_force() {
        // Expand (Σ χ(a) ζ^a)(Σ χ(b) ζ^b) over all 36 exponent pairs, collect
        // coefficients per ζ_7^k and fold with 1 + ζ + ... + ζ^6 = 0.
        let chi = |k: i64| if [1, 2, 4].contains(&k) { 1i64 } else { -1 };
        let mut coeff = [0i64; 7];
        for a in 1..7 {
            for b in 1..7 {
                coeff[((a + b) % 7) as usize] += chi(a) * chi(b);
            }
        }
        // Σ_k c_k ζ^k with c_1 = ... = c_6 = c means c_0 - c
        assert!(coeff[1..].iter().all(|&c| c == coeff[1]));
        let expected = coeff[0] - coeff[1];
        assert_eq!(expected, -7);
        let r = Cyclotomic::sqrt_named(-7).unwrap();
        assert_eq!(&r * &r, Cyclotomic::from_int(expected));
    }

    #[test]
    fn golden_ratio_identity() {
        let sqrt5 = Cyclotomic::sqrt_named(5).unwrap();
        let phi = (&Cyclotomic::one() + &sqrt5).scale(&Rational::new(1, 2));
        assert_eq!(&phi * &phi, &phi + &Cyclotomic::one());
    }

    #[test]
    fn inverse_and_zero() {
        assert!(Cyclotomic::zero().inverse().is_err());
        let a = &(&z(40, 3) + &z(5, 2)) + &Cyclotomic::from_int(3);
        assert!((&a * &a.inverse().unwrap()).is_one());
    }

    #[test]
    fn serialization_round_trip_and_rejects() {
        let a = (&z(8, 1) + &z(3, 1)).scale(&Rational::new(-1, 2));
        let s = a.to_string();
        assert_eq!(s.parse::<Cyclotomic>().unwrap(), a);
        assert_eq!(Cyclotomic::zero().to_string(), "c1:");
        assert_eq!(Cyclotomic::one().to_string(), "c1:0=1/1");
        assert_eq!(z(4, 1).to_string(), "c4:1=1/1");
        // ζ_4^2 is not a basis exponent; ζ_8^2 lives at conductor 4
        assert!("c4:2=1/1".parse::<Cyclotomic>().is_err());
        assert!("c8:2=1/1".parse::<Cyclotomic>().is_err());
        assert!("c6:1=1/1".parse::<Cyclotomic>().is_err());
    }
}
