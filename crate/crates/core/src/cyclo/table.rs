//! Per-conductor lookup tables for the reduced root-of-unity basis.
//!
//! For `N = q_1 ... q_m` with `q_i = p_i^k_i`, the exponent `e` of `ζ_N^e`
//! splits into prime-power components `a_i = e * (N/q_i)^{-1} mod q_i`, so
//! that `ζ_N^e = Π ζ_{q_i}^{a_i}`. The basis is the set of exponents whose
//! every component lies in
//!
//! * `[0, 2^{k-1})` for `q = 2^k`,
//! * `{ j : j div p^{k-1} ∈ [1, p) }` for odd `q = p^k`.
//!
//! A component outside the set is rewritten with `ζ_{2^k}^{j} = -ζ_{2^k}^{j - 2^{k-1}}`
//! or `ζ_q^{j} = -Σ_{c=1}^{p-1} ζ_q^{j + c p^{k-1}}`, and the expansions of
//! the components multiply out.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

#[derive(Debug, Clone, Copy)]
pub(crate) struct PrimePower {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    /// `N / q`.
    pub cofactor: u32,
    /// `(N/q)^{-1} mod q`.
    pub cofactor_inv: u32,
}

#[derive(Debug)]
pub(crate) struct FieldTable {
    pub parts: Vec<PrimePower>,
    /// For every exponent in `[0, n)`, its expansion as signed basis exponents.
    pub expansion: Vec<Vec<(u32, i8)>>,
}

pub(crate) fn factor(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inverse(a: u32, m: u32) -> u32 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i64 % m as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i64) as u32
}

pub(crate) fn component_in_basis(pp: &PrimePower, j: u32) -> bool {
    if pp.p == 2 {
        j < pp.q / 2
    } else {
        j / (pp.q / pp.p) != 0
    }
}

/// Expansion of a single prime-power component exponent.
fn component_expansion(pp: &PrimePower, j: u32) -> Vec<(u32, i8)> {
    if component_in_basis(pp, j) {
        return vec![(j, 1)];
    }
    if pp.p == 2 {
        vec![(j - pp.q / 2, -1)]
    } else {
        let step = pp.q / pp.p;
        (1..pp.p).map(|c| ((j + c * step) % pp.q, -1)).collect()
    }
}

impl FieldTable {
    fn build(n: u32) -> Self {
        assert!(n >= 1 && n % 4 != 2, "conductor {n} is not normalized");
        let parts: Vec<PrimePower> = factor(n)
            .into_iter()
            .map(|(p, k)| {
                let q = p.pow(k);
                let cofactor = n / q;
                PrimePower { p, k, q, cofactor, cofactor_inv: mod_inverse(cofactor % q, q) }
            })
            .collect();
        let mut expansion = Vec::with_capacity(n as usize);
        for e in 0..n {
            let mut acc: Vec<(u32, i8)> = vec![(0, 1)];
            for pp in &parts {
                let a = component(pp, e);
                let comp = component_expansion(pp, a);
                let mut next = Vec::with_capacity(acc.len() * comp.len());
                for &(x, sx) in &acc {
                    for &(c, sc) in &comp {
                        let add = (c as u64 * pp.cofactor as u64 % n as u64) as u32;
                        next.push(((x + add) % n, sx * sc));
                    }
                }
                acc = next;
            }
            expansion.push(acc);
        }
        FieldTable { parts, expansion }
    }

    pub fn is_basis(&self, e: u32) -> bool {
        self.parts.iter().all(|pp| component_in_basis(pp, component(pp, e)))
    }
}

pub(crate) fn component(pp: &PrimePower, e: u32) -> u32 {
    ((e % pp.q) as u64 * pp.cofactor_inv as u64 % pp.q as u64) as u32
}

thread_local! {
    static TABLES: RefCell<HashMap<u32, Rc<FieldTable>>> = RefCell::new(HashMap::new());
}

/// Table for conductor `n` (built once per thread).
pub(crate) fn table(n: u32) -> Rc<FieldTable> {
    TABLES.with(|t| {
        t.borrow_mut()
            .entry(n)
            .or_insert_with(|| Rc::new(FieldTable::build(n)))
            .clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_phi(n: u32) -> usize {
        factor(n).iter().map(|&(p, k)| ((p - 1) * p.pow(k - 1)) as usize).product()
    }

    #[test]
    fn basis_size_is_euler_phi() {
        for n in [1u32, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24, 25, 27, 40, 60, 840] {
            let t = table(n);
            let count = (0..n).filter(|&e| t.is_basis(e)).count();
            assert_eq!(count, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn expansions_land_in_basis() {
        for n in [8u32, 12, 15, 36, 840] {
            let t = table(n);
            for e in 0..n {
                for &(b, _) in &t.expansion[e as usize] {
                    assert!(t.is_basis(b), "n={n} e={e} -> {b}");
                }
            }
        }
    }
}
