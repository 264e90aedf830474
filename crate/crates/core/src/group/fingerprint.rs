use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Isomorphism invariants used to separate groups. Equal fingerprints are
/// necessary, not sufficient, for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: u64,
    pub element_orders: BTreeMap<u32, u64>,
    pub class_sizes: BTreeMap<u64, u64>,
    pub center_order: u64,
    pub derived_order: u64,
    pub abelianization: Vec<u64>,
    pub scalar_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<FingerprintExtension>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FingerprintExtension {
    pub derived_series: Vec<u64>,
    /// `(element order, class size, number of classes)`.
    pub order_class_histogram: Vec<(u32, u64, u64)>,
    pub ring: Option<String>,
}

impl GroupFingerprint {
    pub fn without_extension(&self) -> GroupFingerprint {
        GroupFingerprint { extension: None, ..self.clone() }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ilog(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}

/// Invariant factors of a finite abelian group from its element-order counts
/// (`order → number of elements of exactly that order`).
///
/// For each prime `p`, `log_p #{a : a^{p^j} = 1} = Σ_i min(j, e_i)`, whose
/// successive differences count the cyclic `p`-factors of exponent `≥ j`.
pub(crate) fn invariant_factors(counts: &BTreeMap<u64, u64>) -> Vec<u64> {
    let total: u64 = counts.values().sum();
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_factors(total) {
        let mut exps_ge: Vec<u32> = Vec::new();
        let mut prev = 0;
        let mut j = 1u32;
        loop {
            let pj = p.pow(j);
            let n: u64 = counts.iter().filter(|(k, _)| pj % **k == 0).map(|(_, c)| c).sum();
            let l = ilog(n, p);
            if l == prev {
                break;
            }
            exps_ge.push(l - prev);
            prev = l;
            j += 1;
        }
        // exps_ge[j-1] = number of factors with exponent ≥ j; conjugate partition
        let k = exps_ge.first().copied().unwrap_or(0) as usize;
        let mut exps = vec![0u32; k];
        for (j, &cnt) in exps_ge.iter().enumerate() {
            for e in exps.iter_mut().take(cnt as usize) {
                *e = j as u32 + 1;
            }
        }
        per_prime.push((p, exps));
    }
    let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (p, exps) in &per_prime {
        // exps is non-increasing; the largest goes on the last factor
        for (i, &e) in exps.iter().enumerate() {
            out[len - 1 - i] *= p.pow(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts_of(factors: &[u64]) -> BTreeMap<u64, u64> {
        // element orders of Z_{d1} × … by brute force
        let mut out = BTreeMap::new();
        let total: u64 = factors.iter().product();
        for mut idx in 0..total {
            let mut ord = 1u64;
            for &d in factors {
                let a = idx % d;
                idx /= d;
                let o = d / num_integer::gcd(a, d);
                ord = num_integer::lcm(ord, o);
            }
            *out.entry(ord).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn recovers_known_groups() {
        for f in [vec![], vec![2], vec![2, 2], vec![2, 4], vec![3], vec![6], vec![2, 12], vec![2, 2, 2, 2], vec![4, 8, 24]] {
            let want: Vec<u64> = f.clone();
            assert_eq!(invariant_factors(&counts_of(&f)), want, "{f:?}");
        }
        // Z2 × Z3 = Z6
        assert_eq!(invariant_factors(&counts_of(&[2, 3])), vec![6]);
    }
}
