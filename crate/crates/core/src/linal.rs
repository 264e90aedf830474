//! Exact dense 2×2 and 4×4 matrices over [`Cyclotomic`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// A square matrix of dimension 2 or 4, row-major.
///
/// Entries are canonical, so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GateMatrix {
    dim: usize,
    entries: Vec<Cyclotomic>,
}

/// A permutation of `0..dim`, `perm[j] = i` meaning column `j` has its
/// nonzero entry in row `i`.
pub type Permutation = Vec<usize>;

impl GateMatrix {
    pub fn new(dim: usize, entries: Vec<Cyclotomic>) -> Result<Self> {
        if !(dim == 2 || dim == 4) {
            return Err(Error::Dimension(format!("unsupported dimension {dim}")));
        }
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!("{} entries for dimension {dim}", entries.len())));
        }
        Ok(GateMatrix { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Cyclotomic::one())
    }

    pub fn scalar(dim: usize, lambda: Cyclotomic) -> Self {
        let mut entries = vec![Cyclotomic::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = lambda.clone();
        }
        GateMatrix { dim, entries }
    }

    pub fn diagonal(diag: Vec<Cyclotomic>) -> Result<Self> {
        let dim = diag.len();
        let mut entries = vec![Cyclotomic::zero(); dim * dim];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * dim + i] = d;
        }
        Self::new(dim, entries)
    }

    /// Permutation matrix with a one at `(perm[j], j)`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let dim = perm.len();
        let mut entries = vec![Cyclotomic::zero(); dim * dim];
        for (j, &i) in perm.iter().enumerate() {
            entries[i * dim + j] = Cyclotomic::one();
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Cyclotomic>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn try_mul(&self, rhs: &GateMatrix) -> Result<GateMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.dim, self.dim, rhs.dim, rhs.dim)));
        }
        Ok(self.mul_unchecked(rhs))
    }

    /// Product; panics on dimension mismatch.
    pub fn mul(&self, rhs: &GateMatrix) -> GateMatrix {
        self.try_mul(rhs).expect("dimension mismatch in matrix product")
    }

    fn mul_unchecked(&self, rhs: &GateMatrix) -> GateMatrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let pairs = (0..n).map(|k| (&self.entries[i * n + k], &rhs.entries[k * n + j]));
                entries.push(Cyclotomic::sum_of_products(pairs));
            }
        }
        GateMatrix { dim: n, entries }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> GateMatrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.entries[j * n + i].conj());
            }
        }
        GateMatrix { dim: n, entries }
    }

    /// Kronecker product of two 2×2 matrices.
    pub fn kron(&self, rhs: &GateMatrix) -> Result<GateMatrix> {
        if self.dim != 2 || rhs.dim != 2 {
            return Err(Error::Dimension("kron takes two 2x2 matrices".into()));
        }
        let mut entries = Vec::with_capacity(16);
        for r in 0..4 {
            for c in 0..4 {
                entries.push(self.get(r / 2, c / 2) * rhs.get(r % 2, c % 2));
            }
        }
        Ok(GateMatrix { dim: 4, entries })
    }

    pub fn scale(&self, lambda: &Cyclotomic) -> GateMatrix {
        GateMatrix { dim: self.dim, entries: self.entries.iter().map(|e| e * lambda).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> GateMatrix {
        GateMatrix { dim: self.dim, entries: self.entries.iter().map(|e| e.scale(r)).collect() }
    }

    pub fn neg(&self) -> GateMatrix {
        GateMatrix { dim: self.dim, entries: self.entries.iter().map(|e| -e).collect() }
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero();
        for i in 0..self.dim {
            t = &t + self.get(i, i);
        }
        t
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Cyclotomic {
        let idx: Vec<usize> = (0..self.dim).collect();
        self.minor_det(&idx, &idx)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Cyclotomic {
        match rows.len() {
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                let a = self.get(rows[0], cols[0]);
                let b = self.get(rows[0], cols[1]);
                let c = self.get(rows[1], cols[0]);
                let d = self.get(rows[1], cols[1]);
                &(a * d) - &(b * c)
            }
            _ => {
                let sub_rows = &rows[1..];
                let mut acc = Cyclotomic::zero();
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry * &self.minor_det(sub_rows, &sub_cols);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// `Some(λ)` iff `self = λ·I`.
    pub fn is_scalar(&self) -> Option<Cyclotomic> {
        let n = self.dim;
        let lambda = self.get(0, 0);
        for i in 0..n {
            for j in 0..n {
                let e = self.get(i, j);
                if i == j {
                    if e != lambda {
                        return None;
                    }
                } else if !e.is_zero() {
                    return None;
                }
            }
        }
        Some(lambda.clone())
    }

    /// Splits a monomial matrix as `P(perm) · D`, `None` if some row or column
    /// does not have exactly one nonzero entry.
    pub fn monomial_parts(&self) -> Option<(Permutation, GateMatrix)> {
        let n = self.dim;
        let mut perm = vec![usize::MAX; n];
        let mut row_seen = vec![false; n];
        let mut diag = vec![Cyclotomic::zero(); n];
        for j in 0..n {
            for i in 0..n {
                if !self.get(i, j).is_zero() {
                    if perm[j] != usize::MAX || row_seen[i] {
                        return None;
                    }
                    perm[j] = i;
                    row_seen[i] = true;
                    diag[j] = self.get(i, j).clone();
                }
            }
            if perm[j] == usize::MAX {
                return None;
            }
        }
        Some((perm, GateMatrix::diagonal(diag).ok()?))
    }

    /// Whether this 4×4 matrix equals `A ⊗ B` for some 2×2 `A`, `B`.
    ///
    /// Realignment: `R[(i1 j1), (i2 j2)] = M[(i1 i2), (j1 j2)]` has rank one
    /// exactly for product matrices; checked through all 36 2×2 minors.
    pub fn tensor_factorizable(&self) -> bool {
        if self.dim != 4 {
            return false;
        }
        let realigned = |r: usize, c: usize| -> &Cyclotomic {
            let (i1, j1) = (r / 2, r % 2);
            let (i2, j2) = (c / 2, c % 2);
            self.get(i1 * 2 + i2, j1 * 2 + j2)
        };
        if (0..16).all(|k| realigned(k / 4, k % 4).is_zero()) {
            return false;
        }
        for r0 in 0..4 {
            for r1 in (r0 + 1)..4 {
                for c0 in 0..4 {
                    for c1 in (c0 + 1)..4 {
                        let a = realigned(r0, c0);
                        let d = realigned(r1, c1);
                        let b = realigned(r0, c1);
                        let c = realigned(r1, c0);
                        if (a.is_zero() || d.is_zero()) && (b.is_zero() || c.is_zero()) {
                            continue;
                        }
                        if a * d != b * c {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Whether `self · other†` is scalar, i.e. equal up to global phase.
    pub fn projectively_equal(&self, other: &GateMatrix) -> bool {
        self.dim == other.dim && self.mul(&other.adjoint()).is_scalar().is_some()
    }

    /// Concatenated canonical entry strings, row-major; the hashing key.
    pub fn canonical_key(&self) -> String {
        let mut s = String::new();
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                s.push(';');
            }
            s.push_str(&e.to_string());
        }
        s
    }

    pub fn pow(&self, k: u32) -> GateMatrix {
        let mut acc = GateMatrix::identity(self.dim);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Smallest `k ≥ 1` with `self^k = I`, searching up to `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let id = GateMatrix::identity(self.dim);
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc == id {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}

impl fmt::Debug for GateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GateMatrix({}x{}) [", self.dim, self.dim)?;
        for row in self.entries.chunks(self.dim) {
            let cells: Vec<String> = row
                .iter()
                .map(|c| {
                    let (re, im) = c.to_complex();
                    format!("{re:+.3}{im:+.3}i")
                })
                .collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<Cyclotomic>>,
}

impl Serialize for GateMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson { dim: self.dim, entries: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GateMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = MatrixJson::deserialize(d)?;
        if m.entries.len() != m.dim {
            return Err(serde::de::Error::custom("row count does not match dim"));
        }
        GateMatrix::from_rows(m.entries).map_err(serde::de::Error::custom)
    }
}
