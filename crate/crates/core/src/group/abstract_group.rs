use crate::error::{Error, Result};

use super::IndexGroup;

/// A finite group given by its multiplication table, identity at 0.
#[derive(Debug, Clone)]
pub struct CayleyGroup {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
}

impl CayleyGroup {
    /// Validates identity, Latin-square rows and inverses; associativity is
    /// the caller's responsibility.
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != n * n || n == 0 {
            return Err(Error::Internal(format!("table of length {} for order {n}", table.len())));
        }
        for a in 0..n {
            if table[a] != a as u32 || table[a * n] != a as u32 {
                return Err(Error::Internal("element 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverse[a] = b as u32;
                }
            }
            if inverse[a] == u32::MAX {
                return Err(Error::Internal(format!("element {a} has no inverse")));
            }
        }
        let mut g = CayleyGroup { n, table, inverse, orders: Vec::new() };
        g.orders = (0..n as u32)
            .map(|x| {
                let mut y = x;
                let mut k = 1;
                while y != 0 {
                    y = g.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(g)
    }

    /// Cayley table of any [`IndexGroup`], mainly for tests.
    pub fn of<G: IndexGroup>(g: &G) -> Result<Self> {
        let n = g.size();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                table.push(g.mul(a, b));
            }
        }
        Self::from_table(n, table)
    }
}

impl IndexGroup for CayleyGroup {
    fn size(&self) -> usize {
        self.n
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    fn element_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    fn conj(&self, x: u32, s: u32) -> u32 {
        self.mul(self.mul(self.inv(s), x), s)
    }
}
