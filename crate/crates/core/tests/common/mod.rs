//! Shared helpers for integration tests.

use std::collections::BTreeMap;

/// Textbook dense Gaussian elimination over GF(2), kept deliberately
/// naive so it can serve as an independent oracle for the streaming
/// echelon implementation.
pub struct DenseOracle {
    dim: usize,
    /// Echelon rows keyed by leading column. Rows are not mutually
    /// reduced; only the leading entries are unique.
    rows: BTreeMap<usize, Vec<u8>>,
}

impl DenseOracle {
    pub fn new(dim: usize) -> Self {
        DenseOracle {
            dim,
            rows: BTreeMap::new(),
        }
    }

    fn densify(&self, support: &[u32]) -> Vec<u8> {
        let mut v = vec![0u8; self.dim];
        for &c in support {
            v[c as usize] ^= 1;
        }
        v
    }

    /// Reduces `v` in place; returns the leading column of the residual,
    /// if any.
    fn reduce(&self, v: &mut [u8]) -> Option<usize> {
        for p in 0..self.dim {
            if v[p] == 0 {
                continue;
            }
            match self.rows.get(&p) {
                Some(row) => {
                    for i in p..self.dim {
                        v[i] ^= row[i];
                    }
                }
                None => return Some(p),
            }
        }
        None
    }

    /// Returns `true` when the row enlarged the span.
    pub fn insert(&mut self, support: &[u32]) -> bool {
        let mut v = self.densify(support);
        match self.reduce(&mut v) {
            Some(lead) => {
                self.rows.insert(lead, v);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, support: &[u32]) -> bool {
        let mut v = self.densify(support);
        self.reduce(&mut v).is_none()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Parity of `<a, b>` for two support lists (entries may repeat; repeats
/// cancel mod 2).
pub fn dot_supports(a: &[u32], b: &[u32]) -> u8 {
    let mut acc = BTreeMap::new();
    for &c in a {
        *acc.entry(c).or_insert(0u8) ^= 1;
    }
    let mut parity = 0;
    let mut b_mult = BTreeMap::new();
    for &c in b {
        *b_mult.entry(c).or_insert(0u8) ^= 1;
    }
    for (c, bit) in b_mult {
        parity ^= bit & acc.get(&c).copied().unwrap_or(0);
    }
    parity
}
