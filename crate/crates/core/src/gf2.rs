//! Streaming sparse linear algebra over GF(2).
//!
//! [`EchelonState`] accepts rows one at a time and maintains a reduced
//! row echelon basis of their span: every stored row's leading column
//! is its pivot, no two rows share a pivot, and every stored row is
//! reduced against all other pivots. Membership queries against a
//! frozen state are read-only and safe to run concurrently.
//!
//! Rows arrive sparse (ideal rows have a few dozen nonzeros); a pivot
//! row switches to a packed bitset once its fill passes 1/16 of the
//! dimension. Reduction works on a dense scratch buffer, scanning bits
//! in ascending order; since stored rows carry no foreign pivot bits,
//! each XOR only introduces non-pivot columns and the scan stays
//! monotone.

use std::io::{self, Read, Write};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Gf2Error {
    #[error("column {column} out of range for dimension {dim}")]
    ColumnOutOfRange { column: u32, dim: usize },
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("bad echelon dump: {0}")]
    BadDump(&'static str),
}

/// A GF(2) row vector given by its support: strictly increasing column
/// indices, each with coefficient 1. Empty support is the zero row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseRow {
    support: Vec<u32>,
}

impl SparseRow {
    /// Builds a row from arbitrary column indices, cancelling repeated
    /// entries mod 2.
    pub fn new(mut columns: Vec<u32>) -> Self {
        columns.sort_unstable();
        let mut support = Vec::with_capacity(columns.len());
        let mut it = columns.into_iter().peekable();
        while let Some(c) = it.next() {
            if it.peek() == Some(&c) {
                it.next();
            } else {
                support.push(c);
            }
        }
        SparseRow { support }
    }

    /// Builds a row from indices already strictly increasing.
    pub fn from_sorted(support: Vec<u32>) -> Self {
        debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
        SparseRow { support }
    }

    pub fn zero() -> Self {
        SparseRow {
            support: Vec::new(),
        }
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn leading(&self) -> Option<u32> {
        self.support.first().copied()
    }

    pub fn contains(&self, column: u32) -> bool {
        self.support.binary_search(&column).is_ok()
    }

    /// Mod-2 dot product with another row.
    pub fn dot(&self, other: &SparseRow) -> bool {
        let mut parity = false;
        let (mut i, mut j) = (0, 0);
        while i < self.support.len() && j < other.support.len() {
            match self.support[i].cmp(&other.support[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    parity = !parity;
                    i += 1;
                    j += 1;
                }
            }
        }
        parity
    }
}

/// Verdict of a membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    InSpan,
    /// The vector is outside the span. The certificate is a covector
    /// vanishing on every stored row and pairing to 1 with the query.
    NotInSpan {
        certificate: SparseRow,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::InSpan)
    }

    pub fn certificate(&self) -> Option<&SparseRow> {
        match self {
            Membership::InSpan => None,
            Membership::NotInSpan { certificate } => Some(certificate),
        }
    }
}

const NO_PIVOT: u32 = u32::MAX;

enum RowStore {
    Sparse(Vec<u32>),
    Dense(Box<[u64]>),
}

impl RowStore {
    fn contains(&self, column: u32) -> bool {
        match self {
            RowStore::Sparse(s) => s.binary_search(&column).is_ok(),
            RowStore::Dense(w) => {
                let wi = (column / 64) as usize;
                wi < w.len() && w[wi] >> (column % 64) & 1 == 1
            }
        }
    }

    fn collect_support(&self, out: &mut Vec<u32>) {
        out.clear();
        match self {
            RowStore::Sparse(s) => out.extend_from_slice(s),
            RowStore::Dense(w) => {
                for (wi, &word) in w.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        out.push((wi * 64) as u32 + bits.trailing_zeros());
                        bits &= bits - 1;
                    }
                }
            }
        }
    }

    fn xor_into_words(&self, words: &mut [u64]) {
        match self {
            RowStore::Sparse(s) => {
                for &c in s {
                    words[(c / 64) as usize] ^= 1u64 << (c % 64);
                }
            }
            RowStore::Dense(w) => {
                for (dst, src) in words.iter_mut().zip(w.iter()) {
                    *dst ^= *src;
                }
            }
        }
    }
}

/// Incrementally built reduced row echelon basis over GF(2).
pub struct EchelonState {
    dim: usize,
    insertions: u64,
    rows: Vec<RowStore>,
    /// Per-row leading (= pivot) column and maximum support column.
    row_min: Vec<u32>,
    row_max: Vec<u32>,
    pivot_of_col: Vec<u32>,
    scratch: Vec<u64>,
}

impl EchelonState {
    pub fn new(dim: usize) -> Self {
        assert!(dim < NO_PIVOT as usize, "dimension too large");
        EchelonState {
            dim,
            insertions: 0,
            rows: Vec::new(),
            row_min: Vec::new(),
            row_max: Vec::new(),
            pivot_of_col: vec![NO_PIVOT; dim],
            scratch: vec![0u64; dim.div_ceil(64)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of pivot rows, i.e. the rank of everything inserted so far.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insertions(&self) -> u64 {
        self.insertions
    }

    /// Pivot columns in ascending order.
    pub fn pivot_columns(&self) -> Vec<u32> {
        let mut cols: Vec<u32> = self.row_min.clone();
        cols.sort_unstable();
        cols
    }

    fn check_row(&self, row: &SparseRow) -> Result<(), Gf2Error> {
        if let Some(&max) = row.support.last() {
            if max as usize >= self.dim {
                return Err(Gf2Error::ColumnOutOfRange {
                    column: max,
                    dim: self.dim,
                });
            }
        }
        Ok(())
    }

    fn load_scratch(scratch: &mut [u64], row: &SparseRow) {
        scratch.fill(0);
        for &c in &row.support {
            scratch[(c / 64) as usize] |= 1u64 << (c % 64);
        }
    }

    /// Reduces the scratch buffer against the stored pivots, scanning
    /// columns in ascending order. Returns the lowest surviving
    /// (non-pivot) column, or None if the buffer reduced to zero. When
    /// `stop_early` is set, returns at the first survivor instead of
    /// completing the reduction.
    fn reduce_scratch(&self, scratch: &mut [u64], stop_early: bool) -> Option<u32> {
        let mut survivor: Option<u32> = None;
        let mut wi = 0;
        let mut mask = !0u64;
        while wi < scratch.len() {
            let word = scratch[wi] & mask;
            if word == 0 {
                wi += 1;
                mask = !0;
                continue;
            }
            let bit = word.trailing_zeros();
            let col = (wi * 64) as u32 + bit;
            let row_idx = self.pivot_of_col[col as usize];
            if row_idx != NO_PIVOT {
                self.rows[row_idx as usize].xor_into_words(scratch);
                // col is cleared; everything below col is untouched.
                continue;
            }
            if survivor.is_none() {
                survivor = Some(col);
                if stop_early {
                    return survivor;
                }
            }
            // Skip past this non-pivot bit.
            if bit == 63 {
                wi += 1;
                mask = !0;
            } else {
                mask = !0u64 << (bit + 1);
            }
        }
        survivor
    }

    fn store_row(&mut self, support: Vec<u32>) -> RowStore {
        if support.len() > self.dim / 16 && self.dim > 64 {
            let mut words = vec![0u64; self.dim.div_ceil(64)].into_boxed_slice();
            for &c in &support {
                words[(c / 64) as usize] |= 1u64 << (c % 64);
            }
            RowStore::Dense(words)
        } else {
            RowStore::Sparse(support)
        }
    }

    /// Inserts a row, reducing it against the current pivots. Returns
    /// true when the row was independent (a new pivot was installed).
    pub fn insert(&mut self, row: &SparseRow) -> Result<bool, Gf2Error> {
        self.check_row(row)?;
        self.insertions += 1;
        let mut scratch = std::mem::take(&mut self.scratch);
        Self::load_scratch(&mut scratch, row);
        let survivor = self.reduce_scratch(&mut scratch, false);
        let Some(pivot) = survivor else {
            self.scratch = scratch;
            return Ok(false);
        };

        let mut support = Vec::new();
        for (wi, &word) in scratch.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                support.push((wi * 64) as u32 + bits.trailing_zeros());
                bits &= bits - 1;
            }
        }
        self.scratch = scratch;
        debug_assert_eq!(support[0], pivot);
        let max = *support.last().unwrap();

        // Clear the new pivot column from every older row.
        let new_row = self.store_row(support);
        for idx in 0..self.rows.len() {
            if self.row_min[idx] > pivot || self.row_max[idx] < pivot {
                continue;
            }
            if !self.rows[idx].contains(pivot) {
                continue;
            }
            self.xor_stored(idx, &new_row);
        }

        let idx = self.rows.len() as u32;
        self.pivot_of_col[pivot as usize] = idx;
        self.rows.push(new_row);
        self.row_min.push(pivot);
        self.row_max.push(max);
        Ok(true)
    }

    /// rows[idx] ^= other, keeping the stored representation and the
    /// min/max metadata consistent. The leading column never changes:
    /// other's leading bit is present in rows[idx] and gets cleared,
    /// while rows[idx]'s own pivot is below it.
    fn xor_stored(&mut self, idx: usize, other: &RowStore) {
        let mut merged: Vec<u32> = Vec::new();
        {
            let mut self_support = Vec::new();
            self.rows[idx].collect_support(&mut self_support);
            let mut other_support = Vec::new();
            other.collect_support(&mut other_support);
            let (mut i, mut j) = (0, 0);
            while i < self_support.len() || j < other_support.len() {
                match (self_support.get(i), other_support.get(j)) {
                    (Some(&a), Some(&b)) if a == b => {
                        i += 1;
                        j += 1;
                    }
                    (Some(&a), Some(&b)) if a < b => {
                        merged.push(a);
                        i += 1;
                    }
                    (Some(_), Some(&b)) => {
                        merged.push(b);
                        j += 1;
                    }
                    (Some(&a), None) => {
                        merged.push(a);
                        i += 1;
                    }
                    (None, Some(&b)) => {
                        merged.push(b);
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
        }
        debug_assert!(!merged.is_empty(), "pivot row cancelled entirely");
        debug_assert_eq!(merged[0], self.row_min[idx]);
        self.row_max[idx] = *merged.last().unwrap();
        self.rows[idx] = self.store_row(merged);
    }

    /// Tests whether a vector lies in the span of the inserted rows.
    /// On failure, returns a certificate covector u with u . r = 0 for
    /// every stored row r and u . v = 1: the indicator of the lowest
    /// surviving non-pivot column j, plus every pivot whose row has a
    /// nonzero entry in column j.
    pub fn membership(&self, vector: &SparseRow) -> Result<Membership, Gf2Error> {
        self.check_row(vector)?;
        let mut scratch = vec![0u64; self.dim.div_ceil(64)];
        Self::load_scratch(&mut scratch, vector);
        match self.reduce_scratch(&mut scratch, true) {
            None => Ok(Membership::InSpan),
            Some(j) => {
                let mut cols = vec![j];
                for idx in 0..self.rows.len() {
                    if self.row_min[idx] > j || self.row_max[idx] < j {
                        continue;
                    }
                    if self.rows[idx].contains(j) {
                        cols.push(self.row_min[idx]);
                    }
                }
                let certificate = SparseRow::new(cols);
                debug_assert!(certificate.dot(vector));
                Ok(Membership::NotInSpan { certificate })
            }
        }
    }

    /// Serializes the state: magic "GF2E", a version byte, the
    /// dimension as 8-byte little-endian, then per pivot in ascending
    /// column order: column index, support count, and the sorted
    /// support, all 8-byte little-endian.
    pub fn write_to(&self, w: &mut impl Write) -> io::Result<()> {
        w.write_all(b"GF2E")?;
        w.write_all(&[1u8])?;
        w.write_all(&(self.dim as u64).to_le_bytes())?;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&i| self.row_min[i]);
        let mut support = Vec::new();
        for i in order {
            self.rows[i].collect_support(&mut support);
            w.write_all(&(self.row_min[i] as u64).to_le_bytes())?;
            w.write_all(&(support.len() as u64).to_le_bytes())?;
            for &c in &support {
                w.write_all(&(c as u64).to_le_bytes())?;
            }
        }
        Ok(())
    }

    /// Reads a state written by [`write_to`](Self::write_to),
    /// validating the echelon invariants. The insertion counter is not
    /// part of the format and restarts at the rank.
    pub fn read_from(r: &mut impl Read) -> Result<EchelonState, Gf2Error> {
        fn read_u64(r: &mut impl Read) -> Result<u64, Gf2Error> {
            let mut buf = [0u8; 8];
            r.read_exact(&mut buf)?;
            Ok(u64::from_le_bytes(buf))
        }

        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != b"GF2E" {
            return Err(Gf2Error::BadDump("bad magic"));
        }
        let mut version = [0u8; 1];
        r.read_exact(&mut version)?;
        if version[0] != 1 {
            return Err(Gf2Error::BadDump("unsupported version"));
        }
        let dim = read_u64(r)?;
        if dim >= NO_PIVOT as u64 {
            return Err(Gf2Error::BadDump("dimension too large"));
        }
        let mut state = EchelonState::new(dim as usize);
        loop {
            let mut buf = [0u8; 8];
            match r.read(&mut buf)? {
                0 => break,
                8 => {}
                n => {
                    let mut rest = [0u8; 8];
                    r.read_exact(&mut rest[..8 - n])
                        .map_err(|_| Gf2Error::BadDump("truncated pivot record"))?;
                    buf[n..].copy_from_slice(&rest[..8 - n]);
                }
            }
            let col = u64::from_le_bytes(buf);
            let count = read_u64(r)?;
            if count == 0 {
                return Err(Gf2Error::BadDump("empty pivot row"));
            }
            let mut support = Vec::with_capacity(count as usize);
            for _ in 0..count {
                let c = read_u64(r)?;
                if c >= dim {
                    return Err(Gf2Error::BadDump("support index out of range"));
                }
                support.push(c as u32);
            }
            if support.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Gf2Error::BadDump("support not strictly increasing"));
            }
            if support[0] as u64 != col {
                return Err(Gf2Error::BadDump("leading column is not the pivot"));
            }
            if state.pivot_of_col[col as usize] != NO_PIVOT {
                return Err(Gf2Error::BadDump("duplicate pivot column"));
            }
            let idx = state.rows.len() as u32;
            state.pivot_of_col[col as usize] = idx;
            state.row_min.push(support[0]);
            state.row_max.push(*support.last().unwrap());
            let stored = state.store_row(support);
            state.rows.push(stored);
        }
        // Reduced form: no row may contain a foreign pivot column.
        let mut support = Vec::new();
        for i in 0..state.rows.len() {
            state.rows[i].collect_support(&mut support);
            for &c in &support[1..] {
                if state.pivot_of_col[c as usize] != NO_PIVOT {
                    return Err(Gf2Error::BadDump("row not reduced against pivots"));
                }
            }
        }
        state.insertions = state.rows.len() as u64;
        Ok(state)
    }

    /// The stored rows as sparse supports, in ascending pivot order.
    pub fn rows(&self) -> Vec<SparseRow> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&i| self.row_min[i]);
        let mut out = Vec::with_capacity(order.len());
        let mut support = Vec::new();
        for i in order {
            self.rows[i].collect_support(&mut support);
            out.push(SparseRow::from_sorted(support.clone()));
        }
        out
    }
}
