//! Sparse integer matrices and exact rank computations.

mod dense;
mod rank;
mod sms;

pub use dense::{kernel_mod_p, DenseModP};
pub use rank::{rank_mod_p, rank_rational, Exactness, Field, RankResult};
pub use sms::{sms_read, sms_write};

use std::collections::BTreeMap;

use thiserror::Error;

/// The prime used throughout unless overridden.
pub const DEFAULT_PRIME: u64 = 32189;

/// Dense-equivalent size above which the rational path refuses to run.
pub const RATIONAL_CAPACITY: usize = 4_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("duplicate entry at ({0}, {1})")]
    DuplicateEntry(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed SMS text: {0}")]
    MalformedSms(String),
    #[error("matrix of size {rows}x{cols} exceeds the rational-rank capacity")]
    Capacity { rows: usize, cols: usize },
}

/// Sparse matrix with integer entries in coordinate form. Entries are kept
/// sorted by (row, column), nonzero and without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(u32, u32, i64)>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix { rows: n, cols: n, entries: (0..n as u32).map(|i| (i, i, 1)).collect() }
    }

    /// Validating constructor: rejects out-of-range and duplicate
    /// positions; zero values are dropped.
    pub fn new(rows: usize, cols: usize, mut entries: Vec<(usize, usize, i64)>) -> Result<Self, LinalgError> {
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(LinalgError::DuplicateEntry(w[0].0, w[0].1));
            }
        }
        let mut out = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            if v != 0 {
                out.push((r as u32, c as u32, v));
            }
        }
        Ok(SparseIntMatrix { rows, cols, entries: out })
    }

    /// Builds a matrix by summing the given contributions per position.
    pub fn from_accumulated(
        rows: usize,
        cols: usize,
        contributions: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (r, c, v) in contributions {
            assert!(r < rows && c < cols, "contribution ({r}, {c}) outside {rows}x{cols}");
            *acc.entry((r as u32, c as u32)).or_insert(0) += v;
        }
        let entries = acc.into_iter().filter(|&(_, v)| v != 0).map(|((r, c), v)| (r, c, v)).collect();
        SparseIntMatrix { rows, cols, entries }
    }

    /// Builds a matrix from columns, each a list of `(row, value)` pairs
    /// (duplicates within a column are summed).
    pub fn from_columns(rows: usize, columns: &[Vec<(usize, i64)>]) -> Self {
        let contributions = columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)));
        Self::from_accumulated(rows, columns.len(), contributions)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Entries sorted by (row, column).
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries.iter().map(|&(r, c, v)| (r as usize, c as usize, v))
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries.binary_search_by_key(&(r as u32, c as u32), |&(a, b, _)| (a, b)).map_or(0, |k| self.entries[k].2)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut e: Vec<(u32, u32, i64)> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        e.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseIntMatrix { rows: self.cols, cols: self.rows, entries: e }
    }

    /// Entries reduced to `0..p`; zero residues dropped.
    pub fn reduce_mod(&self, p: u64) -> Self {
        let entries = self
            .entries
            .iter()
            .filter_map(|&(r, c, v)| {
                let x = v.rem_euclid(p as i64);
                (x != 0).then_some((r, c, x))
            })
            .collect();
        SparseIntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    /// Stacks `self` above `other` (same column count).
    pub fn vstack(&self, other: &SparseIntMatrix) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!("vstack {} vs {} columns", self.cols, other.cols)));
        }
        let mut e = self.entries.clone();
        e.extend(other.entries.iter().map(|&(r, c, v)| (r + self.rows as u32, c, v)));
        Ok(SparseIntMatrix { rows: self.rows + other.rows, cols: self.cols, entries: e })
    }

    /// Places `self` left of `other` (same row count).
    pub fn hstack(&self, other: &SparseIntMatrix) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch(format!("hstack {} vs {} rows", self.rows, other.rows)));
        }
        let mut e = self.entries.clone();
        e.extend(other.entries.iter().map(|&(r, c, v)| (r, c + self.cols as u32, v)));
        e.sort_unstable_by_key(|&(r, c, _)| (r, c));
        Ok(SparseIntMatrix { rows: self.rows, cols: self.cols + other.cols, entries: e })
    }

    /// Exact integer product, with overflow checks.
    pub fn multiply(&self, b: &SparseIntMatrix) -> Result<Self, LinalgError> {
        self.product(b, None)
    }

    /// `self - other` (or `self + other` with `sign = 1`).
    pub fn add_scaled(&self, other: &SparseIntMatrix, sign: i64) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch("matrix sum".into()));
        }
        let contributions = self.entries().chain(other.entries().map(|(r, c, v)| (r, c, sign * v)));
        Ok(Self::from_accumulated(self.rows, self.cols, contributions))
    }

    /// Multiplies every entry by `k`.
    pub fn scale(&self, k: i64) -> Self {
        Self::from_accumulated(self.rows, self.cols, self.entries().map(|(r, c, v)| (r, c, v * k)))
    }

    fn product(&self, b: &SparseIntMatrix, p: Option<u64>) -> Result<Self, LinalgError> {
        if self.cols != b.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let mut brows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); b.rows];
        for &(r, c, v) in &b.entries {
            brows[r as usize].push((c, v));
        }
        let mut out = Vec::new();
        let mut acc: BTreeMap<u32, i128> = BTreeMap::new();
        let mut i = 0;
        while i < self.entries.len() {
            let r = self.entries[i].0;
            acc.clear();
            while i < self.entries.len() && self.entries[i].0 == r {
                let (_, k, a) = self.entries[i];
                for &(c, bv) in &brows[k as usize] {
                    let t = acc.entry(c).or_insert(0);
                    *t += a as i128 * bv as i128;
                    if let Some(p) = p {
                        *t %= p as i128;
                    }
                }
                i += 1;
            }
            for (&c, &v) in &acc {
                let v = match p {
                    Some(p) => v.rem_euclid(p as i128),
                    None => v,
                };
                if v != 0 {
                    let v = i64::try_from(v)
                        .map_err(|_| LinalgError::DimensionMismatch("integer overflow in product".into()))?;
                    out.push((r, c, v));
                }
            }
        }
        Ok(SparseIntMatrix { rows: self.rows, cols: b.cols, entries: out })
    }

    /// Columns as sparse `(row, value)` lists.
    pub fn columns(&self) -> Vec<Vec<(usize, i64)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            cols[c].push((r, v));
        }
        cols
    }
}

/// Product `a · b` with entries reduced to `0..p`.
pub fn multiply_mod_p(a: &SparseIntMatrix, b: &SparseIntMatrix, p: u64) -> Result<SparseIntMatrix, LinalgError> {
    a.reduce_mod(p).product(&b.reduce_mod(p), Some(p))
}

/// Primality by trial division (the primes used here are small).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
