//! Small dense matrices over F_p, used for kernels and membership tests.

use super::{LinalgError, SparseIntMatrix};

/// Dense row-major matrix with entries in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseModP {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<u64>>,
}

impl DenseModP {
    pub fn from_sparse(m: &SparseIntMatrix, p: u64) -> Self {
        let mut data = vec![vec![0u64; m.cols()]; m.rows()];
        for (r, c, v) in m.entries() {
            data[r][c] = v.rem_euclid(p as i64) as u64;
        }
        DenseModP { p, rows: m.rows(), cols: m.cols(), data }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(k) = (r..self.rows).find(|&k| self.data[k][c] != 0) else { continue };
            self.data.swap(r, k);
            let inv = pow_mod(self.data[r][c], p - 2, p);
            for x in &mut self.data[r] {
                *x = *x * inv % p;
            }
            for k in 0..self.rows {
                if k != r && self.data[k][c] != 0 {
                    let f = self.data[k][c];
                    let (top, bottom) = self.data.split_at_mut(k.max(r));
                    let (src, dst) = if k < r { (&bottom[0], &mut top[k]) } else { (&top[r], &mut bottom[0]) };
                    for (d, s) in dst.iter_mut().zip(src.iter()) {
                        *d = (*d + (p - f) * s) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Basis of the right kernel of `m` over F_p, as a `cols × k` matrix whose
/// columns are the basis vectors.
pub fn kernel_mod_p(m: &SparseIntMatrix, p: u64) -> Result<SparseIntMatrix, LinalgError> {
    if !super::is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    let mut d = DenseModP::from_sparse(m, p);
    let pivots = d.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut entries = Vec::new();
    for (k, &f) in free.iter().enumerate() {
        entries.push((f, k, 1i64));
        for (i, &pc) in pivots.iter().enumerate() {
            let v = d.data[i][f];
            if v != 0 {
                entries.push((pc, k, ((p - v) % p) as i64));
            }
        }
    }
    SparseIntMatrix::new(m.cols(), free.len(), entries)
}
