//! Deterministic sparse Gaussian elimination.
//!
//! Pivots follow a Markowitz-style rule restricted to the sparsest column:
//! take the nonzero column with the fewest active entries (lowest index on
//! ties), then within it the shortest active row (lowest index on ties).
//! That minimizes `(r - 1)(c - 1)` over the pivot candidates of that column
//! and keeps fill-in low on the very sparse differentials we deal with.
//! The same driver runs over F_p and, fraction-free, over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{is_prime, LinalgError, SparseIntMatrix, RATIONAL_CAPACITY};

/// Field a rank was computed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u64),
    Rational,
}

/// Whether a rank is the rational rank or only a lower bound for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exactness {
    Exact,
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RankResult {
    pub rank: usize,
    pub field: Field,
    /// Relative to the rational rank: F_p ranks are lower bounds.
    pub exactness: Exactness,
}

impl RankResult {
    pub fn exact_zero() -> Self {
        RankResult { rank: 0, field: Field::Rational, exactness: Exactness::Exact }
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }
}

/// Rank over F_p.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> Result<RankResult, LinalgError> {
    if !is_prime(p) || p >= 1 << 31 {
        return Err(LinalgError::NotPrime(p));
    }
    if m.is_zero() {
        // The zero map has rank zero over every field.
        return Ok(RankResult { rank: 0, field: Field::Prime(p), exactness: Exactness::Exact });
    }
    let rows = rows_of(&m.reduce_mod(p), |v| v as u64);
    let rank = eliminate(rows, m.cols(), &ModP(p));
    let exactness = if rank == m.rows().min(m.cols()) { Exactness::Exact } else { Exactness::LowerBound };
    Ok(RankResult { rank, field: Field::Prime(p), exactness })
}

/// Rank over Q by fraction-free elimination on big integers.
pub fn rank_rational(m: &SparseIntMatrix) -> Result<RankResult, LinalgError> {
    if m.rows().saturating_mul(m.cols()) > RATIONAL_CAPACITY {
        return Err(LinalgError::Capacity { rows: m.rows(), cols: m.cols() });
    }
    let rows = rows_of(m, BigInt::from);
    let rank = eliminate(rows, m.cols(), &FractionFree);
    Ok(RankResult { rank, field: Field::Rational, exactness: Exactness::Exact })
}

fn rows_of<E>(m: &SparseIntMatrix, f: impl Fn(i64) -> E) -> Vec<Vec<(u32, E)>> {
    let mut rows: Vec<Vec<(u32, E)>> = (0..m.rows()).map(|_| Vec::new()).collect();
    for (r, c, v) in m.entries() {
        rows[r].push((c as u32, f(v)));
    }
    rows
}

trait Elim {
    type E: Clone;
    /// Eliminates the pivot column from `row` using `pivot`; both rows are
    /// sorted by column and contain the pivot column.
    fn combine(&self, row: &[(u32, Self::E)], pivot: &[(u32, Self::E)], col: u32) -> Vec<(u32, Self::E)>;
}

struct ModP(u64);

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut nt, mut r, mut nr) = (0i64, 1i64, p as i64, a as i64);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    t.rem_euclid(p as i64) as u64
}

fn value_at<E>(row: &[(u32, E)], col: u32) -> &E {
    let k = row.binary_search_by_key(&col, |e| e.0).expect("pivot column present");
    &row[k].1
}

impl Elim for ModP {
    type E = u64;
    fn combine(&self, row: &[(u32, u64)], pivot: &[(u32, u64)], col: u32) -> Vec<(u32, u64)> {
        let p = self.0;
        let f = value_at(row, col) * inv_mod(*value_at(pivot, col), p) % p;
        let neg = p - f;
        merge(row, pivot, |a| *a, |b| b * neg % p, |a, b| (a + b * neg) % p, |x| *x == 0)
    }
}

struct FractionFree;

impl Elim for FractionFree {
    type E = BigInt;
    fn combine(&self, row: &[(u32, BigInt)], pivot: &[(u32, BigInt)], col: u32) -> Vec<(u32, BigInt)> {
        let a = value_at(pivot, col).clone();
        let b = value_at(row, col).clone();
        let g = a.gcd(&b);
        let (a, b) = (&a / &g, &b / &g);
        let mut out = merge(row, pivot, |x| x * &a, |y| -(y * &b), |x, y| x * &a - y * &b, |x| x.is_zero());
        // Keep entries small by dividing out the row content.
        let mut content = BigInt::zero();
        for (_, v) in &out {
            content = content.gcd(v);
            if content.is_one() {
                break;
            }
        }
        if !content.is_zero() && !content.abs().is_one() {
            for (_, v) in &mut out {
                *v = &*v / &content;
            }
        }
        out
    }
}

fn merge<E: Clone>(
    a: &[(u32, E)],
    b: &[(u32, E)],
    only_a: impl Fn(&E) -> E,
    only_b: impl Fn(&E) -> E,
    both: impl Fn(&E, &E) -> E,
    is_zero: impl Fn(&E) -> bool,
) -> Vec<(u32, E)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (c, v) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            (a[i - 1].0, only_a(&a[i - 1].1))
        } else if i == a.len() || b[j].0 < a[i].0 {
            j += 1;
            (b[j - 1].0, only_b(&b[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, both(&a[i - 1].1, &b[j - 1].1))
        };
        if !is_zero(&v) {
            out.push((c, v));
        }
    }
    out
}

fn eliminate<R: Elim>(mut rows: Vec<Vec<(u32, R::E)>>, ncols: usize, ring: &R) -> usize {
    let mut col_count = vec![0usize; ncols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut active: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    for (i, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_count[c as usize] += 1;
            col_rows[c as usize].push(i as u32);
        }
    }
    let contains = |row: &[(u32, R::E)], c: u32| row.binary_search_by_key(&c, |e| e.0).is_ok();
    let mut rank = 0;
    loop {
        let mut best: Option<(usize, usize)> = None;
        for (c, &k) in col_count.iter().enumerate() {
            if k > 0 && best.is_none_or(|(_, bk)| k < bk) {
                best = Some((c, k));
                if k == 1 {
                    break;
                }
            }
        }
        let Some((c, _)) = best else { break };
        let cu = c as u32;
        let mut cand: Vec<u32> = std::mem::take(&mut col_rows[c])
            .into_iter()
            .filter(|&r| active[r as usize] && contains(&rows[r as usize], cu))
            .collect();
        cand.sort_unstable();
        cand.dedup();
        let &p = cand
            .iter()
            .min_by_key(|&&r| (rows[r as usize].len(), r))
            .expect("column count positive implies a candidate row");
        let pivot = std::mem::take(&mut rows[p as usize]);
        active[p as usize] = false;
        for &(cc, _) in &pivot {
            col_count[cc as usize] -= 1;
        }
        for &r in &cand {
            if r == p {
                continue;
            }
            let old = std::mem::take(&mut rows[r as usize]);
            let new = ring.combine(&old, &pivot, cu);
            for &(cc, _) in &old {
                col_count[cc as usize] -= 1;
            }
            for &(cc, _) in &new {
                col_count[cc as usize] += 1;
                if !contains(&old, cc) {
                    col_rows[cc as usize].push(r);
                }
            }
            if new.is_empty() {
                active[r as usize] = false;
            }
            rows[r as usize] = new;
        }
        debug_assert_eq!(col_count[c], 0);
        rank += 1;
    }
    rank
}
