//! Homology entries, the three-term formula and row certification.

use std::fmt;

use crate::linalg::RankResult;

use super::EngineError;

/// How much a table entry can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// The slice has dimension zero.
    EmptySlice,
    /// The value is the dimension over Q.
    CertifiedExactQ,
    /// Computed from F_p ranks and not certified; for the three-term formula
    /// this is an upper bound on the rational value.
    ModPBound,
    /// Not computed (capacity).
    Unknown,
}

/// A table cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    /// Empty slice, shown as `-`.
    Empty,
    Value(i64),
    /// Skipped, shown as `?`.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HomologyEntry {
    pub cell: Cell,
    pub status: Status,
}

impl HomologyEntry {
    pub fn empty() -> Self {
        HomologyEntry { cell: Cell::Empty, status: Status::EmptySlice }
    }

    pub fn unknown() -> Self {
        HomologyEntry { cell: Cell::Unknown, status: Status::Unknown }
    }

    pub fn value(v: i64, status: Status) -> Self {
        HomologyEntry { cell: Cell::Value(v), status }
    }

    /// Numeric value, with `-` read as 0 and `?` as `None`.
    pub fn numeric(&self) -> Option<i64> {
        match self.cell {
            Cell::Empty => Some(0),
            Cell::Value(v) => Some(v),
            Cell::Unknown => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.status, Status::CertifiedExactQ | Status::EmptySlice)
    }
}

impl fmt::Display for HomologyEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cell {
            Cell::Empty => f.write_str("-"),
            Cell::Value(v) => write!(f, "{v}"),
            Cell::Unknown => f.write_str("?"),
        }
    }
}

fn status_of(ranks: &[RankResult]) -> Status {
    if ranks.iter().all(RankResult::is_exact) {
        Status::CertifiedExactQ
    } else {
        Status::ModPBound
    }
}

/// `dim V - rank d_out - rank d_in`, where `rank_out` is the rank of the
/// differential leaving the slice and `rank_in` that of the one entering
/// it. A negative value is a hard error.
pub fn homology_three_term(
    dim: usize,
    rank_out: RankResult,
    rank_in: RankResult,
) -> Result<HomologyEntry, EngineError> {
    if dim == 0 {
        return Ok(HomologyEntry::empty());
    }
    let v = dim as i64 - rank_out.rank as i64 - rank_in.rank as i64;
    if v < 0 {
        return Err(EngineError::NegativeDimension(v));
    }
    Ok(HomologyEntry::value(v, status_of(&[rank_out, rank_in])))
}

/// `dim V - rank a - rank b + rank c`, the form shared by the truncated
/// and forested formulas. `c_exact` says whether `rank c` is known over Q.
pub fn homology_corrected(
    dim: usize,
    a: RankResult,
    b: RankResult,
    c: RankResult,
) -> Result<HomologyEntry, EngineError> {
    if dim == 0 {
        return Ok(HomologyEntry::empty());
    }
    let v = dim as i64 - a.rank as i64 - b.rank as i64 + c.rank as i64;
    if v < 0 {
        return Err(EngineError::NegativeDimension(v));
    }
    Ok(HomologyEntry::value(v, status_of(&[a, b, c])))
}

/// Upgrades uncertified entries of a row by the squeeze argument: an entry
/// computed from lower-bound ranks is an upper bound, so a computed 0 is
/// exact, and a nonzero entry is exact once both neighbours are certified
/// zero or empty (their exactness pins the two shared ranks). Cells
/// outside the row count as empty, so rows must cover the whole support.
pub fn certify(row: &mut [HomologyEntry]) {
    for e in row.iter_mut() {
        if e.status == Status::ModPBound && e.cell == Cell::Value(0) {
            e.status = Status::CertifiedExactQ;
        }
    }
    let zero_like = |e: Option<&HomologyEntry>| match e {
        None => true,
        Some(e) => e.is_certified() && e.numeric() == Some(0),
    };
    let snapshot = row.to_vec();
    for (i, e) in row.iter_mut().enumerate() {
        if e.status == Status::ModPBound {
            let left = if i == 0 { None } else { snapshot.get(i - 1) };
            if zero_like(left) && zero_like(snapshot.get(i + 1)) {
                e.status = Status::CertifiedExactQ;
            }
        }
    }
}

/// Alternating sum `Σ sign(k) · x_k` with `sign(k) = (-1)^k`.
pub fn alternating_sum(values: impl IntoIterator<Item = (usize, i64)>) -> i64 {
    values.into_iter().map(|(k, x)| if k % 2 == 0 { x } else { -x }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Exactness, Field};

    fn modp(rank: usize) -> RankResult {
        RankResult { rank, field: Field::Prime(32189), exactness: Exactness::LowerBound }
    }

    #[test]
    fn three_term_basics() {
        let e = homology_three_term(1, RankResult::exact_zero(), RankResult::exact_zero()).unwrap();
        assert_eq!(e, HomologyEntry::value(1, Status::CertifiedExactQ));
        assert_eq!(homology_three_term(0, modp(0), modp(0)).unwrap().to_string(), "-");
        assert!(matches!(homology_three_term(2, modp(2), modp(1)), Err(EngineError::NegativeDimension(-1))));
    }

    #[test]
    fn adjacency_rule() {
        let m = |v| HomologyEntry::value(v, Status::ModPBound);
        let mut row = vec![m(0), m(1), m(1), m(0)];
        certify(&mut row);
        assert!(row[0].is_certified() && row[3].is_certified());
        assert!(!row[1].is_certified() && !row[2].is_certified());
        let mut zeros = vec![m(0); 5];
        certify(&mut zeros);
        assert!(zeros.iter().all(HomologyEntry::is_certified));
        let mut lone = vec![HomologyEntry::empty(), m(2), m(0)];
        certify(&mut lone);
        assert!(lone[1].is_certified());
        let mut blocked = vec![HomologyEntry::unknown(), m(2), m(0)];
        certify(&mut blocked);
        assert!(!blocked[1].is_certified());
    }
}
