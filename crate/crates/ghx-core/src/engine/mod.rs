//! The graded-vector-space framework shared by all families: slices,
//! bases, operator matrices, ranks, persistence and the homology formulas.
//!
//! An [`Engine`] owns an optional on-disk [`Store`] plus in-memory caches.
//! Every artifact is built on first request, published to the store and
//! reused afterwards; with a warm store nothing is recomputed.

mod basis;
mod homology;
mod operator;
mod slice;
mod store;

pub use basis::Basis;
pub use homology::{alternating_sum, certify, homology_corrected, homology_three_term, Cell, HomologyEntry, Status};
pub use operator::{assemble, canonical_term, AssemblyStats, Chain, OpKind, Operator, Term};
pub use slice::{Family, SliceSpec};
pub use store::{sha256_hex, Store, DATA_DIR_ENV};

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::graph::GraphError;
use crate::linalg::{
    multiply_mod_p, rank_mod_p, rank_rational, sms_read, sms_write, Exactness, Field, LinalgError, RankResult,
    SparseIntMatrix, DEFAULT_PRIME, RATIONAL_CAPACITY,
};
use crate::symrep::SymrepError;

/// Default refusal threshold for basis sizes.
pub const DEFAULT_CAPACITY: usize = 5_000_000;

/// Largest `dim × r!` for which an isotypic decomposition is attempted
/// without `force`. Every projector touches that many action entries.
pub const DEFAULT_ISOTYPIC_CAPACITY: usize = 2_000_000;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("I/O error: {0}")]
    Io(String),
    #[error("checksum mismatch for cached artifact {0}")]
    Checksum(String),
    #[error("corrupt artifact: {0}")]
    Corrupt(String),
    #[error("negative homology dimension {0}: a rank is wrong")]
    NegativeDimension(i64),
    #[error("slice {spec} has {size} basis elements, above the capacity of {limit}")]
    Capacity { spec: String, size: usize, limit: usize },
    #[error("invalid request: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Symrep(#[from] SymrepError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Counters describing where artifacts came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub memory_hits: usize,
    pub store_hits: usize,
    pub built: usize,
}

/// Build context: store, arithmetic settings and caches.
pub struct Engine {
    store: Option<Store>,
    prime: u64,
    over_q: bool,
    capacity: usize,
    isotypic_capacity: usize,
    force: bool,
    bases: Mutex<HashMap<SliceSpec, Arc<Basis>>>,
    matrices: Mutex<HashMap<Operator, Arc<SparseIntMatrix>>>,
    ranks: Mutex<HashMap<(Vec<Operator>, Field), RankResult>>,
    assembly: Mutex<HashMap<Operator, AssemblyStats>>,
    memory_hits: AtomicUsize,
    store_hits: AtomicUsize,
    built: AtomicUsize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(None)
    }
}

impl Engine {
    pub fn new(store: Option<Store>) -> Self {
        Engine {
            store,
            prime: DEFAULT_PRIME,
            over_q: false,
            capacity: DEFAULT_CAPACITY,
            isotypic_capacity: DEFAULT_ISOTYPIC_CAPACITY,
            force: false,
            bases: Mutex::default(),
            matrices: Mutex::default(),
            ranks: Mutex::default(),
            assembly: Mutex::default(),
            memory_hits: AtomicUsize::new(0),
            store_hits: AtomicUsize::new(0),
            built: AtomicUsize::new(0),
        }
    }

    /// Engine without persistence.
    pub fn in_memory() -> Self {
        Self::new(None)
    }

    pub fn with_prime(mut self, p: u64) -> Result<Self, EngineError> {
        if !crate::linalg::is_prime(p) || p >= 1 << 31 {
            return Err(LinalgError::NotPrime(p).into());
        }
        self.prime = p;
        Ok(self)
    }

    pub fn with_over_q(mut self, on: bool) -> Self {
        self.over_q = on;
        self
    }

    pub fn with_capacity(mut self, limit: usize, force: bool) -> Self {
        self.capacity = limit;
        self.force = force;
        self
    }

    pub fn with_isotypic_capacity(mut self, limit: usize) -> Self {
        self.isotypic_capacity = limit;
        self
    }

    /// Refuses an isotypic decomposition whose work `dim × r!` is above the
    /// limit, unless forced.
    pub(crate) fn check_isotypic_work(&self, spec: &SliceSpec, work: usize) -> Result<(), EngineError> {
        if work > self.isotypic_capacity && !self.force {
            return Err(EngineError::Capacity { spec: spec.to_string(), size: work, limit: self.isotypic_capacity });
        }
        Ok(())
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn store(&self) -> Option<&Store> {
        self.store.as_ref()
    }

    pub fn cache_stats(&self) -> CacheStats {
        CacheStats {
            memory_hits: self.memory_hits.load(Ordering::Relaxed),
            store_hits: self.store_hits.load(Ordering::Relaxed),
            built: self.built.load(Ordering::Relaxed),
        }
    }

    /// Basis of a slice, generated on first use.
    pub fn basis(&self, spec: &SliceSpec) -> Result<Arc<Basis>, EngineError> {
        if let Some(b) = self.bases.lock().expect("cache lock").get(spec) {
            self.memory_hits.fetch_add(1, Ordering::Relaxed);
            return Ok(b.clone());
        }
        let basis = if !spec.feasible() {
            Basis::empty(*spec)
        } else if let Some(text) = self.read_artifact(spec, "basis.g6")? {
            self.store_hits.fetch_add(1, Ordering::Relaxed);
            Basis::from_text(*spec, &text)?
        } else {
            let graphs = crate::zoo::enumerate(spec)?;
            if graphs.len() > self.capacity && !self.force {
                return Err(EngineError::Capacity { spec: spec.to_string(), size: graphs.len(), limit: self.capacity });
            }
            let b = Basis::new(*spec, graphs);
            self.built.fetch_add(1, Ordering::Relaxed);
            if let Some(s) = &self.store {
                s.write(spec, "basis.g6", &b.to_text())?;
            }
            b
        };
        let b = Arc::new(basis);
        self.bases.lock().expect("cache lock").insert(*spec, b.clone());
        Ok(b)
    }

    pub fn dimension(&self, spec: &SliceSpec) -> Result<usize, EngineError> {
        Ok(self.basis(spec)?.dimension())
    }

    fn read_artifact(&self, spec: &SliceSpec, file: &str) -> Result<Option<String>, EngineError> {
        match &self.store {
            Some(s) if !self.force => s.read(spec, file),
            _ => Ok(None),
        }
    }

    /// Matrix of an operator (rows: target basis, columns: domain basis).
    pub fn matrix(&self, op: &Operator) -> Result<Arc<SparseIntMatrix>, EngineError> {
        if let Some(m) = self.matrices.lock().expect("cache lock").get(op) {
            self.memory_hits.fetch_add(1, Ordering::Relaxed);
            return Ok(m.clone());
        }
        let domain = self.basis(&op.domain)?;
        let file = format!("d_{}.sms", op.name());
        let target = match op.target() {
            Some(t) => self.basis(&t)?,
            None => Arc::new(Basis::empty(op.domain)),
        };
        let m = if domain.is_empty() || target.is_empty() {
            SparseIntMatrix::zero(target.dimension(), domain.dimension())
        } else if let Some(text) = self.read_artifact(&op.domain, &file)? {
            self.store_hits.fetch_add(1, Ordering::Relaxed);
            let m = sms_read(&text)?;
            if m.rows() != target.dimension() || m.cols() != domain.dimension() {
                return Err(EngineError::Corrupt(format!("{file} of {} has the wrong shape", op.domain)));
            }
            m
        } else {
            let conv = target.spec().convention();
            let apply = |g: &crate::graph::ColoredGraph| crate::zoo::terms(op, g);
            let (m, stats) = assemble(&domain, &target, &conv, &apply);
            self.assembly.lock().expect("cache lock").insert(*op, stats);
            self.built.fetch_add(1, Ordering::Relaxed);
            if let Some(s) = &self.store {
                s.write(&op.domain, &file, &sms_write(&m))?;
            }
            m
        };
        let m = Arc::new(m);
        self.matrices.lock().expect("cache lock").insert(*op, m.clone());
        Ok(m)
    }

    /// Statistics of the last assembly of `op` in this process, if it was
    /// built rather than loaded.
    pub fn assembly_stats(&self, op: &Operator) -> Option<AssemblyStats> {
        self.assembly.lock().expect("cache lock").get(op).copied()
    }

    /// Rank of one operator, or of several with the same domain stacked
    /// vertically.
    pub fn rank(&self, ops: &[Operator]) -> Result<RankResult, EngineError> {
        let Some(first) = ops.first() else { return Ok(RankResult::exact_zero()) };
        if ops.iter().any(|o| o.domain != first.domain) {
            return Err(EngineError::Invalid("stacked operators need a common domain".into()));
        }
        let mut m = (*self.matrix(first)?).clone();
        for o in &ops[1..] {
            m = m.vstack(&*self.matrix(o)?)?;
        }
        let field = self.field_for(&m);
        let key = (ops.to_vec(), field);
        if let Some(r) = self.ranks.lock().expect("cache lock").get(&key) {
            return Ok(*r);
        }
        let names: Vec<&str> = ops.iter().map(Operator::name).collect();
        let file = match field {
            Field::Prime(p) => format!("rank_{}_p{p}.txt", names.join("+")),
            Field::Rational => format!("rank_{}_q.txt", names.join("+")),
        };
        let r = match self.read_artifact(&first.domain, &file)?.and_then(|t| parse_rank(&t, field)) {
            Some(r) => {
                self.store_hits.fetch_add(1, Ordering::Relaxed);
                r
            }
            None => {
                let r = self.rank_matrix(&m)?;
                if let (Some(s), false) = (&self.store, m.is_zero()) {
                    s.write(&first.domain, &file, &format_rank(&r))?;
                }
                r
            }
        };
        self.ranks.lock().expect("cache lock").insert(key, r);
        Ok(r)
    }

    fn field_for(&self, m: &SparseIntMatrix) -> Field {
        if self.over_q && m.rows().saturating_mul(m.cols()) <= RATIONAL_CAPACITY {
            Field::Rational
        } else {
            Field::Prime(self.prime)
        }
    }

    /// Rank of an arbitrary matrix under the engine's arithmetic settings.
    pub fn rank_matrix(&self, m: &SparseIntMatrix) -> Result<RankResult, EngineError> {
        if m.is_zero() {
            return Ok(RankResult::exact_zero());
        }
        Ok(match self.field_for(m) {
            Field::Rational => rank_rational(m)?,
            Field::Prime(p) => rank_mod_p(m, p)?,
        })
    }

    /// Checks that `Σ second_i · first_i` vanishes for operator pairs with
    /// composable shapes (mod p, and over Q when both matrices are small).
    /// Returns the first violating column of the common domain, if any.
    pub fn composite_violation(&self, pairs: &[(Operator, Operator)]) -> Result<Option<usize>, EngineError> {
        let mut mats = Vec::new();
        for (a, b) in pairs {
            if a.target() != Some(b.domain) {
                return Err(EngineError::Invalid(format!("{b} does not follow {a}")));
            }
            mats.push((self.matrix(a)?, self.matrix(b)?));
        }
        let refs: Vec<(&SparseIntMatrix, &SparseIntMatrix)> = mats.iter().map(|(a, b)| (&**a, &**b)).collect();
        composite_violation(&refs, self.prime)
    }
}

fn format_rank(r: &RankResult) -> String {
    let ex = match r.exactness {
        Exactness::Exact => "exact",
        Exactness::LowerBound => "lower-bound",
    };
    format!("{} {ex}\n", r.rank)
}

fn parse_rank(text: &str, field: Field) -> Option<RankResult> {
    let mut it = text.split_whitespace();
    let rank = it.next()?.parse().ok()?;
    let exactness = match it.next()? {
        "exact" => Exactness::Exact,
        "lower-bound" => Exactness::LowerBound,
        _ => return None,
    };
    Some(RankResult { rank, field, exactness })
}

/// First column where `Σ b_i · a_i` is nonzero, checked mod `p` and, when
/// every factor has at most 500 rows and columns, over the integers.
pub fn composite_violation(
    pairs: &[(&SparseIntMatrix, &SparseIntMatrix)],
    p: u64,
) -> Result<Option<usize>, EngineError> {
    let Some((a0, b0)) = pairs.first() else { return Ok(None) };
    let (rows, cols) = (b0.rows(), a0.cols());
    let mut modp = SparseIntMatrix::zero(rows, cols);
    let mut exact = Some(SparseIntMatrix::zero(rows, cols));
    for (a, b) in pairs {
        let prod = multiply_mod_p(b, a, p)?;
        if prod.rows() != rows || prod.cols() != cols {
            return Err(LinalgError::DimensionMismatch("composite of different shapes".into()).into());
        }
        modp = modp.add_scaled(&prod, 1)?.reduce_mod(p);
        let small = [a.rows(), a.cols(), b.rows(), b.cols()].iter().all(|&d| d <= 500);
        exact = match (exact, small) {
            (Some(acc), true) => Some(acc.add_scaled(&b.multiply(a)?, 1)?),
            _ => None,
        };
    }
    let first = |m: &SparseIntMatrix| m.entries().map(|(_, c, _)| c).min();
    Ok(first(&modp).or_else(|| exact.as_ref().and_then(first)))
}
