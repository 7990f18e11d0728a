//! Operators between slices and the assembly of their matrices.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::graph::{canonical_full, transport_sign, zero_from_generators, ColoredGraph, OrientationConvention};
use crate::linalg::SparseIntMatrix;

use super::{Basis, Family, SliceSpec};

/// One summand of an operator applied to a basis graph: a labeled (not yet
/// canonical) graph and the sign relative to its own reference orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub graph: ColoredGraph,
    pub sign: i8,
}

/// The operators the engine can assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    /// Edge contraction within a family (internal edges only).
    Contract,
    /// Contraction from the 3/4-valent slice into the slice with one
    /// 5- or 6-valent vertex.
    ContractToHigh,
    /// Contraction of a marked edge (forested).
    ContractMarked,
    /// Unmarking of a marked edge (forested).
    Unmark,
    /// Deletion of the single hair of a one-hair graph.
    HairRemoval,
}

/// An operator together with its domain slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operator {
    pub kind: OpKind,
    pub domain: SliceSpec,
}

impl Operator {
    pub fn new(kind: OpKind, domain: SliceSpec) -> Self {
        Operator { kind, domain }
    }

    /// File stem of the matrix (`d_<name>.sms`).
    pub fn name(&self) -> &'static str {
        match self.kind {
            OpKind::Contract => "d",
            OpKind::ContractToHigh => "d2",
            OpKind::ContractMarked => "dc",
            OpKind::Unmark => "du",
            OpKind::HairRemoval => "hairremoval",
        }
    }

    /// Target slice, or `None` when the target is trivially zero.
    pub fn target(&self) -> Option<SliceSpec> {
        let d = self.domain;
        match self.kind {
            OpKind::Contract => {
                let v = d.vertices.checked_sub(1)?;
                (d.family != Family::Forested).then_some(SliceSpec { vertices: v, ..d })
            }
            OpKind::ContractToHigh => {
                let v = d.vertices.checked_sub(1)?;
                (d.family == Family::Merkulov34).then(|| SliceSpec::merkulov56(d.n_odd, d.loops, v))
            }
            OpKind::ContractMarked => {
                let m = d.marked.checked_sub(1)?;
                let t = SliceSpec::forested(d.n_odd, d.loops, m, d.hairs, d.excess + 1);
                Some(if d.bridgeless { t } else { t.with_bridges() })
            }
            OpKind::Unmark => {
                let m = d.marked.checked_sub(1)?;
                Some(SliceSpec { marked: m, ..d })
            }
            OpKind::HairRemoval => {
                (d.family == Family::Hairy && d.hairs == 1).then(|| SliceSpec::ordinary(d.n_odd, d.loops, d.vertices))
            }
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.name(), self.domain)
    }
}

/// Bookkeeping from one assembly run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AssemblyStats {
    pub terms: usize,
    /// Terms landing on a graph with an orientation-reversing automorphism.
    pub zero_terms: usize,
    /// Nonzero terms whose graph is not in the target basis (outside the
    /// target's admissibility window).
    pub outside_terms: usize,
}

/// Canonical form of a term with its total sign, or `None` for a zero
/// graph.
pub fn canonical_term(t: &Term, conv: &OrientationConvention) -> Option<(ColoredGraph, i8)> {
    let c = canonical_full(&t.graph);
    if zero_from_generators(&t.graph, &c.automorphisms, conv) {
        return None;
    }
    let s = t.sign * transport_sign(&t.graph, &c.relabel, &c.graph, conv);
    Some((c.graph, s))
}

/// Matrix of an operator: column `j` is the image of domain graph `j`,
/// expressed in the target basis. Terms on zero graphs vanish; terms on
/// graphs outside the target basis are dropped and counted.
pub fn assemble(
    domain: &Basis,
    target: &Basis,
    conv: &OrientationConvention,
    apply: &(dyn Fn(&ColoredGraph) -> Vec<Term> + Sync),
) -> (SparseIntMatrix, AssemblyStats) {
    let terms = AtomicUsize::new(0);
    let zero = AtomicUsize::new(0);
    let outside = AtomicUsize::new(0);
    let columns: Vec<Vec<(usize, i64)>> = domain
        .graphs()
        .par_iter()
        .map(|g| {
            let mut col: HashMap<usize, i64> = HashMap::new();
            for t in apply(g) {
                terms.fetch_add(1, Ordering::Relaxed);
                match canonical_term(&t, conv) {
                    None => {
                        zero.fetch_add(1, Ordering::Relaxed);
                    }
                    Some((c, s)) => match target.index_of(&c) {
                        Some(i) => *col.entry(i).or_insert(0) += s as i64,
                        None => {
                            outside.fetch_add(1, Ordering::Relaxed);
                        }
                    },
                }
            }
            let mut col: Vec<(usize, i64)> = col.into_iter().filter(|&(_, v)| v != 0).collect();
            col.sort_unstable();
            col
        })
        .collect();
    let m = SparseIntMatrix::from_columns(target.dimension(), &columns);
    let stats =
        AssemblyStats { terms: terms.into_inner(), zero_terms: zero.into_inner(), outside_terms: outside.into_inner() };
    (m, stats)
}

/// A linear combination of canonical graphs, kept without a basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain {
    pub coefficients: HashMap<ColoredGraph, i64>,
}

impl Chain {
    /// Adds a term after canonicalization; zero graphs are ignored.
    pub fn add_term(&mut self, t: &Term, coefficient: i64, conv: &OrientationConvention) {
        if let Some((c, s)) = canonical_term(t, conv) {
            let e = self.coefficients.entry(c).or_insert(0);
            *e += coefficient * s as i64;
        }
        self.coefficients.retain(|_, v| *v != 0);
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.values().all(|&v| v == 0)
    }

    /// Applies a term-producing operator linearly.
    pub fn apply(&self, conv: &OrientationConvention, op: impl Fn(&ColoredGraph) -> Vec<Term>) -> Chain {
        let mut out = Chain::default();
        for (g, &c) in &self.coefficients {
            for t in op(g) {
                out.add_term(&t, c, conv);
            }
        }
        out
    }

    /// Coordinates in a basis; `None` if some graph is not in it.
    pub fn coordinates(&self, basis: &Basis) -> Option<Vec<(usize, i64)>> {
        let mut v: Vec<(usize, i64)> = Vec::new();
        for (g, &c) in &self.coefficients {
            v.push((basis.index_of(g)?, c));
        }
        v.sort_unstable();
        Some(v)
    }
}
