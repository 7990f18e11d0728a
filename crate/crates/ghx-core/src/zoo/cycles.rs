//! Explicit forested cycles: the Morita classes and the wheel-like graphs
//! `W_2k`, with closedness and nontriviality checks.

use crate::engine::{Chain, Engine, EngineError, OpKind, Operator, SliceSpec, Term};
use crate::graph::{word_parity, ColoredGraph, Obj, OrientationConvention, OrientationKind, Permutation, Species};
use crate::linalg::SparseIntMatrix;

use super::forested::{contract_marked_terms, unmark_terms};

fn even_convention() -> OrientationConvention {
    OrientationConvention::new(OrientationKind::ForestedEven, Species::Forested)
}

fn odd_convention() -> OrientationConvention {
    OrientationConvention::new(OrientationKind::ForestedOdd, Species::Forested)
}

fn unmarked(g: &mut ColoredGraph, a: usize, b: usize) {
    let w = g.add_vertex(1);
    g.add_edge(a, w);
    g.add_edge(b, w);
}

/// The Morita chain `μ_k` (`k ≥ 1`) in the even forested complex: two
/// columns `v_1..v_{2k+1}` and `w_1..w_{2k+1}`, each a marked path closed up
/// by an unmarked edge, joined by unmarked edges `v_i w_σ(i)` and summed
/// over `σ ∈ S_{2k+1}` with the sign of `σ`. The orientation of every
/// summand is the order of its marked edges along the two paths.
pub fn morita_cycle(k: usize) -> Result<Chain, EngineError> {
    if k == 0 {
        return Err(EngineError::Invalid("Morita cycles start at k = 1".into()));
    }
    let c = 2 * k + 1;
    let conv = even_convention();
    let mut chain = Chain::default();
    for sigma in Permutation::all(c) {
        let mut g = ColoredGraph::empty(2 * c);
        let mut word = Vec::new();
        for col in [0, c] {
            for i in 0..c - 1 {
                g.add_edge(col + i, col + i + 1);
                word.push(Obj::edge(col + i, col + i + 1));
            }
        }
        for col in [0, c] {
            unmarked(&mut g, col, col + c - 1);
        }
        for i in 0..c {
            unmarked(&mut g, i, c + sigma.apply(i));
        }
        let sign = sigma.sign() * word_parity(&word, &conv.reference_word(&g));
        chain.add_term(&Term { graph: g, sign }, 1, &conv);
    }
    Ok(chain)
}

/// The graph `W_2k` (`k ≥ 1`) of the odd forested complex: a cycle on
/// `4k - 2` vertices whose edges alternate between a doubled edge (one
/// strand marked) and a single unmarked edge.
pub fn w_cycle(k: usize) -> Result<Chain, EngineError> {
    if k == 0 {
        return Err(EngineError::Invalid("W_2k starts at k = 1".into()));
    }
    let g = alternating_cycle(2 * k - 1);
    let mut chain = Chain::default();
    chain.add_term(&Term { graph: g, sign: 1 }, 1, &odd_convention());
    Ok(chain)
}

/// The analogous cycle with `2k` doubled edges (`4k` vertices); it has an
/// orientation-reversing symmetry and vanishes.
pub fn odd_w_graph(k: usize) -> ColoredGraph {
    alternating_cycle(2 * k)
}

fn alternating_cycle(doubles: usize) -> ColoredGraph {
    let n = 2 * doubles;
    let mut g = ColoredGraph::empty(n);
    for i in 0..doubles {
        let (a, b) = (2 * i, 2 * i + 1);
        g.add_edge(a, b);
        unmarked(&mut g, a, b);
        unmarked(&mut g, b, (b + 1) % n);
    }
    g
}

/// Outcome of the checks on an explicit chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleReport {
    /// The chain is not zero after canonicalization.
    pub nonzero: bool,
    /// Both the unmarking and the marked contraction annihilate it.
    pub closed: bool,
    /// It is not in the image of the total differential: appending `(x; 0)`
    /// to the stacked matrix on the slice above raises the rank.
    pub nontrivial: bool,
}

/// Whether both the unmarking and the marked contraction annihilate `x`.
/// Works directly on the chain, without building any slice basis.
pub fn is_closed(n_odd: bool, x: &Chain) -> bool {
    let conv = if n_odd { odd_convention() } else { even_convention() };
    x.apply(&conv, |h| unmark_terms(h, n_odd)).is_zero()
        && x.apply(&conv, |h| contract_marked_terms(h, n_odd)).is_zero()
}

/// Checks a chain living in the excess-0 slice with `m` marked edges.
pub fn cycle_report(engine: &Engine, n_odd: bool, g: usize, m: usize, x: &Chain) -> Result<CycleReport, EngineError> {
    let nonzero = !x.is_zero();
    let closed = is_closed(n_odd, x);
    let here = SliceSpec::forested(n_odd, g, m, 0, 0);
    let basis = engine.basis(&here)?;
    let coords =
        x.coordinates(&basis).ok_or_else(|| EngineError::Invalid("chain has graphs outside its slice".into()))?;
    let above = SliceSpec::forested(n_odd, g, m + 1, 0, 0);
    let ops = [Operator::new(OpKind::Unmark, above), Operator::new(OpKind::ContractMarked, above)];
    let du = engine.matrix(&ops[0])?;
    let dc = engine.matrix(&ops[1])?;
    let stacked = du.vstack(&dc)?;
    let column = SparseIntMatrix::from_columns(stacked.rows(), &[coords]);
    let base = engine.rank_matrix(&stacked)?;
    let joint = engine.rank_matrix(&stacked.hstack(&column)?)?;
    Ok(CycleReport { nonzero, closed, nontrivial: joint.rank > base.rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_zero_graph;

    #[test]
    fn shapes() {
        let w2 = alternating_cycle(1);
        assert_eq!((w2.vertex_count(), w2.edge_count()), (4, 5));
        assert!(is_zero_graph(&odd_w_graph(1), &odd_convention()));
        assert!(morita_cycle(0).is_err());
        assert!(w_cycle(0).is_err());
    }
}
