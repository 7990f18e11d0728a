//! Ordinary graphs and the valence-truncated (3/4 and 5/6) slices.

use rayon::prelude::*;

use crate::engine::{Family, SliceSpec, Term};
use crate::graph::generate::connected_simple;
use crate::graph::{
    is_zero_graph, structural_predicates, word_parity, ColorRole, ColoredGraph, Obj, OrientationConvention,
    OrientationKind,
};

use super::take;

/// Connected, 1-vertex irreducible, every valence at least 3 (simplicity
/// holds by construction).
pub fn ordinary_admissible(g: &ColoredGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 || (0..n).any(|v| g.degree(v) < 3) {
        return false;
    }
    let s = structural_predicates(g, u64::MAX);
    s.connected && s.one_vertex_irreducible
}

/// Valence window of the truncated families.
pub fn in_valence_window(family: Family, g: &ColoredGraph) -> bool {
    let degrees = (0..g.vertex_count()).map(|v| g.degree(v));
    match family {
        Family::Merkulov34 => degrees.into_iter().all(|d| d == 3 || d == 4),
        Family::Merkulov56 => {
            let mut high = 0;
            for d in degrees {
                match d {
                    3 | 4 => {}
                    5 | 6 => high += 1,
                    _ => return false,
                }
            }
            high == 1
        }
        _ => true,
    }
}

/// Nonzero admissible graphs of an ordinary or truncated slice, canonical.
pub(crate) fn enumerate(spec: &SliceSpec) -> Vec<ColoredGraph> {
    let v = spec.vertices;
    let Some(e) = spec.internal_edges() else { return Vec::new() };
    if 2 * e < 3 * v {
        return Vec::new();
    }
    // With all other valences at least 3, one vertex has at most 2e - 3(v-1).
    let mut dmax = (v - 1).min(2 * e - 3 * (v - 1));
    match spec.family {
        Family::Merkulov34 => dmax = dmax.min(4),
        Family::Merkulov56 => dmax = dmax.min(6),
        _ => {}
    }
    let conv = spec.convention();
    connected_simple(v, e, 3, dmax)
        .into_par_iter()
        .filter(|g| in_valence_window(spec.family, g) && ordinary_admissible(g) && !is_zero_graph(g, &conv))
        .collect()
}

/// Contractions of the internal edges of a plain or hairy graph. Edges
/// whose endpoints share a neighbour would produce a double edge and are
/// skipped.
///
/// Signs: for the edge ordering the contracted edge is removed with a left
/// derivative. For the vertex/half-edge ordering the half-edges `(b,a)`,
/// `(a,b)` and then the vertices `b`, `a` are removed, and the merged
/// vertex is put in front.
pub(crate) fn contraction_terms(g: &ColoredGraph, conv: &OrientationConvention) -> Vec<Term> {
    let internal = conv.species.mask(g, ColorRole::Internal);
    let reference = conv.reference_word(g);
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        if internal >> a & 1 == 0 || internal >> b & 1 == 0 {
            continue;
        }
        if g.neighbors_mask(a) & g.neighbors_mask(b) != 0 {
            continue;
        }
        let (h, map) = g.merge_vertices(a, b);
        let mut word = reference.clone();
        let mut sign = 1;
        match conv.kind {
            OrientationKind::EdgeOrder => sign *= take(&mut word, Obj::edge(a, b)),
            OrientationKind::VertexHalfEdgeOrder => {
                for o in [Obj::half(b, a), Obj::half(a, b), Obj::vertex(b), Obj::vertex(a)] {
                    sign *= take(&mut word, o);
                }
            }
            k => panic!("contraction is not defined for {k:?}"),
        }
        let mut word: Vec<Obj> = word.into_iter().map(|o| o.map(|x| map[x])).collect();
        if conv.kind == OrientationKind::VertexHalfEdgeOrder {
            word.insert(0, Obj::vertex(a));
        }
        sign *= word_parity(&word, &conv.reference_word(&h));
        out.push(Term { graph: h, sign });
    }
    out
}

/// `|γ| = n(v - 1) - (n - 1)e`, as the pair `(coefficient of n, constant)`.
pub fn ordinary_degree(v: usize, e: usize) -> (i64, i64) {
    (v as i64 - 1 - e as i64, e as i64)
}
