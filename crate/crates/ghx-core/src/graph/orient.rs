//! Orientation data and the signs of graph isomorphisms.
//!
//! Every convention names a set of odd "orientation objects" (edges,
//! vertices, half-edges, ...) derived from a labeled graph, together with a
//! reference ordering of that set computed from the labels. The sign of an
//! isomorphism `σ: g → σ·g` is the parity of the bijection it induces between
//! the reference orderings of `g` and of `σ·g`. Operations that rewrite an
//! orientation (contraction, unmarking) produce a word of objects and compare
//! it with the reference word of the result via [`word_parity`].

use super::{bits, ColoredGraph, GraphError, Permutation};
use crate::graph::perm::parity_of_images;

/// How vertex colors are interpreted for a graph species.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Species {
    /// Every vertex is internal.
    Plain,
    /// Color 0 is internal; every other color marks a hair (univalent) vertex.
    Hairy,
    /// Color 0 internal, 1 a subdivision vertex standing for an unmarked
    /// edge, 2 a pendant standing for a tadpole, 3 and above hairs.
    Forested,
}

/// Role of a vertex in the encoding of a species.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorRole {
    Internal,
    Hair,
    Subdivision,
    Tadpole,
}

impl Species {
    pub fn role(self, color: u8) -> ColorRole {
        match (self, color) {
            (Species::Plain, _) => ColorRole::Internal,
            (_, 0) => ColorRole::Internal,
            (Species::Hairy, _) => ColorRole::Hair,
            (Species::Forested, 1) => ColorRole::Subdivision,
            (Species::Forested, 2) => ColorRole::Tadpole,
            (Species::Forested, _) => ColorRole::Hair,
        }
    }

    /// Vertex mask of all vertices having the given role.
    pub fn mask(self, g: &ColoredGraph, role: ColorRole) -> u64 {
        let mut m = 0u64;
        for v in 0..g.vertex_count() {
            if self.role(g.color(v)) == role {
                m |= 1 << v;
            }
        }
        m
    }
}

/// Base orientation kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrientationKind {
    /// Ordering of the edges (even n).
    EdgeOrder,
    /// Ordering of internal vertices and half-edges (odd n).
    VertexHalfEdgeOrder,
    /// Ordering of the marked edges (forested, n = 0).
    ForestedEven,
    /// Ordering of internal vertices, half-edges and unmarked edges
    /// (forested, n = 1).
    ForestedOdd,
}

/// A full orientation convention: base kind, species encoding and the
/// optional hair-ordering supplement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrientationConvention {
    pub kind: OrientationKind,
    pub species: Species,
    pub hair_order: bool,
}

impl OrientationConvention {
    pub fn new(kind: OrientationKind, species: Species) -> Self {
        OrientationConvention { kind, species, hair_order: false }
    }

    pub fn with_hair_order(mut self, on: bool) -> Self {
        self.hair_order = on;
        self
    }

    /// Reference word of orientation objects for a labeled graph.
    pub fn reference_word(&self, g: &ColoredGraph) -> Vec<Obj> {
        let sp = self.species;
        let internal = sp.mask(g, ColorRole::Internal);
        let is_int = |v: usize| internal >> v & 1 == 1;
        let mut out = Vec::new();
        match self.kind {
            OrientationKind::EdgeOrder => {
                out.extend(g.edges().into_iter().map(|(u, v)| Obj::edge(u, v)));
            }
            OrientationKind::VertexHalfEdgeOrder => {
                out.extend(bits(internal).map(Obj::vertex));
                for (u, v) in g.edges() {
                    out.push(Obj::half(u, v));
                    out.push(Obj::half(v, u));
                }
            }
            OrientationKind::ForestedEven => {
                out.extend(
                    g.edges().into_iter().filter(|&(u, v)| is_int(u) && is_int(v)).map(|(u, v)| Obj::edge(u, v)),
                );
            }
            OrientationKind::ForestedOdd => {
                let sub = sp.mask(g, ColorRole::Subdivision);
                out.extend(bits(internal).map(Obj::vertex));
                for (u, v) in g.edges() {
                    if is_int(u) && is_int(v) {
                        out.push(Obj::half(u, v));
                        out.push(Obj::half(v, u));
                    }
                }
                for w in bits(sub) {
                    for a in g.neighbors(w) {
                        out.push(Obj::half(a, w));
                    }
                }
                out.extend(bits(sub).map(Obj::vertex));
            }
        }
        if self.hair_order {
            out.extend(bits(sp.mask(g, ColorRole::Hair)).map(Obj::vertex));
        }
        out
    }
}

/// One orientation object, named by vertex labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Obj {
    /// A vertex (internal vertex, unmarked-edge symbol or hair).
    V(u8),
    /// An edge, endpoints stored in increasing order.
    E(u8, u8),
    /// The half-edge at the first vertex of the edge towards the second.
    H(u8, u8),
}

impl Obj {
    pub fn vertex(v: usize) -> Obj {
        Obj::V(v as u8)
    }
    pub fn edge(u: usize, v: usize) -> Obj {
        Obj::E(u.min(v) as u8, u.max(v) as u8)
    }
    pub fn half(at: usize, to: usize) -> Obj {
        Obj::H(at as u8, to as u8)
    }

    /// Renames every vertex label through `f`.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Obj {
        match self {
            Obj::V(v) => Obj::vertex(f(v as usize)),
            Obj::E(u, v) => Obj::edge(f(u as usize), f(v as usize)),
            Obj::H(a, b) => Obj::half(f(a as usize), f(b as usize)),
        }
    }
}

/// Parity of the permutation taking `reference` to `word`. Both must list
/// the same objects; a mismatch is a bookkeeping bug and panics.
pub fn word_parity(word: &[Obj], reference: &[Obj]) -> i8 {
    assert_eq!(word.len(), reference.len(), "orientation words of different length");
    let mut idx: Vec<(Obj, usize)> = reference.iter().copied().zip(0..).collect();
    idx.sort_unstable();
    let mut seen = vec![false; word.len()];
    let images: Vec<usize> = word
        .iter()
        .map(|o| {
            let k = idx.binary_search_by(|(x, _)| x.cmp(o)).unwrap_or_else(|_| panic!("object {o:?} missing"));
            let i = idx[k].1;
            assert!(!seen[i], "object {o:?} repeated");
            seen[i] = true;
            i
        })
        .collect();
    parity_of_images(&images)
}

/// Sign of the isomorphism `sigma: g → sigma·g` under `conv`.
pub fn orientation_sign(g: &ColoredGraph, sigma: &Permutation, conv: &OrientationConvention) -> Result<i8, GraphError> {
    if sigma.len() != g.vertex_count() {
        return Err(GraphError::PermutationSize { got: sigma.len(), expected: g.vertex_count() });
    }
    Ok(transport_sign(g, sigma, &g.relabel(sigma), conv))
}

/// Sign of `sigma` viewed as an isomorphism from `g` onto `h`; errors if it
/// is not one.
pub fn isomorphism_sign(
    g: &ColoredGraph,
    sigma: &Permutation,
    h: &ColoredGraph,
    conv: &OrientationConvention,
) -> Result<i8, GraphError> {
    if sigma.len() != g.vertex_count() {
        return Err(GraphError::PermutationSize { got: sigma.len(), expected: g.vertex_count() });
    }
    if &g.relabel(sigma) != h {
        return Err(GraphError::NotIsomorphism);
    }
    Ok(transport_sign(g, sigma, h, conv))
}

/// Sign of `sigma: g → h` without checking that `h = sigma·g`; callers
/// guarantee it (for instance `h` is the canonical form and `sigma` the
/// canonical relabeling).
pub fn transport_sign(g: &ColoredGraph, sigma: &Permutation, h: &ColoredGraph, conv: &OrientationConvention) -> i8 {
    let word: Vec<Obj> = conv.reference_word(g).into_iter().map(|o| o.map(|v| sigma.apply(v))).collect();
    word_parity(&word, &conv.reference_word(h))
}

/// Whether `g` is zero in its complex: some automorphism reverses the
/// orientation. Forested graphs with a tadpole are zero for the odd
/// convention, since flipping the tadpole swaps its two half-edges.
pub fn is_zero_graph(g: &ColoredGraph, conv: &OrientationConvention) -> bool {
    if conv.kind == OrientationKind::ForestedOdd && conv.species.mask(g, ColorRole::Tadpole) != 0 {
        return true;
    }
    let gens = super::automorphism_generators(g);
    zero_from_generators(g, &gens, conv)
}

/// [`is_zero_graph`] with the automorphism generators already known.
pub fn zero_from_generators(g: &ColoredGraph, gens: &[Permutation], conv: &OrientationConvention) -> bool {
    if conv.kind == OrientationKind::ForestedOdd && conv.species.mask(g, ColorRole::Tadpole) != 0 {
        return true;
    }
    let reference = conv.reference_word(g);
    gens.iter().any(|s| {
        let word: Vec<Obj> = reference.iter().map(|o| o.map(|v| s.apply(v))).collect();
        word_parity(&word, &reference) < 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> ColoredGraph {
        ColoredGraph::uncolored(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    const EVEN: OrientationConvention =
        OrientationConvention { kind: OrientationKind::EdgeOrder, species: Species::Plain, hair_order: false };
    const ODD: OrientationConvention = OrientationConvention {
        kind: OrientationKind::VertexHalfEdgeOrder,
        species: Species::Plain,
        hair_order: false,
    };

    #[test]
    fn identity_is_positive() {
        let id = Permutation::identity(4);
        for c in [EVEN, ODD] {
            assert_eq!(orientation_sign(&k4(), &id, &c).unwrap(), 1);
        }
    }

    #[test]
    fn k4_three_cycle_matches_edge_permutation() {
        let s = Permutation::from_images(vec![1, 2, 0, 3]).unwrap();
        let edges = k4().edges();
        let images: Vec<usize> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (s.apply(u), s.apply(v));
                edges.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap()
            })
            .collect();
        let expected = Permutation::from_images(images).unwrap().sign();
        assert_eq!(orientation_sign(&k4(), &s, &EVEN).unwrap(), expected);
    }

    #[test]
    fn k4_survives_both_parities() {
        assert!(!is_zero_graph(&k4(), &EVEN));
        assert!(!is_zero_graph(&k4(), &ODD));
    }

    #[test]
    fn parallel_unmarked_strands_are_odd() {
        // u=0, v=1 internal; two subdivision vertices 2, 3 between them.
        let g = ColoredGraph::from_edges(vec![0, 0, 1, 1], &[(0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        let swap = Permutation::from_images(vec![0, 1, 3, 2]).unwrap();
        let odd = OrientationConvention::new(OrientationKind::ForestedOdd, Species::Forested);
        assert_eq!(orientation_sign(&g, &swap, &odd).unwrap(), -1);
        let even = OrientationConvention::new(OrientationKind::ForestedEven, Species::Forested);
        assert_eq!(orientation_sign(&g, &swap, &even).unwrap(), 1);
    }

    #[test]
    fn sign_is_multiplicative() {
        let g = ColoredGraph::uncolored(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let ps = Permutation::all(5);
        for c in [EVEN, ODD] {
            for s in ps.iter().step_by(7) {
                for t in ps.iter().step_by(11) {
                    let st = s.compose(t);
                    let lhs = orientation_sign(&g, &st, &c).unwrap();
                    let rhs = orientation_sign(&g, t, &c).unwrap() * orientation_sign(&g.relabel(t), s, &c).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn wrong_isomorphism_rejected() {
        let p = ColoredGraph::uncolored(3, &[(0, 1), (1, 2)]);
        let s = Permutation::from_images(vec![1, 0, 2]).unwrap();
        assert_eq!(isomorphism_sign(&p, &s, &p, &EVEN), Err(GraphError::NotIsomorphism));
        assert!(orientation_sign(&p, &Permutation::identity(2), &EVEN).is_err());
    }
}
