//! Colored simple graphs and the combinatorics every complex is built on.
//!
//! A [`ColoredGraph`] stores its adjacency as one 64-bit mask per vertex, so
//! graphs are limited to [`MAX_VERTICES`] vertices. That is far beyond what
//! any slice computed at desk scale needs, and it keeps canonical labeling
//! and neighbourhood queries cheap.

mod canon;
mod g6;
pub mod generate;
mod orient;
mod perm;
mod predicates;

pub use canon::{automorphism_generators, canonical_full, canonicalize, Canonical};
pub use g6::{decode_g6, decode_line, encode_g6, encode_line};
pub use orient::{
    is_zero_graph, isomorphism_sign, orientation_sign, transport_sign, word_parity, zero_from_generators, ColorRole,
    Obj, OrientationConvention, OrientationKind, Species,
};
pub use perm::Permutation;
pub use predicates::{structural_predicates, Structure};

use thiserror::Error;

/// Largest vertex count a [`ColoredGraph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// Errors raised by graph construction, decoding and sign evaluation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("edge ({0}, {1}) is a self-loop or out of range")]
    BadEdge(usize, usize),
    #[error("edge ({0}, {1}) is not present in the graph")]
    MissingEdge(usize, usize),
    #[error("color list has length {got}, expected {expected}")]
    ColorLength { got: usize, expected: usize },
    #[error("malformed graph6 text: {0}")]
    MalformedG6(String),
    #[error("permutation is not an isomorphism of the given structure")]
    NotIsomorphism,
    #[error("permutation size {got} does not match vertex count {expected}")]
    PermutationSize { got: usize, expected: usize },
}

/// Undirected simple graph with one small-integer color per vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ColoredGraph {
    colors: Vec<u8>,
    adj: Vec<u64>,
}

impl ColoredGraph {
    /// Graph without edges, all vertices colored 0.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} too large");
        ColoredGraph { colors: vec![0; n], adj: vec![0; n] }
    }

    /// Builds a graph from a color list and an edge list, validating both.
    pub fn from_edges(colors: Vec<u8>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = colors.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut g = ColoredGraph { colors, adj: vec![0; n] };
        for &(u, v) in edges {
            if u == v || u >= n || v >= n || g.has_edge(u, v) {
                return Err(GraphError::BadEdge(u, v));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Uncolored convenience constructor; panics on invalid input.
    pub fn uncolored(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::from_edges(vec![0; n], edges).expect("valid edge list")
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u8 {
        self.colors[v]
    }

    pub fn set_color(&mut self, v: usize, c: u8) {
        self.colors[v] = c;
    }

    /// Neighbourhood bit mask of `v`.
    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Inserts the edge `{u, v}`; callers must keep the graph simple.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    /// Appends an isolated vertex of color `c` and returns its label.
    pub fn add_vertex(&mut self, c: u8) -> usize {
        assert!(self.colors.len() < MAX_VERTICES);
        self.colors.push(c);
        self.adj.push(0);
        self.colors.len() - 1
    }

    /// Deletes vertex `x`; labels above `x` shift down by one.
    pub fn remove_vertex(&mut self, x: usize) {
        let low = (1u64 << x) - 1;
        let fix = |m: u64| (m & low) | ((m >> 1) & !low);
        self.colors.remove(x);
        self.adj.remove(x);
        for m in &mut self.adj {
            *m = fix(*m);
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            for v in bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// First Betti number `e - v + 1` (meaningful for connected graphs).
    pub fn loop_order(&self) -> i64 {
        self.edge_count() as i64 - self.vertex_count() as i64 + 1
    }

    /// The graph `p · self`: vertex `i` becomes vertex `p(i)`.
    pub fn relabel(&self, p: &Permutation) -> ColoredGraph {
        let n = self.vertex_count();
        assert_eq!(p.len(), n);
        let mut colors = vec![0; n];
        let mut adj = vec![0u64; n];
        for v in 0..n {
            let pv = p.apply(v);
            colors[pv] = self.colors[v];
            let mut m = 0u64;
            for w in bits(self.adj[v]) {
                m |= 1 << p.apply(w);
            }
            adj[pv] = m;
        }
        ColoredGraph { colors, adj }
    }

    /// Contracts the edge `{a, b}`. The merged vertex takes the smaller label
    /// and labels above the larger endpoint shift down. Returns `None` when
    /// the result would carry a double edge.
    pub fn contract_edge(&self, a: usize, b: usize) -> Result<Option<(ColoredGraph, Vec<usize>)>, GraphError> {
        if a >= self.vertex_count() || b >= self.vertex_count() || !self.has_edge(a, b) {
            return Err(GraphError::MissingEdge(a, b));
        }
        let (a, b) = (a.min(b), a.max(b));
        let common = self.adj[a] & self.adj[b];
        if common != 0 {
            return Ok(None);
        }
        Ok(Some(self.merge_vertices(a, b)))
    }

    /// Merges `b` into `a` (`a < b`) without any simplicity check on the
    /// resulting neighbourhoods (shared neighbours simply collapse). Returns
    /// the new graph and the old-to-new vertex map.
    pub fn merge_vertices(&self, a: usize, b: usize) -> (ColoredGraph, Vec<usize>) {
        debug_assert!(a < b);
        let mut g = self.clone();
        let nb = g.adj[b] & !(1 << a);
        g.remove_edge(a, b);
        for w in bits(nb) {
            g.remove_edge(b, w);
            g.add_edge(a, w);
        }
        g.remove_vertex(b);
        let map = (0..self.vertex_count())
            .map(|x| match x.cmp(&b) {
                std::cmp::Ordering::Less => x,
                std::cmp::Ordering::Equal => a,
                std::cmp::Ordering::Greater => x - 1,
            })
            .collect();
        (g, map)
    }
}

/// Iterates the set bit positions of a mask in increasing order.
pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}
