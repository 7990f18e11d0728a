use super::{bits, ColoredGraph};

/// Connectivity summary of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub connected: bool,
    /// Removing any single vertex leaves the graph connected.
    pub one_vertex_irreducible: bool,
    pub bridgeless: bool,
    /// Bridges among the considered edges, as `(u, v)` with `u < v`.
    pub bridges: Vec<(usize, usize)>,
}

/// Connectivity predicates. Only edges with both endpoints in `internal`
/// (a vertex mask) are candidates for bridges, which is how external legs
/// are excluded.
pub fn structural_predicates(g: &ColoredGraph, internal: u64) -> Structure {
    let n = g.vertex_count();
    let all = full_mask(n);
    let connected = is_connected(g, all);
    let one_vi = connected && (0..n).all(|x| n <= 1 || is_connected(g, all & !(1 << x)));
    let mut bridges = Vec::new();
    if connected {
        for (u, v) in g.edges() {
            if internal >> u & 1 == 1 && internal >> v & 1 == 1 {
                let mut h = g.clone();
                h.remove_edge(u, v);
                if !is_connected(&h, all) {
                    bridges.push((u, v));
                }
            }
        }
    }
    Structure { connected, one_vertex_irreducible: one_vi, bridgeless: bridges.is_empty(), bridges }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Whether the subgraph induced on `mask` is connected (empty counts as
/// connected).
pub(crate) fn is_connected(g: &ColoredGraph, mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for v in bits(frontier) {
            next |= g.neighbors_mask(v) & mask;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == mask
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_is_everything() {
        let k4 = ColoredGraph::uncolored(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let s = structural_predicates(&k4, 0xf);
        assert!(s.connected && s.one_vertex_irreducible && s.bridgeless);
    }

    #[test]
    fn bowtie_has_cut_vertex() {
        let g = ColoredGraph::uncolored(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        let s = structural_predicates(&g, 0x1f);
        assert!(s.connected && !s.one_vertex_irreducible && s.bridgeless);
    }

    #[test]
    fn joined_triangles_have_a_bridge() {
        let g = ColoredGraph::uncolored(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]);
        let s = structural_predicates(&g, 0x3f);
        assert!(s.connected && !s.one_vertex_irreducible);
        assert_eq!(s.bridges, vec![(2, 3)]);
        // brute force: exactly the edges whose removal disconnects
        for (u, v) in g.edges() {
            let mut h = g.clone();
            h.remove_edge(u, v);
            assert_eq!(!is_connected(&h, 0x3f), s.bridges.contains(&(u, v)));
        }
    }

    #[test]
    fn legs_are_not_bridges() {
        let g = ColoredGraph::uncolored(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert!(structural_predicates(&g, 0x7).bridgeless);
        assert!(!structural_predicates(&g, 0xf).bridgeless);
    }
}
