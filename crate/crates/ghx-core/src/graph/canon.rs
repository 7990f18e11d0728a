//! Canonical labeling by individualization and refinement.
//!
//! The search tree is the classical one: refine the vertex partition to an
//! equitable one, pick the first smallest non-singleton cell, individualize
//! each of its vertices in turn and recurse. Every leaf is a discrete
//! partition, i.e. a labeling; its certificate is the relabeled color list
//! followed by the relabeled adjacency rows. The lexicographically smallest
//! certificate wins.
//!
//! Leaves with the same certificate as the first leaf (or the current best)
//! yield automorphisms, which prune sibling subtrees lying in the same orbit
//! of the pointwise stabilizer of the current path.

use super::{bits, ColoredGraph, Permutation};

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Canonical {
    /// The canonical representative, `relabel · g`.
    pub graph: ColoredGraph,
    /// Maps each vertex of the input to its canonical label.
    pub relabel: Permutation,
    /// Automorphisms of the input found during the search; they generate
    /// the full color-preserving automorphism group.
    pub automorphisms: Vec<Permutation>,
}

/// Canonical form of `g` together with the relabeling that produces it.
pub fn canonicalize(g: &ColoredGraph) -> (ColoredGraph, Permutation) {
    let c = canonical_full(g);
    (c.graph, c.relabel)
}

/// Generators of the color-preserving automorphism group of `g`.
pub fn automorphism_generators(g: &ColoredGraph) -> Vec<Permutation> {
    canonical_full(g).automorphisms
}

/// Runs the search and returns canonical form, relabeling and automorphisms.
pub fn canonical_full(g: &ColoredGraph) -> Canonical {
    let n = g.vertex_count();
    let mut initial: Vec<u32> = g.colors().iter().map(|&c| c as u32).collect();
    refine(g, &mut initial);
    let mut s = Search { g, n, first: None, best: None, autos: Vec::new() };
    let mut path = Vec::new();
    s.dfs(initial, &mut path);
    let (_, best_col) = s.best.expect("search visits at least one leaf");
    let relabel = Permutation::from_images(best_col.iter().map(|&c| c as usize).collect())
        .expect("discrete partition is a bijection");
    let graph = g.relabel(&relabel);
    let mut autos = s.autos;
    autos.sort();
    autos.dedup();
    let _ = n;
    Canonical { graph, relabel, automorphisms: autos }
}

struct Search<'a> {
    g: &'a ColoredGraph,
    n: usize,
    /// (certificate, labeling position -> vertex, path)
    first: Option<(Vec<u64>, Vec<usize>, Vec<usize>)>,
    /// (certificate, vertex -> position)
    best: Option<(Vec<u64>, Vec<u32>)>,
    autos: Vec<Permutation>,
}

impl Search<'_> {
    /// Returns `Some(level)` when the whole subtree down to `level` is known
    /// to be equivalent to the first path and can be abandoned.
    fn dfs(&mut self, col: Vec<u32>, path: &mut Vec<usize>) -> Option<usize> {
        let n = self.n;
        let cells = cell_sizes(&col, n);
        if cells.iter().all(|&s| s <= 1) {
            return self.leaf(col, path);
        }
        // First smallest non-singleton cell.
        let mut target = usize::MAX;
        let mut tsize = usize::MAX;
        for (c, &s) in cells.iter().enumerate() {
            if s >= 2 && s < tsize {
                tsize = s;
                target = c;
            }
        }
        let members: Vec<usize> = (0..n).filter(|&v| col[v] as usize == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &members {
            if !explored.is_empty() && self.same_orbit_as_explored(w, &explored, path) {
                continue;
            }
            let mut child: Vec<u32> =
                col.iter().enumerate().map(|(u, &c)| 2 * c + u32::from(c as usize == target && u != w)).collect();
            refine(self.g, &mut child);
            path.push(w);
            let res = self.dfs(child, path);
            path.pop();
            explored.push(w);
            if let Some(level) = res {
                if level < path.len() {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, col: Vec<u32>, path: &[usize]) -> Option<usize> {
        let n = self.n;
        let mut lab = vec![0usize; n];
        for v in 0..n {
            lab[col[v] as usize] = v;
        }
        let mut cert = Vec::with_capacity(2 * n);
        for &v in &lab {
            cert.push(self.g.color(v) as u64);
        }
        for &v in &lab {
            let mut row = 0u64;
            for w in bits(self.g.neighbors_mask(v)) {
                row |= 1 << col[w];
            }
            cert.push(row);
        }
        let Some((first_cert, first_lab, first_path)) = &self.first else {
            self.first = Some((cert.clone(), lab, path.to_vec()));
            self.best = Some((cert, col));
            return None;
        };
        if &cert == first_cert {
            let mut img = vec![0usize; n];
            for i in 0..n {
                img[first_lab[i]] = lab[i];
            }
            let sigma = Permutation::from_images(img).expect("bijection");
            if !sigma.is_identity() {
                self.autos.push(sigma);
            }
            let level = path.iter().zip(first_path).position(|(a, b)| a != b).unwrap_or(path.len());
            return Some(level);
        }
        let (best_cert, best_col) = self.best.as_ref().expect("set with first");
        match cert.cmp(best_cert) {
            std::cmp::Ordering::Less => self.best = Some((cert, col)),
            std::cmp::Ordering::Equal => {
                // sigma maps the best labeling onto this one
                let mut img = vec![0usize; n];
                for v in 0..n {
                    img[v] = lab[best_col[v] as usize];
                }
                let sigma = Permutation::from_images(img).expect("bijection");
                if !sigma.is_identity() {
                    self.autos.push(sigma);
                }
            }
            std::cmp::Ordering::Greater => {}
        }
        None
    }

    /// Orbit test under the automorphisms found so far that fix `path`
    /// pointwise.
    fn same_orbit_as_explored(&self, w: usize, explored: &[usize], path: &[usize]) -> bool {
        let stab: Vec<&Permutation> = self.autos.iter().filter(|a| path.iter().all(|&p| a.apply(p) == p)).collect();
        if stab.is_empty() {
            return false;
        }
        let mut uf: Vec<usize> = (0..self.n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for a in stab {
            for v in 0..self.n {
                let (x, y) = (find(&mut uf, v), find(&mut uf, a.apply(v)));
                if x != y {
                    uf[x] = y;
                }
            }
        }
        let rw = find(&mut uf, w);
        explored.iter().any(|&e| find(&mut uf, e) == rw)
    }
}

fn cell_sizes(col: &[u32], n: usize) -> Vec<usize> {
    let mut sizes = vec![0usize; n];
    for &c in col {
        sizes[c as usize] += 1;
    }
    sizes
}

/// Refines the coloring `col` to the coarsest equitable partition below it.
/// Colors are renumbered to `0..k` in an order that depends only on the
/// previous colors and neighbour counts, so the procedure commutes with
/// relabeling.
fn refine(g: &ColoredGraph, col: &mut [u32]) {
    let n = col.len();
    if n == 0 {
        return;
    }
    normalize(col);
    let mut k = col.iter().max().map_or(0, |&m| m as usize + 1);
    loop {
        let mut masks = vec![0u64; k];
        for (v, &c) in col.iter().enumerate() {
            masks[c as usize] |= 1 << v;
        }
        let mut sigs: Vec<(Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let nb = g.neighbors_mask(v);
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(col[v]);
                sig.extend(masks.iter().map(|m| (nb & m).count_ones()));
                (sig, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = 0u32;
        for i in 0..n {
            if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                next += 1;
            }
            col[sigs[i].1] = next;
        }
        let nk = next as usize + 1;
        if nk == k {
            return;
        }
        k = nk;
    }
}

/// Renumbers colors to `0..k` preserving their order.
fn normalize(col: &mut [u32]) {
    let mut vals: Vec<u32> = col.to_vec();
    vals.sort_unstable();
    vals.dedup();
    for c in col.iter_mut() {
        *c = vals.binary_search(c).unwrap() as u32;
    }
}
