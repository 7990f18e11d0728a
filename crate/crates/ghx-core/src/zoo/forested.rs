//! Forested graphs: multigraphs with a marked subforest and numbered hairs,
//! bigraded by the number of marked edges and the excess.
//!
//! Encoding as a colored simple graph: internal vertices have color 0, a
//! marked edge is a direct edge between internal vertices, an unmarked edge
//! is a color-1 vertex adjacent to both ends, a tadpole (unmarked loop) is a
//! color-2 pendant and hair `i` is a color `3 + i` pendant. At most one of
//! several parallel strands is marked (two marked parallels would close a
//! cycle), so the encoding is always simple.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::engine::{Engine, EngineError, HomologyEntry, OpKind, Operator, SliceSpec, Term};
use crate::graph::generate::{connected_multigraphs, Multigraph};
use crate::graph::{
    canonical_full, word_parity, zero_from_generators, ColorRole, ColoredGraph, Obj, OrientationConvention,
    OrientationKind, Species,
};
use crate::linalg::{Exactness, Field, RankResult};

use super::take;

const SUBDIVISION: u8 = 1;
const TADPOLE: u8 = 2;
const FIRST_HAIR: u8 = 3;

fn convention(n_odd: bool) -> OrientationConvention {
    let kind = if n_odd { OrientationKind::ForestedOdd } else { OrientationKind::ForestedEven };
    OrientationConvention::new(kind, Species::Forested)
}

/// Underlying multigraph (marked and unmarked strands together) and the
/// list of marked pairs.
fn underlying(g: &ColoredGraph) -> (Multigraph, Vec<(usize, usize)>) {
    let internal: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.color(v) == 0).collect();
    let pos = |v: usize| internal.iter().position(|&x| x == v);
    let mut m = Multigraph::new(internal.len());
    let mut marked = Vec::new();
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (pos(u), pos(v)) {
            m.add_edges(a, b, 1);
            marked.push((a, b));
        }
    }
    for w in 0..g.vertex_count() {
        let nb: Vec<usize> = g.neighbors(w).filter_map(pos).collect();
        match g.color(w) {
            SUBDIVISION if nb.len() == 2 => m.add_edges(nb[0], nb[1], 1),
            TADPOLE if nb.len() == 1 => m.add_edges(nb[0], nb[0], 1),
            _ => {}
        }
    }
    (m, marked)
}

/// Checks an encoded forested graph: valid encoding, connected, internal
/// valences at least 3 (hairs and tadpoles counted), marked edges forming a
/// forest and, when requested, no bridge.
pub fn forested_admissible(g: &ColoredGraph, bridgeless: bool) -> bool {
    let internal = Species::Forested.mask(g, ColorRole::Internal);
    if internal == 0 {
        return false;
    }
    for w in 0..g.vertex_count() {
        let c = g.color(w);
        let to_internal = (g.neighbors_mask(w) & internal).count_ones();
        let ok = match c {
            0 => true,
            SUBDIVISION => g.degree(w) == 2 && to_internal == 2,
            _ => g.degree(w) == 1 && to_internal == 1,
        };
        if !ok {
            return false;
        }
    }
    let (m, marked) = underlying(g);
    if !m.connected() || (0..m.vertex_count()).any(|v| valence(&m, g, v) < 3) {
        return false;
    }
    let mut uf: Vec<usize> = (0..m.vertex_count()).collect();
    for &(a, b) in &marked {
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra == rb {
            return false;
        }
        uf[ra] = rb;
    }
    !(bridgeless && m.has_bridge())
}

fn valence(m: &Multigraph, g: &ColoredGraph, v: usize) -> usize {
    let internal: Vec<usize> = (0..g.vertex_count()).filter(|&x| g.color(x) == 0).collect();
    let hairs = g.neighbors(internal[v]).filter(|&w| g.color(w) >= FIRST_HAIR).count();
    m.degree(v) + hairs
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    uf[x] = r;
    r
}

pub(crate) fn enumerate(spec: &SliceSpec) -> Vec<ColoredGraph> {
    let (n, r, m) = (spec.vertices, spec.hairs, spec.marked);
    let Some(e) = spec.internal_edges() else { return Vec::new() };
    let dmin = 3usize.saturating_sub(r);
    let dmax = 3 + spec.excess;
    let conv = spec.convention();
    let found: HashSet<ColoredGraph> = connected_multigraphs(n, e, dmin, dmax, !spec.n_odd)
        .par_iter()
        .filter(|mg| !(spec.bridgeless && mg.has_bridge()))
        .flat_map_iter(|mg| {
            let mut out = Vec::new();
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| mg.mult[u][v] > 0).collect();
            let forests = marked_forests(n, &pairs, m);
            for hairs in hair_maps(mg, r) {
                for forest in &forests {
                    let x = encode(mg, forest, &hairs);
                    let c = canonical_full(&x);
                    if !zero_from_generators(&x, &c.automorphisms, &conv) {
                        out.push(c.graph);
                    }
                }
            }
            out
        })
        .collect();
    let mut out: Vec<ColoredGraph> = found.into_iter().collect();
    out.sort();
    out
}

/// Maps `hair -> internal vertex` leaving every valence at least 3.
fn hair_maps(mg: &Multigraph, r: usize) -> Vec<Vec<usize>> {
    let n = mg.vertex_count();
    let mut out = Vec::new();
    let mut p = vec![0usize; r];
    loop {
        let mut count = vec![0usize; n];
        for &x in &p {
            count[x] += 1;
        }
        if (0..n).all(|x| mg.degree(x) + count[x] >= 3) {
            out.push(p.clone());
        }
        let mut i = 0;
        while i < r && p[i] == n - 1 {
            p[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
        p[i] += 1;
    }
    out
}

/// All `m`-subsets of the vertex pairs that form a forest.
fn marked_forests(n: usize, pairs: &[(usize, usize)], m: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(
        n: usize,
        pairs: &[(usize, usize)],
        m: usize,
        start: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..pairs.len() {
            let (a, b) = pairs[i];
            let mut uf: Vec<usize> = (0..n).collect();
            for &(x, y) in cur.iter() {
                let (rx, ry) = (find(&mut uf, x), find(&mut uf, y));
                uf[rx] = ry;
            }
            if find(&mut uf, a) != find(&mut uf, b) {
                cur.push((a, b));
                go(n, pairs, m, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, pairs, m, 0, &mut Vec::new(), &mut out);
    out
}

fn encode(mg: &Multigraph, marked: &[(usize, usize)], hairs: &[usize]) -> ColoredGraph {
    let n = mg.vertex_count();
    let mut g = ColoredGraph::empty(n);
    for u in 0..n {
        for _ in 0..mg.mult[u][u] {
            let t = g.add_vertex(TADPOLE);
            g.add_edge(u, t);
        }
        for v in u + 1..n {
            let mut k = mg.mult[u][v];
            if marked.contains(&(u, v)) {
                g.add_edge(u, v);
                k -= 1;
            }
            for _ in 0..k {
                let w = g.add_vertex(SUBDIVISION);
                g.add_edge(u, w);
                g.add_edge(v, w);
            }
        }
    }
    for (i, &x) in hairs.iter().enumerate() {
        let h = g.add_vertex(FIRST_HAIR + i as u8);
        g.add_edge(x, h);
    }
    g
}

fn marked_edges(g: &ColoredGraph) -> Vec<(usize, usize)> {
    g.edges().into_iter().filter(|&(u, v)| g.color(u) == 0 && g.color(v) == 0).collect()
}

/// Contraction of each marked edge. Unmarked strands parallel to it become
/// tadpoles, which kill the term for odd `n`. Signs follow the plain
/// contraction rule applied to the forested word.
pub(crate) fn contract_marked_terms(g: &ColoredGraph, n_odd: bool) -> Vec<Term> {
    let conv = convention(n_odd);
    let reference = conv.reference_word(g);
    let mut out = Vec::new();
    for (a, b) in marked_edges(g) {
        let (mut h, map) = g.merge_vertices(a, b);
        let mut tadpole = false;
        for w in 0..h.vertex_count() {
            if h.color(w) == SUBDIVISION && h.degree(w) == 1 {
                h.set_color(w, TADPOLE);
                tadpole = true;
            }
        }
        if tadpole && n_odd {
            continue;
        }
        let mut word = reference.clone();
        let mut sign = 1;
        if n_odd {
            for o in [Obj::half(b, a), Obj::half(a, b), Obj::vertex(b), Obj::vertex(a)] {
                sign *= take(&mut word, o);
            }
        } else {
            sign *= take(&mut word, Obj::edge(a, b));
        }
        let mut word: Vec<Obj> = word.into_iter().map(|o| o.map(|x| map[x])).collect();
        if n_odd {
            word.insert(0, Obj::vertex(a));
        }
        sign *= word_parity(&word, &conv.reference_word(&h));
        out.push(Term { graph: h, sign });
    }
    out
}

/// Unmarking of each marked edge: the direct edge is replaced by a new
/// subdivision vertex. For odd `n` its half-edges are renamed to the new
/// strand and the new unmarked-edge symbol goes in front.
pub(crate) fn unmark_terms(g: &ColoredGraph, n_odd: bool) -> Vec<Term> {
    let conv = convention(n_odd);
    let reference = conv.reference_word(g);
    let mut out = Vec::new();
    for (a, b) in marked_edges(g) {
        let mut h = g.clone();
        h.remove_edge(a, b);
        let w = h.add_vertex(SUBDIVISION);
        h.add_edge(a, w);
        h.add_edge(b, w);
        let mut word = reference.clone();
        let mut sign = 1;
        if n_odd {
            for o in word.iter_mut() {
                if *o == Obj::half(a, b) {
                    *o = Obj::half(a, w);
                } else if *o == Obj::half(b, a) {
                    *o = Obj::half(b, w);
                }
            }
            word.insert(0, Obj::vertex(w));
        } else {
            sign *= take(&mut word, Obj::edge(a, b));
        }
        sign *= word_parity(&word, &conv.reference_word(&h));
        out.push(Term { graph: h, sign });
    }
    out
}

fn ops(spec: SliceSpec) -> [Operator; 2] {
    [Operator::new(OpKind::Unmark, spec), Operator::new(OpKind::ContractMarked, spec)]
}

/// Rank of the marked contraction leaving the excess-0 slice with `m`
/// marked edges, from the dimensions of the higher-excess slices (valid
/// because the contraction is exact in positive excess).
pub fn contraction_rank_from_dims(
    engine: &Engine,
    n_odd: bool,
    g: usize,
    m: usize,
    r: usize,
) -> Result<i64, EngineError> {
    let mut total = 0i64;
    for e in 1..=m {
        let d = engine.dimension(&SliceSpec::forested(n_odd, g, m - e, r, e))? as i64;
        total += if e % 2 == 1 { d } else { -d };
    }
    Ok(total)
}

/// Homology of the total forested complex at `m` marked edges:
/// `dim V_m - rank d_m - rank d_{m+1} + rank dc_{m+1}` on excess 0, where
/// `d` stacks the unmarking and the marked contraction.
pub fn forested_entry(
    engine: &Engine,
    n_odd: bool,
    g: usize,
    m: usize,
    r: usize,
) -> Result<HomologyEntry, EngineError> {
    let here = SliceSpec::forested(n_odd, g, m, r, 0);
    let up = SliceSpec::forested(n_odd, g, m + 1, r, 0);
    let dim = engine.dimension(&here)?;
    let a = engine.rank(&ops(here))?;
    let b = engine.rank(&ops(up))?;
    let c = contraction_rank_from_dims(engine, n_odd, g, m + 1, r)?;
    let c = RankResult { rank: c.max(0) as usize, field: Field::Rational, exactness: Exactness::Exact };
    crate::engine::homology_corrected(dim, a, b, c)
}

/// Largest marked-edge count with a nonempty excess-0 slice.
pub fn max_marked(g: usize, r: usize) -> usize {
    (2 * g + r).saturating_sub(3)
}

/// Consistency checks over one `(n, g, r)` row of forested slices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForestedChecks {
    /// `dc² = 0`, `du² = 0` and `dc du + du dc = 0` on every slice.
    pub squares_vanish: bool,
    /// The marked contraction is exact in every positive excess.
    pub concentrated_in_excess_zero: bool,
    /// The rank of `dc` out of excess 0 matches the alternating dimension
    /// sum.
    pub contraction_rank_identity: bool,
    /// `Σ (-1)^m dim V_{m,e}` equals `Σ (-1)^m dim H_m`.
    pub euler_characteristic: bool,
}

/// Runs [`ForestedChecks`] for one row. Ranks are taken exactly when the
/// engine is set to work over Q; otherwise mod p.
pub fn forested_checks(engine: &Engine, n_odd: bool, g: usize, r: usize) -> Result<ForestedChecks, EngineError> {
    let top = max_marked(g, r) + 1;
    let max_excess = 2 * g + r;
    let mut c = ForestedChecks {
        squares_vanish: true,
        concentrated_in_excess_zero: true,
        contraction_rank_identity: true,
        euler_characteristic: true,
    };
    let s = |m: usize, e: usize| SliceSpec::forested(n_odd, g, m, r, e);
    let mut chi_chain = 0i64;
    for m in 0..=top {
        for e in 0..=max_excess {
            let here = s(m, e);
            let d = engine.dimension(&here)? as i64;
            chi_chain += if m % 2 == 0 { d } else { -d };
            if d == 0 {
                continue;
            }
            if m >= 2 {
                let dc = Operator::new(OpKind::ContractMarked, here);
                let du = Operator::new(OpKind::Unmark, here);
                let checks: [Vec<(Operator, Operator)>; 3] = [
                    vec![(dc, Operator::new(OpKind::ContractMarked, s(m - 1, e + 1)))],
                    vec![(du, Operator::new(OpKind::Unmark, s(m - 1, e)))],
                    vec![
                        (du, Operator::new(OpKind::ContractMarked, s(m - 1, e))),
                        (dc, Operator::new(OpKind::Unmark, s(m - 1, e + 1))),
                    ],
                ];
                for pairs in checks {
                    if engine.composite_violation(&pairs)?.is_some() {
                        c.squares_vanish = false;
                    }
                }
            }
            if e >= 1 {
                let out = engine.rank(&[Operator::new(OpKind::ContractMarked, here)])?;
                let inc = engine.rank(&[Operator::new(OpKind::ContractMarked, s(m + 1, e - 1))])?;
                if d - out.rank as i64 - inc.rank as i64 != 0 {
                    c.concentrated_in_excess_zero = false;
                }
            }
        }
        if m >= 1 {
            let direct = engine.rank(&[Operator::new(OpKind::ContractMarked, s(m, 0))])?;
            if direct.rank as i64 != contraction_rank_from_dims(engine, n_odd, g, m, r)? {
                c.contraction_rank_identity = false;
            }
        }
    }
    let mut chi_h = 0i64;
    for m in 0..=top {
        let h = forested_entry(engine, n_odd, g, m, r)?.numeric().unwrap_or(0);
        chi_h += if m % 2 == 0 { h } else { -h };
    }
    c.euler_characteristic = chi_h == chi_chain;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_graph_slices() {
        // Two vertices joined by three strands, loop order 2, no hairs.
        for n_odd in [false, true] {
            let none = enumerate(&SliceSpec::forested(n_odd, 2, 0, 0, 0));
            let one = enumerate(&SliceSpec::forested(n_odd, 2, 1, 0, 0));
            assert!(none.iter().chain(&one).all(|g| forested_admissible(g, true)));
            assert_eq!(one.iter().filter(|g| marked_edges(g).len() == 1).count(), one.len());
        }
    }

    #[test]
    fn marked_forest_count() {
        // K4 has 16 spanning trees; forests with 2 edges are all 15 pairs.
        let pairs: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(marked_forests(4, &pairs, 3).len(), 16);
        assert_eq!(marked_forests(4, &pairs, 2).len(), 15);
    }
}
