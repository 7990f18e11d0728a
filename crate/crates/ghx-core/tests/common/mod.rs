//! Brute-force oracles and property checks shared by the acceptance and
//! property test files.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use ghx_core::graph::{automorphism_generators, canonicalize};
use ghx_core::linalg::{rank_mod_p, rank_rational};
use ghx_core::symrep::{isotypic_projector, partitions};
use ghx_core::{ColoredGraph, Permutation, SparseIntMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every labeled graph on `n` vertices with the given colors.
pub fn all_labeled(n: usize, colors: &[u8]) -> impl Iterator<Item = ColoredGraph> + '_ {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
        ColoredGraph::from_edges(colors.to_vec(), &edges).unwrap()
    })
}

/// Smallest relabeling over all of `S_n`, and the number of permutations
/// fixing the graph.
pub fn brute_canonical(g: &ColoredGraph, perms: &[Permutation]) -> (ColoredGraph, usize) {
    let mut best: Option<ColoredGraph> = None;
    let mut fixed = 0;
    for p in perms {
        let h = g.relabel(p);
        if &h == g {
            fixed += 1;
        }
        if best.as_ref().is_none_or(|b| h < *b) {
            best = Some(h);
        }
    }
    (best.unwrap(), fixed)
}

/// Order of the group generated by `gens`, by closure.
pub fn group_order(gens: &[Permutation], n: usize) -> usize {
    let mut seen = BTreeSet::from([Permutation::identity(n)]);
    let mut frontier = vec![Permutation::identity(n)];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = s.compose(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// Checks canonical forms and automorphism groups on every labeled graph up
/// to `max_n` vertices (uncolored), and on every two-colored graph up to
/// `max_colored` vertices. Returns the number of graphs checked.
pub fn canonical_soundness(max_n: usize, max_colored: usize) -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=max_n {
        let perms = Permutation::all(n);
        let mut colorings = vec![vec![0u8; n]];
        if n <= max_colored {
            colorings = (0u32..1 << n).map(|m| (0..n).map(|i| (m >> i & 1) as u8).collect()).collect();
        }
        for colors in &colorings {
            // brute class -> our canonical form, and back
            let mut forward: HashMap<ColoredGraph, ColoredGraph> = HashMap::new();
            let mut backward: HashMap<ColoredGraph, ColoredGraph> = HashMap::new();
            for g in all_labeled(n, colors) {
                checked += 1;
                let (canon, relabel) = canonicalize(&g);
                if g.relabel(&relabel) != canon {
                    return Err(format!("relabeling does not produce the canonical form for {g:?}"));
                }
                let (brute, fixed) = brute_canonical(&g, &perms);
                if forward.entry(brute.clone()).or_insert_with(|| canon.clone()) != &canon {
                    return Err(format!("isomorphic graphs with different canonical forms: {g:?}"));
                }
                if backward.entry(canon).or_insert_with(|| brute.clone()) != &brute {
                    return Err(format!("non-isomorphic graphs share a canonical form: {g:?}"));
                }
                let gens = automorphism_generators(&g);
                if gens.iter().any(|s| g.relabel(s) != g) {
                    return Err(format!("a reported automorphism does not fix {g:?}"));
                }
                if group_order(&gens, n) != fixed {
                    return Err(format!("automorphism group of {g:?} incomplete"));
                }
            }
        }
    }
    Ok(checked)
}

/// Rank over Q by fraction-free elimination in `i128`, independent of the
/// library's elimination.
pub fn bareiss_rank(dense: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = dense.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                a[r][k] = (a[r][k] * a[rank][c] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

pub fn random_dense(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=9);
    let cols = rng.gen_range(1..=9);
    let density = rng.gen_range(0.1..0.9);
    (0..rows)
        .map(|_| (0..cols).map(|_| if rng.gen_bool(density) { rng.gen_range(-4..=4) } else { 0 }).collect())
        .collect()
}

pub fn to_sparse(dense: &[Vec<i64>]) -> SparseIntMatrix {
    let rows = dense.len();
    let cols = dense.first().map_or(0, Vec::len);
    let e = dense
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, &v)| v != 0).map(move |(j, &v)| (i, j, v)))
        .collect();
    SparseIntMatrix::new(rows, cols, e).unwrap()
}

/// On `count` seeded random small matrices: the rational rank equals the
/// independent oracle and every mod-p rank is at most the rational rank.
pub fn modp_rank_bounds(count: usize, primes: &[u64], seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drops = 0;
    for _ in 0..count {
        let dense = random_dense(&mut rng);
        let m = to_sparse(&dense);
        let q = rank_rational(&m).map_err(|e| e.to_string())?.rank;
        if q != bareiss_rank(&dense) {
            return Err(format!("rational rank {q} disagrees with the oracle on {dense:?}"));
        }
        for &p in primes {
            let r = rank_mod_p(&m, p).map_err(|e| e.to_string())?.rank;
            if r > q {
                return Err(format!("rank mod {p} is {r} > {q} on {dense:?}"));
            }
            drops += usize::from(r < q);
        }
    }
    Ok(drops)
}

/// Left regular representation of `S_r`.
pub fn regular_representation(r: usize) -> (usize, impl Fn(&Permutation) -> SparseIntMatrix) {
    let elems = Permutation::all(r);
    let n = elems.len();
    let index: HashMap<Permutation, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let rho = move |s: &Permutation| {
        let e = elems.iter().map(|t| (index[&s.compose(t)], index[t], 1)).collect();
        SparseIntMatrix::new(n, n, e).unwrap()
    };
    (n, rho)
}

/// Exact idempotence, mutual orthogonality, completeness and trace
/// `(dim λ)^2` of the isotypic projectors on the regular representation.
pub fn projector_identities(r: usize) -> Result<(), String> {
    let (n, rho) = regular_representation(r);
    let projs: Vec<_> = partitions(r)
        .iter()
        .map(|l| isotypic_projector(l, n, &rho).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let lcm = projs.iter().fold(1i64, |acc, p| acc / gcd(acc, p.denominator) * p.denominator);
    let mut total = SparseIntMatrix::zero(n, n);
    for (i, p) in projs.iter().enumerate() {
        let sq = p.numerator.multiply(&p.numerator).map_err(|e| e.to_string())?;
        if sq != p.numerator.scale(p.denominator) {
            return Err(format!("P{} is not idempotent", p.lambda));
        }
        for q in &projs[i + 1..] {
            if !p.numerator.multiply(&q.numerator).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("P{} P{} != 0", p.lambda, q.lambda));
            }
        }
        let trace: i64 = p.numerator.entries().filter(|(a, b, _)| a == b).map(|(_, _, v)| v).sum();
        let d = p.lambda.dimension() as i64;
        if trace != d * d * p.denominator {
            return Err(format!("trace of P{} is not (dim)^2", p.lambda));
        }
        total = total.add_scaled(&p.numerator.scale(lcm / p.denominator), 1).map_err(|e| e.to_string())?;
    }
    if total != SparseIntMatrix::identity(n).scale(lcm) {
        return Err(format!("projectors for r = {r} do not sum to the identity"));
    }
    Ok(())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
