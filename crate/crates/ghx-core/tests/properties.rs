mod common;

use ghx_core::engine::{Basis, SliceSpec};
use ghx_core::graph::{automorphism_generators, canonicalize, decode_line, encode_line};
use ghx_core::linalg::{multiply_mod_p, rank_mod_p, rank_rational, sms_read, sms_write};
use ghx_core::symrep::{isotypic_projector, partitions};
use ghx_core::zoo::action_matrix;
use ghx_core::{compute_table, ColoredGraph, Engine, Permutation, SparseIntMatrix, TableKind, TableRequest};
use proptest::prelude::*;

const P: u64 = 32189;

fn graph_strategy(max_n: usize, colors: u8) -> impl Strategy<Value = ColoredGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        (prop::collection::vec(0..colors, n), prop::collection::vec(any::<bool>(), pairs)).prop_map(move |(c, bits)| {
            let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let edges: Vec<(usize, usize)> = all.into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            ColoredGraph::from_edges(c, &edges).unwrap()
        })
    })
}

fn with_permutation(g: ColoredGraph) -> impl Strategy<Value = (ColoredGraph, Permutation)> {
    let n = g.vertex_count();
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |images| (g.clone(), Permutation::from_images(images).unwrap()))
}

fn matrix_strategy() -> impl Strategy<Value = SparseIntMatrix> {
    (1usize..12, 1usize..12).prop_flat_map(|(r, c)| {
        prop::collection::vec((0..r, 0..c, -50i64..=50), 0..40)
            .prop_map(move |e| SparseIntMatrix::from_accumulated(r, c, e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_relabeling_invariant((g, p) in graph_strategy(11, 3).prop_flat_map(with_permutation)) {
        let (c, relabel) = canonicalize(&g);
        prop_assert_eq!(g.relabel(&relabel), c.clone());
        prop_assert_eq!(canonicalize(&g.relabel(&p)).0, c.clone());
        prop_assert_eq!(canonicalize(&c).0, c);
    }

    #[test]
    fn automorphisms_fix_the_graph(g in graph_strategy(11, 2)) {
        for s in automorphism_generators(&g) {
            prop_assert_eq!(g.relabel(&s), g.clone());
        }
    }

    #[test]
    fn automorphism_group_order_matches_brute_force(g in graph_strategy(7, 2)) {
        let n = g.vertex_count();
        let (_, fixed) = common::brute_canonical(&g, &Permutation::all(n));
        prop_assert_eq!(common::group_order(&automorphism_generators(&g), n), fixed);
    }

    #[test]
    fn graph6_line_round_trip(g in graph_strategy(40, 4)) {
        prop_assert_eq!(decode_line(&encode_line(&g)).unwrap(), g);
    }

    #[test]
    fn sms_round_trip(m in matrix_strategy()) {
        prop_assert_eq!(sms_read(&sms_write(&m)).unwrap(), m);
    }

    #[test]
    fn modular_rank_never_exceeds_rational(m in matrix_strategy()) {
        let q = rank_rational(&m).unwrap().rank;
        for p in [2, 5, P] {
            prop_assert!(rank_mod_p(&m, p).unwrap().rank <= q);
        }
        let dense: Vec<Vec<i64>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect();
        prop_assert_eq!(q, common::bareiss_rank(&dense));
    }

    #[test]
    fn rank_is_transpose_invariant(m in matrix_strategy()) {
        prop_assert_eq!(rank_mod_p(&m, P).unwrap().rank, rank_mod_p(&m.transpose(), P).unwrap().rank);
    }
}

#[test]
fn seeded_random_matrices_respect_rank_bounds() {
    common::modp_rank_bounds(200, &[3, 7, P], 7).unwrap();
}

#[test]
fn projectors_on_the_regular_representation() {
    for r in 1..=5 {
        common::projector_identities(r).unwrap();
    }
}

#[test]
fn projectors_on_colored_hairy_slices() {
    let engine = Engine::in_memory();
    for (g, v, r) in [(1, 3, 3), (1, 4, 4), (2, 4, 2), (2, 5, 3), (0, 2, 4)] {
        let basis = engine.basis(&SliceSpec::colored_hairy(false, g, v, r)).unwrap();
        let n = basis.dimension();
        assert!(n > 0, "empty slice {g} {v} {r}");
        let rho = |s: &Permutation| action_matrix(&basis, s);
        let mut sum = SparseIntMatrix::zero(n, n);
        for lambda in partitions(r) {
            let pm = isotypic_projector(&lambda, n, &rho).unwrap().mod_p(P).unwrap();
            assert_eq!(multiply_mod_p(&pm, &pm, P).unwrap(), pm, "P{lambda} not idempotent");
            for s in Permutation::all(r) {
                let a = rho(&s);
                assert_eq!(multiply_mod_p(&a, &pm, P).unwrap(), multiply_mod_p(&pm, &a, P).unwrap());
            }
            sum = sum.add_scaled(&pm, 1).unwrap().reduce_mod(P);
        }
        assert_eq!(sum, SparseIntMatrix::identity(n));
    }
}

#[test]
fn action_is_a_representation() {
    let engine = Engine::in_memory();
    let basis = engine.basis(&SliceSpec::colored_hairy(true, 1, 4, 4)).unwrap();
    let perms = Permutation::all(4);
    for s in &perms {
        for t in &perms {
            let lhs = action_matrix(&basis, &s.compose(t));
            let rhs = action_matrix(&basis, s).multiply(&action_matrix(&basis, t)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn basis_text_round_trip() {
    let engine = Engine::in_memory();
    for spec in [
        SliceSpec::ordinary(true, 5, 6),
        SliceSpec::hairy(false, true, 3, 4, 2),
        SliceSpec::colored_hairy(true, 2, 4, 3),
        SliceSpec::forested(false, 3, 2, 1, 0),
    ] {
        let b = engine.basis(&spec).unwrap();
        let back = Basis::from_text(spec, &b.to_text()).unwrap();
        assert_eq!(back.graphs(), b.graphs());
    }
}

#[test]
fn isotypic_work_limit_drops_labels_only() {
    let request = TableRequest { kind: TableKind::ColoredHairy { n_odd: true, hairs: 3 }, min_loops: 0, max_loops: 2 };
    let full = compute_table(&Engine::in_memory(), &request).unwrap();
    let limited = compute_table(&Engine::in_memory().with_isotypic_capacity(1), &request).unwrap();
    let forced = Engine::in_memory().with_isotypic_capacity(1).with_capacity(ghx_core::engine::DEFAULT_CAPACITY, true);
    assert_eq!(compute_table(&forced, &request).unwrap(), full);
    let mut labeled = 0;
    for (a, b) in full.rows.iter().zip(&limited.rows) {
        for (x, y) in a.cells.iter().zip(&b.cells) {
            assert_eq!(x.entry, y.entry);
            assert!(y.isotypic.is_empty());
            labeled += usize::from(!x.isotypic.is_empty());
        }
    }
    assert!(labeled > 0);
}
