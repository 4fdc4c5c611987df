use std::collections::BTreeSet;

use covering_lab::cover::{covering_number_oracle, greedy_tau_upper, mindeg_cover, tau_at_most};
use covering_lab::hypergraph::{degree_force_bound, pair_count_feasible};
use covering_lab::io::{parse_blocks, parse_incidence, serialize_incidence, to_blocks};
use covering_lab::search::{generate, SearchSpec};
use covering_lab::{canonical_form, covering_number, is_cover, Hypergraph, VertexSet};
use proptest::prelude::*;

fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (1usize..=12).prop_flat_map(|n| {
        prop::collection::vec(1u32..(1 << n), 1..=10).prop_map(move |masks| {
            let edges: BTreeSet<u32> = masks.into_iter().collect();
            let sets = edges
                .into_iter()
                .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<VertexSet>())
                .collect();
            Hypergraph::new(n, sets).expect("distinct nonempty edges")
        })
    })
}

fn with_permutation() -> impl Strategy<Value = (Hypergraph, Vec<usize>, Vec<usize>)> {
    hypergraph().prop_flat_map(|h| {
        let perm = Just((0..h.vertex_count()).collect::<Vec<_>>()).prop_shuffle();
        let order = Just((0..h.edge_count()).collect::<Vec<_>>()).prop_shuffle();
        (Just(h), perm, order)
    })
}

proptest! {
    #[test]
    fn solver_matches_oracle(h in hypergraph()) {
        let fast = covering_number(&h);
        let slow = covering_number_oracle(&h);
        prop_assert_eq!(fast.tau, slow.tau);
        prop_assert!(is_cover(&h, fast.witness.vertices));
        prop_assert_eq!(fast.witness.vertices.len(), fast.tau);
        prop_assert!(tau_at_most(&h, fast.tau));
        prop_assert!(fast.tau == 0 || !tau_at_most(&h, fast.tau - 1));
    }

    #[test]
    fn canonical_form_ignores_labels((h, perm, order) in with_permutation()) {
        let moved = h.relabel(&perm).reorder_edges(&order);
        prop_assert_eq!(canonical_form(&h), canonical_form(&moved));
        prop_assert_eq!(covering_number(&h).tau, covering_number(&moved).tau);
    }

    #[test]
    fn incidence_round_trip(h in hypergraph()) {
        let back = parse_incidence(&serialize_incidence(&h)).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn block_round_trip_keeps_the_class(h in hypergraph()) {
        let parsed = parse_blocks(&to_blocks(&h)).unwrap();
        let used = h.edges().iter().fold(VertexSet::EMPTY, |a, &e| a.union(e)).len();
        prop_assert_eq!(parsed.hypergraph.vertex_count(), used);
        prop_assert_eq!(parsed.hypergraph.edge_count(), h.edge_count());
        if used == h.vertex_count() {
            prop_assert_eq!(canonical_form(&parsed.hypergraph), canonical_form(&h));
        }
    }
}

/// Every 2-intersecting uniform family found by small searches.
fn two_intersecting_samples() -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for r in 3..=4 {
        for n in r + 1..=7 {
            for m in 2..=7 {
                if let Ok(report) = generate(&SearchSpec::new(r, 2, n, m)) {
                    out.extend(report.representatives);
                }
            }
        }
    }
    out
}

#[test]
fn bounds_hold_on_two_intersecting_families() {
    let samples = two_intersecting_samples();
    assert!(samples.len() > 100, "only {} samples", samples.len());
    for h in &samples {
        let r = h.uniformity().unwrap();
        let m = h.edge_count();
        let tau = covering_number(h).tau;
        assert!(h.max_degree() >= degree_force_bound(r, m), "{h:?}");
        assert!(pair_count_feasible(&h.degree_profile(), m, 2));
        assert!(tau <= greedy_tau_upper(m, h.max_degree()));
        assert!(tau < r, "2-intersecting families are covered by r - 1 vertices");
        for v in 0..h.vertex_count() {
            if h.degree(v) < r {
                let cover = mindeg_cover(h, v).unwrap();
                assert_eq!(cover.vertices.len(), r - 2);
                assert!(is_cover(h, cover.vertices));
            } else {
                assert!(mindeg_cover(h, v).is_err());
            }
        }
    }
}
