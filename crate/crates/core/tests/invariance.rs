//! Canonical forms and covering numbers under many random relabelings.

use std::collections::BTreeSet;

use covering_lab::constructions::catalog::catalog;
use covering_lab::{are_isomorphic, canonical_form, canonical_labeling, covering_number, dedup, Hypergraph, VertexSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn edge_set(h: &Hypergraph) -> BTreeSet<VertexSet> {
    h.edges().iter().copied().collect()
}

const TRIALS: usize = 1000;

#[test]
fn thousand_relabelings() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for name in ["fano", "paley", "q4_unique", "ag23_dual", "cross_grid_3_4"] {
        let h = catalog(name).unwrap().hypergraph;
        let form = canonical_form(&h);
        let tau = covering_number(&h).tau;
        let mut perm: Vec<usize> = (0..h.vertex_count()).collect();
        let mut order: Vec<usize> = (0..h.edge_count()).collect();
        for _ in 0..TRIALS {
            perm.shuffle(&mut rng);
            order.shuffle(&mut rng);
            let moved = h.relabel(&perm).reorder_edges(&order);
            assert_eq!(canonical_form(&moved), form, "{name}");
            assert_eq!(covering_number(&moved).tau, tau, "{name}");
        }
    }
}

#[test]
fn labeling_maps_onto_the_form() {
    for name in ["kummer", "pg2_3", "three_hares"] {
        let h = catalog(name).unwrap().hypergraph;
        let labeling = canonical_labeling(&h);
        let relabeled = h.relabel(&labeling.perm);
        assert_eq!(canonical_form(&relabeled), labeling.form);
        assert_eq!(edge_set(&relabeled), edge_set(&labeling.form.to_hypergraph()));
        for g in &labeling.generators {
            assert_eq!(edge_set(&h.relabel(g)), edge_set(&h), "{name}: generator is not an automorphism");
        }
        assert!(are_isomorphic(&h, &relabeled));
    }
}

#[test]
fn dedup_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let base = ["fano", "fano_complement", "paley"].map(|n| catalog(n).unwrap().hypergraph);
    let mut list = Vec::new();
    for h in &base {
        for _ in 0..5 {
            let mut perm: Vec<usize> = (0..h.vertex_count()).collect();
            perm.shuffle(&mut rng);
            list.push(h.relabel(&perm));
        }
    }
    let once = dedup(&list);
    assert_eq!(once.len(), 3);
    assert_eq!(dedup(&once).len(), 3);
}
