//! Class counts from a brute-force enumeration, checked against `generate`.

use std::collections::BTreeSet;

use covering_lab::search::{generate, SearchSpec};
use itertools::Itertools;

/// All `r`-subsets of `0..n` as bitmasks.
fn subsets(n: usize, r: usize) -> Vec<u32> {
    (0..n)
        .combinations(r)
        .map(|c| c.iter().fold(0u32, |acc, &v| acc | 1 << v))
        .collect()
}

fn permute(mask: u32, perm: &[usize]) -> u32 {
    (0..perm.len()).filter(|&v| mask >> v & 1 == 1).fold(0, |acc, v| acc | 1 << perm[v])
}

/// Smallest sorted edge list over all vertex permutations.
fn brute_canonical(edges: &[u32], n: usize) -> Vec<u32> {
    (0..n)
        .permutations(n)
        .map(|p| {
            let mut image: Vec<u32> = edges.iter().map(|&e| permute(e, &p)).collect();
            image.sort_unstable();
            image
        })
        .min()
        .expect("at least one permutation")
}

/// Isomorphism classes of `t`-intersecting families of `m` distinct
/// `r`-subsets covering all of `0..n`.
fn brute_count(r: usize, t: usize, n: usize, m: usize) -> usize {
    let all = subsets(n, r);
    let mut classes = BTreeSet::new();
    let mut chosen = Vec::new();
    fn extend(all: &[u32], t: usize, n: usize, m: usize, from: usize, chosen: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
        if chosen.len() == m {
            let union = chosen.iter().fold(0, |a, &e| a | e);
            if union.count_ones() as usize == n {
                out.insert(brute_canonical(chosen, n));
            }
            return;
        }
        for i in from..all.len() {
            let e = all[i];
            if chosen.iter().all(|&f| (e & f).count_ones() as usize >= t) {
                chosen.push(e);
                extend(all, t, n, m, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    extend(&all, t, n, m, 0, &mut chosen, &mut classes);
    classes.len()
}

/// `(r, t, n, counts for m = 1, 2, ...)`, computed by `brute_count`.
const FROZEN: [(usize, usize, usize, &[usize]); 6] = [
    (3, 1, 4, &[0, 1, 1, 1]),
    (3, 1, 5, &[0, 1, 3, 5, 6, 6, 4, 2, 1, 1]),
    (3, 1, 6, &[0, 0, 2, 9, 18, 32, 38, 32, 17, 12, 0]),
    (3, 2, 5, &[0, 0, 1, 0]),
    (4, 2, 6, &[0, 1, 4, 8, 14, 21, 24, 24, 21, 15, 9, 5, 2, 1, 1]),
    (4, 3, 5, &[0, 1, 1, 1, 1]),
];

#[test]
fn oracle_reproduces_frozen_counts() {
    for (r, t, n, counts) in FROZEN {
        let found: Vec<usize> = (1..=counts.len()).map(|m| brute_count(r, t, n, m)).collect();
        assert_eq!(found, counts, "r={r} t={t} n={n}");
    }
}

#[test]
fn generate_matches_frozen_counts() {
    for (r, t, n, counts) in FROZEN {
        for (i, &expected) in counts.iter().enumerate() {
            let m = i + 1;
            let spec = SearchSpec::new(r, t, n, m);
            let found = match generate(&spec) {
                Ok(report) => report.class_count,
                Err(_) => 0,
            };
            assert_eq!(found, expected, "r={r} t={t} n={n} m={m}");
        }
    }
}

#[test]
fn representatives_satisfy_the_spec() {
    let spec = SearchSpec::new(3, 1, 6, 6);
    let report = generate(&spec).unwrap();
    for h in &report.representatives {
        assert_eq!(h.vertex_count(), 6);
        assert_eq!(h.edge_count(), 6);
        assert!(h.is_uniform(3) && h.is_intersecting());
        assert!(h.min_degree() >= 1);
    }
    let forms: BTreeSet<_> = report.representatives.iter().map(covering_lab::canonical_form).collect();
    assert_eq!(forms.len(), report.class_count);
}

