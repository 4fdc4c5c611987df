//! Exact minimum transversals.
//!
//! [`covering_number`] is a branch-and-bound search: it branches on an
//! uncovered edge with the fewest still-allowed vertices, tries those vertices
//! in decreasing residual degree, and forbids earlier siblings in later
//! branches so every cover is reached through a single branch. Two lower
//! bounds prune: a greedy packing of pairwise disjoint residual edges, and the
//! sum of the largest residual degrees against the number of uncovered edges.
//!
//! [`covering_number_oracle`] enumerates vertex subsets by size and shares no
//! code with the search.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

/// A vertex set claimed to meet every edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoverCertificate {
    pub vertices: VertexSet,
}

impl CoverCertificate {
    pub fn new(vertices: VertexSet) -> Self {
        CoverCertificate { vertices }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn verify(&self, h: &Hypergraph) -> bool {
        is_cover(h, self.vertices)
    }
}

/// Covering number with a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauResult {
    pub tau: usize,
    pub witness: CoverCertificate,
    /// Set when every vertex set of size `tau - 1` has been refuted.
    pub exhaustive: bool,
}

/// True iff `s` meets every edge of `h`.
pub fn is_cover(h: &Hypergraph, s: VertexSet) -> bool {
    h.edges().iter().all(|e| e.meets(s))
}

/// Exact covering number by branch and bound.
pub fn covering_number(h: &Hypergraph) -> TauResult {
    let mut solver = CoverSolver::new(h);
    let mut k = solver.initial_lower_bound();
    loop {
        if let Some(cover) = solver.find_cover(k) {
            return TauResult {
                tau: k,
                witness: CoverCertificate::new(cover),
                exhaustive: true,
            };
        }
        k += 1;
    }
}

/// Decision mode: a cover of size at most `k`, if one exists.
pub fn cover_of_size_at_most(h: &Hypergraph, k: usize) -> Option<CoverCertificate> {
    CoverSolver::new(h).find_cover(k).map(CoverCertificate::new)
}

/// `tau(h) <= k`.
pub fn tau_at_most(h: &Hypergraph, k: usize) -> bool {
    cover_of_size_at_most(h, k).is_some()
}

/// Exact covering number by enumerating vertex subsets in increasing size.
///
/// Exponential; meant for instances with a few dozen vertices at most.
pub fn covering_number_oracle(h: &Hypergraph) -> TauResult {
    let n = h.vertex_count();
    for k in 0..=n {
        for combo in (0..n).combinations(k) {
            let s: VertexSet = combo.into_iter().collect();
            if is_cover(h, s) {
                return TauResult {
                    tau: k,
                    witness: CoverCertificate::new(s),
                    exhaustive: true,
                };
            }
        }
    }
    unreachable!("the full vertex set covers every nonempty edge")
}

/// Greedy upper bound for intersecting families: a maximum-degree vertex
/// plus one vertex per remaining pair of edges, `1 + ceil((e - delta)/2)`.
pub fn greedy_tau_upper(e: usize, delta: usize) -> usize {
    assert!(delta <= e, "maximum degree exceeds edge count");
    1 + (e - delta).div_ceil(2)
}

/// Builds the cover behind [`greedy_tau_upper`] for an intersecting `h`.
pub fn greedy_pair_cover(h: &Hypergraph) -> Result<CoverCertificate> {
    if !h.is_intersecting() {
        return Err(Error::PreconditionViolated(
            "pairing cover needs an intersecting hypergraph".into(),
        ));
    }
    if h.edge_count() == 0 {
        return Ok(CoverCertificate::new(VertexSet::EMPTY));
    }
    let degrees = h.degrees();
    let top = (0..h.vertex_count())
        .max_by_key(|&v| (degrees[v], std::cmp::Reverse(v)))
        .expect("nonempty");
    let mut cover = VertexSet::singleton(top);
    let rest: Vec<VertexSet> = h
        .edges()
        .iter()
        .copied()
        .filter(|e| !e.contains(top))
        .collect();
    for pair in rest.chunks(2) {
        let shared = if pair.len() == 2 {
            pair[0].intersection(pair[1])
        } else {
            pair[0]
        };
        cover.insert(shared.first().expect("intersecting edges share a vertex"));
    }
    Ok(CoverCertificate::new(cover))
}

/// Largest maximum degree compatible with covering number `target` under the
/// greedy bound: the largest `delta` with `1 + ceil((e - delta)/2) >= target`.
///
/// Intersecting families with two or more edges have a vertex of degree 2, so a
/// cap below that is reported as infeasible.
pub fn max_degree_cap(e: usize, r: usize, target: usize, two_intersecting: bool) -> Result<usize> {
    let expected = if two_intersecting { r.checked_sub(1) } else { Some(r) };
    if e == 0 || expected != Some(target) {
        return Err(Error::InfeasibleParameters(format!(
            "degree cap needs e >= 1 and target {} (got e={e}, target={target})",
            if two_intersecting { "r-1" } else { "r" }
        )));
    }
    let cap = (1..=e).rev().find(|&d| greedy_tau_upper(e, d) >= target);
    let floor = if e >= 2 { 2 } else { 1 };
    match cap {
        Some(d) if d >= floor => Ok(d),
        _ => Err(Error::InfeasibleParameters(format!(
            "no maximum degree >= {floor} allows covering number {target} with {e} edges"
        ))),
    }
}

/// The cover built in the proof that a low-degree vertex forces a small cover
/// in a 2-intersecting `r`-uniform hypergraph.
///
/// Takes the first edge `e` through `v`, records one vertex of `e` besides `v`
/// on every other edge through `v`, picks the smallest vertex `x` of `e` not
/// among those, and returns `e - {v, x}`.
pub fn mindeg_cover(h: &Hypergraph, v: usize) -> Result<CoverCertificate> {
    let r = h.uniformity().ok_or_else(|| {
        Error::PreconditionViolated("hypergraph must be uniform with at least one edge".into())
    })?;
    if !h.is_t_intersecting(2) {
        return Err(Error::PreconditionViolated(
            "hypergraph must be 2-intersecting".into(),
        ));
    }
    if v >= h.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: h.vertex_count(),
        });
    }
    let through: Vec<VertexSet> = h.edges().iter().copied().filter(|e| e.contains(v)).collect();
    if through.is_empty() || through.len() >= r {
        return Err(Error::PreconditionViolated(format!(
            "vertex {v} has degree {}, need 1..={}",
            through.len(),
            r - 1
        )));
    }
    let e = through[0];
    let mut reserved = VertexSet::singleton(v);
    for f in &through[1..] {
        let w = f
            .intersection(e)
            .difference(VertexSet::singleton(v))
            .first()
            .expect("2-intersecting edges share a second vertex");
        reserved.insert(w);
    }
    let x = e
        .difference(reserved)
        .first()
        .expect("at most r-1 reserved vertices on an r-edge");
    let mut c = e;
    c.remove(v);
    c.remove(x);
    Ok(CoverCertificate::new(c))
}

struct CoverSolver {
    edges: Vec<u128>,
    n: usize,
}

impl CoverSolver {
    fn new(h: &Hypergraph) -> Self {
        let mut edges: Vec<u128> = h.edges().iter().map(|e| e.bits()).collect();
        // supersets of other edges never constrain a cover
        edges.sort_by_key(|e| e.count_ones());
        let mut kept: Vec<u128> = Vec::with_capacity(edges.len());
        for e in edges {
            if !kept.iter().any(|&k| k & !e == 0) {
                kept.push(e);
            }
        }
        CoverSolver {
            edges: kept,
            n: h.vertex_count(),
        }
    }

    fn initial_lower_bound(&self) -> usize {
        packing_bound(&self.edges, !0)
    }

    fn find_cover(&mut self, k: usize) -> Option<VertexSet> {
        let all = if self.n >= 128 {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        };
        let mut degree = vec![0u32; self.n];
        let edges = self.edges.clone();
        search(&edges, all, 0, k, &mut degree).map(VertexSet::from_bits)
    }
}

/// Greedy lower bound: pairwise disjoint edges (restricted to `allowed`) need
/// distinct cover vertices.
fn packing_bound(edges: &[u128], allowed: u128) -> usize {
    let mut used = 0u128;
    let mut count = 0;
    for &e in edges {
        let r = e & allowed;
        if r & used == 0 {
            used |= r;
            count += 1;
        }
    }
    count
}

fn search(
    uncovered: &[u128],
    allowed: u128,
    chosen: u128,
    budget: usize,
    degree: &mut Vec<u32>,
) -> Option<u128> {
    if uncovered.is_empty() {
        return Some(chosen);
    }
    if budget == 0 {
        return None;
    }
    // branch edge: fewest allowed vertices, earliest on ties
    let mut pick = 0;
    let mut pick_size = u32::MAX;
    for (i, &e) in uncovered.iter().enumerate() {
        let s = (e & allowed).count_ones();
        if s < pick_size {
            pick = i;
            pick_size = s;
            if s == 0 {
                return None;
            }
        }
    }
    if packing_bound(uncovered, allowed) > budget {
        return None;
    }

    for d in degree.iter_mut() {
        *d = 0;
    }
    for &e in uncovered {
        let mut b = e & allowed;
        while b != 0 {
            degree[b.trailing_zeros() as usize] += 1;
            b &= b - 1;
        }
    }
    let mut top: Vec<u32> = degree.iter().copied().filter(|&d| d > 0).collect();
    if top.len() > budget {
        top.select_nth_unstable_by(budget - 1, |a, b| b.cmp(a));
        top.truncate(budget);
    }
    if (top.iter().sum::<u32>() as usize) < uncovered.len() {
        return None;
    }

    let branch_edge = uncovered[pick] & allowed;
    let mut order: Vec<(u32, usize)> = Vec::with_capacity(pick_size as usize);
    let mut b = branch_edge;
    while b != 0 {
        let v = b.trailing_zeros() as usize;
        order.push((degree[v], v));
        b &= b - 1;
    }
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut allowed = allowed;
    let mut rest: Vec<u128> = Vec::with_capacity(uncovered.len());
    for (_, v) in order {
        let bit = 1u128 << v;
        rest.clear();
        rest.extend(uncovered.iter().copied().filter(|&e| e & bit == 0));
        if let Some(c) = search(&rest, allowed & !bit, chosen | bit, budget - 1, degree) {
            return Some(c);
        }
        allowed &= !bit;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_edges(n, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    #[test]
    fn trivial_cases() {
        let empty = Hypergraph::empty(4);
        let t = covering_number(&empty);
        assert_eq!(t.tau, 0);
        assert!(t.witness.vertices.is_empty());
        let single = h(3, &[&[0, 1, 2]]);
        assert_eq!(covering_number(&single).tau, 1);
        assert!(!is_cover(&single, VertexSet::EMPTY));
        // singleton edges force their vertex
        let forced = h(4, &[&[2], &[0, 1], &[1, 3]]);
        let t = covering_number(&forced);
        assert_eq!(t.tau, 2);
        assert!(t.witness.vertices.contains(2));
    }

    #[test]
    fn tetrahedron_needs_two() {
        let t = h(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert_eq!(covering_number(&t).tau, 2);
        assert_eq!(covering_number_oracle(&t).tau, 2);
        assert!(tau_at_most(&t, 2));
        assert!(!tau_at_most(&t, 1));
    }

    #[test]
    fn greedy_bound_examples() {
        assert_eq!(greedy_tau_upper(9, 5), 3);
        assert_eq!(greedy_tau_upper(11, 5), 4);
        assert_eq!(greedy_tau_upper(1, 1), 1);
    }

    #[test]
    fn degree_cap_is_the_greedy_envelope() {
        // scan every delta directly
        for (e, r, target, two) in [(13, 5, 5, false), (56, 5, 4, true), (9, 4, 4, false), (11, 5, 5, false)] {
            let scan = (2..=e).filter(|&d| greedy_tau_upper(e, d) >= target).max();
            assert_eq!(max_degree_cap(e, r, target, two).ok(), scan);
        }
        assert_eq!(max_degree_cap(9, 4, 4, false), Ok(4));
        assert_eq!(max_degree_cap(13, 5, 5, false), Ok(6));
        assert_eq!(max_degree_cap(56, 5, 4, true), Ok(51));
        // both parity branches agree with the envelope
        for e in 1..40usize {
            for r in 3..7usize {
                let even = e as isize + 4 - 2 * r as isize;
                let odd = even + 1;
                let by_parity = (1..=e as isize)
                    .filter(|&d| if (e as isize - d) % 2 == 0 { d <= even } else { d <= odd })
                    .max();
                let scan = (1..=e).filter(|&d| greedy_tau_upper(e, d) >= r - 1).max();
                assert_eq!(by_parity.map(|d| d as usize), scan, "e={e} r={r}");
            }
        }
        assert!(matches!(
            max_degree_cap(6, 4, 4, false),
            Err(Error::InfeasibleParameters(_))
        ));
        assert!(max_degree_cap(6, 4, 3, false).is_err());
    }

    #[test]
    fn mindeg_cover_on_sunflower() {
        let s = h(11, &[&[0, 1, 2, 3, 4], &[0, 1, 5, 6, 7], &[0, 1, 8, 9, 10]]);
        let c = mindeg_cover(&s, 2).unwrap();
        assert!(c.size() <= 3);
        assert!(c.verify(&s));
        assert!(c.vertices.is_subset(s.edge(0)));
        assert_eq!(covering_number_oracle(&s).tau, 1);
    }

    #[test]
    fn mindeg_cover_preconditions() {
        let complete = Hypergraph::from_edges(6, (0..6).combinations(4)).unwrap();
        assert!(matches!(
            mindeg_cover(&complete, 0),
            Err(Error::PreconditionViolated(_))
        ));
        let not_two = h(5, &[&[0, 1, 2], &[2, 3, 4]]);
        assert!(mindeg_cover(&not_two, 0).is_err());
    }

    #[test]
    fn greedy_pair_cover_meets_bound() {
        let fano = h(
            7,
            &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6], &[1, 3, 5], &[1, 4, 6], &[2, 3, 6], &[2, 4, 5]],
        );
        let c = greedy_pair_cover(&fano).unwrap();
        assert!(c.verify(&fano));
        assert!(c.size() <= greedy_tau_upper(7, fano.max_degree()));
    }
}
