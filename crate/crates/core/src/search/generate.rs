//! Edge-by-edge generation by canonical augmentation.
//!
//! A hypergraph `G` with `k` edges is accepted from the parent `P = G - e`
//! only if `G - c*` is isomorphic to `P`, where `c*` is an edge chosen
//! invariantly in `G`: among the edges maximizing a cheap invariant, the one
//! whose canonical image is largest. Candidates for the new edge are reduced
//! to one per orbit of the known automorphisms of `P`, and the accepted
//! children of one parent are deduplicated by canonical form, so each class
//! is produced exactly once.
//!
//! Every pruning rule is inherited by subsets, so every parent of a
//! feasible hypergraph survives pruning.

use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;

use crate::canonical::{canonical_form, canonical_labeling, mix, CanonicalForm, Labeling};
use crate::cover::covering_number;
use crate::error::Result;
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::search::{binomial, SearchReport, SearchSpec};

/// Nodes above this depth fan out their children in parallel.
const PARALLEL_DEPTH: usize = 4;

/// Enumerates every isomorphism class meeting `spec` and computes the
/// covering number of each.
pub fn generate(spec: &SearchSpec) -> Result<SearchReport> {
    spec.validate()?;
    let start = Instant::now();
    let ctx = Context::new(spec);
    let mut forms = ctx.search(&ctx.root());
    forms.sort_unstable();
    let representatives: Vec<Hypergraph> = forms.iter().map(CanonicalForm::to_hypergraph).collect();
    let taus: Vec<usize> = representatives
        .par_iter()
        .map(|h| covering_number(h).tau)
        .collect();
    let extremal_count = taus.iter().filter(|&&tau| tau == spec.target_tau).count();
    Ok(SearchReport {
        spec: *spec,
        class_count: representatives.len(),
        extremal_count,
        representatives,
        taus,
        wall_time: start.elapsed(),
    })
}

/// Bitset over the indices of `Context::subsets`.
type Bits = Vec<u64>;

fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                i * 64 + b
            })
        })
    })
}

/// Clears the members of `bits` for which `drop` holds; returns whether any
/// was cleared. `drop` sees the set as already thinned.
fn retain(bits: &mut [u64], mut drop: impl FnMut(usize, &[u64]) -> bool) -> bool {
    let mut changed = false;
    for i in 0..bits.len() {
        let mut w = bits[i];
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            if drop(i * 64 + b, bits) {
                bits[i] &= !(1 << b);
                changed = true;
            }
        }
    }
    changed
}

struct Node {
    h: Hypergraph,
    degrees: Vec<u16>,
    /// Subsets that may still be added: `t`-intersecting every edge, not an
    /// edge, avoiding vertices of full degree, and surviving the peeling of
    /// [`Context::feasible`].
    open: Bits,
    labeling: Labeling,
}

struct Context {
    spec: SearchSpec,
    /// All `r`-subsets in increasing bit order, so the index of a subset is
    /// its colex rank.
    subsets: Vec<VertexSet>,
    /// `members[r*i..r*(i+1)]`: vertices of subset `i`.
    members: Vec<u8>,
    /// `binom[v * (r + 1) + k] = C(v, k)`.
    binom: Vec<usize>,
    words: usize,
    /// Row `i`: subsets other than `i` meeting subset `i` in `t` vertices.
    compat: Vec<u64>,
    /// Largest number of subsets incompatible with one subset.
    max_conflicts: usize,
    /// Row `v`: subsets containing vertex `v`.
    containing: Vec<u64>,
}

impl Context {
    fn new(spec: &SearchSpec) -> Self {
        let (n, r) = (spec.n, spec.r);
        let mut subsets: Vec<VertexSet> = (0..n).combinations(r).map(VertexSet::from_iter).collect();
        subsets.sort_unstable();
        let members = subsets.iter().flat_map(|s| s.iter().map(|v| v as u8)).collect();
        let binom = (0..n)
            .flat_map(|v| (0..=r).map(move |k| binomial(v, k)))
            .collect();
        let words = subsets.len().div_ceil(64);
        let mut compat = vec![0u64; subsets.len() * words];
        let mut max_conflicts = 0;
        for (i, &a) in subsets.iter().enumerate() {
            let row = &mut compat[i * words..(i + 1) * words];
            for (j, &b) in subsets.iter().enumerate() {
                if i != j && a.intersection_len(b) >= spec.t {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            max_conflicts = max_conflicts.max(subsets.len() - 1 - count(row));
        }
        let mut containing = vec![0u64; n * words];
        for (j, s) in subsets.iter().enumerate() {
            for v in s.iter() {
                containing[v * words + j / 64] |= 1 << (j % 64);
            }
        }
        Context {
            spec: *spec,
            subsets,
            members,
            binom,
            words,
            compat,
            max_conflicts,
            containing,
        }
    }

    fn compat(&self, i: usize) -> &[u64] {
        &self.compat[i * self.words..(i + 1) * self.words]
    }

    fn containing(&self, v: usize) -> &[u64] {
        &self.containing[v * self.words..(v + 1) * self.words]
    }

    fn members(&self, i: usize) -> &[u8] {
        &self.members[i * self.spec.r..(i + 1) * self.spec.r]
    }

    fn rank(&self, s: VertexSet) -> usize {
        let r1 = self.spec.r + 1;
        s.iter().enumerate().map(|(k, v)| self.binom[v * r1 + k + 1]).sum()
    }

    fn root(&self) -> Node {
        let mut open = vec![u64::MAX; self.words];
        let extra = self.words * 64 - self.subsets.len();
        if extra > 0 {
            open[self.words - 1] >>= extra;
        }
        let h = Hypergraph::empty(self.spec.n);
        let labeling = canonical_labeling(&h);
        Node {
            h,
            degrees: vec![0; self.spec.n],
            open,
            labeling,
        }
    }

    /// Canonical forms of all complete descendants of `node`.
    fn search(&self, node: &Node) -> Vec<CanonicalForm> {
        let k = node.h.edge_count();
        if k == self.spec.m {
            return vec![node.labeling.form.clone()];
        }
        let children = self.children(node);
        if k < PARALLEL_DEPTH {
            children.par_iter().flat_map(|c| self.search(c)).collect()
        } else {
            children.iter().flat_map(|c| self.search(c)).collect()
        }
    }

    /// Accepted children of `node`, one per isomorphism class.
    fn children(&self, node: &Node) -> Vec<Node> {
        let spec = &self.spec;
        let remaining = spec.m - node.h.edge_count() - 1;
        let mut accepted: Vec<Node> = Vec::new();
        let mut degrees = node.degrees.clone();
        let mut open = vec![0u64; self.words];
        let mut later = vec![0u64; self.words];
        let mut child_edges = Vec::with_capacity(spec.m);
        child_edges.extend_from_slice(node.h.edges());
        for ci in self.orbit_representatives(&node.open, &node.labeling.generators) {
            let c = self.subsets[ci];
            for ((o, a), b) in open.iter_mut().zip(&node.open).zip(self.compat(ci)) {
                *o = a & b;
            }
            for &v in self.members(ci) {
                let v = v as usize;
                degrees[v] += 1;
                if degrees[v] as usize == spec.max_degree {
                    for (w, x) in open.iter_mut().zip(self.containing(v)) {
                        *w &= !x;
                    }
                }
            }
            child_edges.push(c);
            if let Some(tied) = best_edges(&child_edges, &degrees) {
                later.copy_from_slice(&open);
                if self.feasible(&degrees, &mut later, remaining) {
                    let child = Hypergraph::from_parts_unchecked(spec.n, child_edges.clone());
                    if let Some(labeling) = accept(node, &child, tied) {
                        accepted.push(Node {
                            h: child,
                            degrees: degrees.clone(),
                            open: later.clone(),
                            labeling,
                        });
                    }
                }
            }
            child_edges.pop();
            for &v in self.members(ci) {
                degrees[v as usize] -= 1;
            }
        }
        accepted.sort_unstable_by(|a, b| a.labeling.form.cmp(&b.labeling.form));
        accepted.dedup_by(|a, b| a.labeling.form == b.labeling.form);
        accepted
    }

    /// Necessary conditions for completing a hypergraph with the given
    /// degrees by `remaining` further edges, all drawn from `later`. On
    /// success `later` is thinned to the subsets that pass every test.
    ///
    /// Counting the vertices shared by pairs of edges gives
    /// `sum C(D_v, 2) = t C(m, 2) + excess` over final degrees `D`, where
    /// `excess` sums `|e & f| - t` over edge pairs. The excess of the
    /// current edges is known, and a future edge `x` adds at least
    /// `exc(x) = sum_{v in x} d_v - t k` against the `k` current ones.
    fn feasible(&self, degrees: &[u16], later: &mut [u64], remaining: usize) -> bool {
        let spec = &self.spec;
        if remaining == 0 {
            return degrees.iter().all(|&d| d as usize >= spec.min_degree);
        }
        let (r, t, max) = (spec.r, spec.t, spec.max_degree);
        let n = degrees.len();
        let budget = r * remaining;
        let k = degrees.iter().map(|&d| d as usize).sum::<usize>() / r;
        let excess = degrees.iter().map(|&d| pairs(d as usize)).sum::<usize>() - t * pairs(k);
        // a future edge meets the other remaining - 1 in at least t vertices
        // each, so its future degrees sum to at least this
        let edge_sum = t * (remaining - 1) + r;
        let exc = |x: usize| -> usize {
            self.members(x).iter().map(|&v| degrees[v as usize] as usize).sum::<usize>() - t * k
        };
        let mut cap = [0usize; 128];
        let mut sorted = [0usize; 128];
        let mut excs: Vec<usize> = Vec::new();
        loop {
            let mut deficit = 0;
            let mut room = 0;
            for (v, &d) in degrees.iter().enumerate() {
                let d = d as usize;
                cap[v] = (max - d).min(remaining).min(count_and(later, self.containing(v)));
                let need = spec.min_degree.saturating_sub(d);
                if need > cap[v] {
                    return false;
                }
                deficit += need;
                room += cap[v];
            }
            if deficit > budget || room < budget {
                return false;
            }
            sorted[..n].copy_from_slice(&cap[..n]);
            sorted[..n].sort_unstable();
            if sorted[..r].iter().sum::<usize>() < edge_sum
                && retain(later, |x, _| self.members(x).iter().map(|&v| cap[v as usize]).sum::<usize>() < edge_sum)
            {
                continue;
            }
            let size = count(later);
            if size < remaining {
                return false;
            }
            let Some(slack) = (max_pair_sum(degrees, &cap, budget, max) / 2).checked_sub(t * pairs(spec.m) + excess)
            else {
                return false;
            };
            excs.clear();
            excs.extend(ones(later).map(exc));
            excs.select_nth_unstable(remaining - 1);
            let others: usize = excs[..remaining - 1].iter().sum();
            if others + excs[remaining - 1] > slack {
                return false;
            }
            if retain(later, |x, _| others + exc(x) > slack) {
                continue;
            }
            // the remaining edges are pairwise compatible
            if remaining < 2
                || size.saturating_sub(self.max_conflicts) >= remaining
                || !retain(later, |x, bits| count_and(self.compat(x), bits) + 1 < remaining)
            {
                break;
            }
        }
        // future pairs: the sum of C(f_v, 2) over future degrees counts the
        // vertices shared by pairs of future edges, at least t C(remaining, 2);
        // it is largest when the biggest capacities are filled first
        let mut left = budget;
        let mut future = 0;
        for &c in sorted[..n].iter().rev() {
            let f = c.min(left);
            future += pairs(f);
            left -= f;
        }
        future >= t * pairs(remaining)
    }

    /// One member of `open` per orbit of the group generated by `gens`, the
    /// smallest index of each orbit, in index order.
    fn orbit_representatives(&self, open: &[u64], gens: &[Vec<usize>]) -> Vec<usize> {
        if gens.is_empty() {
            return ones(open).collect();
        }
        let mut parent: Vec<u32> = (0..self.subsets.len() as u32).collect();
        fn find(parent: &mut [u32], mut x: usize) -> usize {
            while parent[x] as usize != x {
                parent[x] = parent[parent[x] as usize];
                x = parent[x] as usize;
            }
            x
        }
        for g in gens {
            for i in ones(open) {
                let j = self.rank(self.subsets[i].map(g));
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b) as u32;
                }
            }
        }
        ones(open).filter(|&i| find(&mut parent, i) == i).collect()
    }

}

/// Canonical augmentation test for a child whose edges maximizing the
/// invariant are `tied` (including the new, last edge); returns the child's
/// labeling on success.
fn accept(parent: &Node, child: &Hypergraph, tied: Vec<usize>) -> Option<Labeling> {
    let edges = child.edges();
    let new = edges.len() - 1;
    let labeling = canonical_labeling(child);
    if tied.len() == 1 {
        return Some(labeling);
    }
    let chosen = tied
        .into_iter()
        .max_by_key(|&i| labeling.image(edges[i]))
        .expect("some edge attains the maximum");
    if chosen == new {
        return Some(labeling);
    }
    let orbit = crate::canonical::set_orbit(edges[chosen], &labeling.generators);
    if orbit.contains(&edges[new]) {
        return Some(labeling);
    }
    let reduced: Vec<VertexSet> = edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != chosen)
        .map(|(_, &e)| e)
        .collect();
    let reduced = Hypergraph::from_parts_unchecked(child.vertex_count(), reduced);
    (canonical_form(&reduced) == parent.labeling.form).then_some(labeling)
}

fn pairs(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// Upper bound on `sum D_v (D_v - 1)` when `budget` further incidences are
/// spread over vertices of current degree `d_v`, at most `cap_v` each.
fn max_pair_sum(degrees: &[u16], cap: &[usize], budget: usize, max: usize) -> usize {
    let mut small = [0usize; 64];
    let mut wide = Vec::new();
    // gains[x] counts available increments from degree x to x + 1
    let gains = if max <= small.len() {
        &mut small[..max]
    } else {
        wide.resize(max, 0);
        &mut wide[..]
    };
    let mut sum = 0;
    for (v, &d) in degrees.iter().enumerate() {
        let d = d as usize;
        sum += d * d.saturating_sub(1);
        for g in &mut gains[d..d + cap[v]] {
            *g += 1;
        }
    }
    let mut left = budget;
    for (x, &count) in gains.iter().enumerate().rev() {
        if left == 0 {
            break;
        }
        let take = count.min(left);
        sum += take * 2 * x;
        left -= take;
    }
    sum
}

/// The edges maximizing an isomorphism invariant (a hash of the degrees of
/// its vertices, then a hash of its intersection sizes with the other
/// edges), or `None` when the last edge is not among them.
fn best_edges(edges: &[VertexSet], degrees: &[u16]) -> Option<Vec<usize>> {
    let new = edges.len() - 1;
    let by_degree = |e: VertexSet| e.iter().fold(0u64, |a, v| a.wrapping_add(mix(degrees[v] as u64)));
    let top = by_degree(edges[new]);
    if edges.iter().any(|&e| by_degree(e) > top) {
        return None;
    }
    let tied: Vec<usize> = (0..edges.len()).filter(|&i| by_degree(edges[i]) == top).collect();
    if tied.len() == 1 {
        return Some(tied);
    }
    let by_meets = |i: usize| {
        edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(0u64, |a, (_, &f)| a.wrapping_add(mix(0x9e37 ^ edges[i].intersection_len(f) as u64)))
    };
    let top = by_meets(new);
    let mut best = Vec::with_capacity(tied.len());
    for i in tied {
        let b = if i == new { top } else { by_meets(i) };
        if b > top {
            return None;
        }
        if b == top {
            best.push(i);
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::dedup;

    /// All `m`-subsets of the admissible `r`-sets, deduplicated.
    fn naive(spec: &SearchSpec) -> Vec<Hypergraph> {
        let subsets: Vec<VertexSet> = (0..spec.n)
            .combinations(spec.r)
            .map(VertexSet::from_iter)
            .collect();
        let all: Vec<Hypergraph> = subsets
            .iter()
            .copied()
            .combinations(spec.m)
            .map(|es| Hypergraph::from_parts_unchecked(spec.n, es))
            .filter(|h| {
                h.is_t_intersecting(spec.t)
                    && h.min_degree() >= spec.min_degree
                    && h.max_degree() <= spec.max_degree
            })
            .collect();
        dedup(&all)
    }

    #[test]
    fn matches_naive_enumeration() {
        for (r, t, n, m, lo, hi) in [
            (3, 1, 6, 4, 1, 4),
            (3, 1, 5, 5, 1, 5),
            (3, 2, 5, 4, 1, 4),
            (2, 1, 5, 3, 1, 3),
            (3, 1, 6, 6, 2, 4),
        ] {
            let spec = SearchSpec::new(r, t, n, m).with_degrees(lo, hi);
            let report = generate(&spec).unwrap();
            assert_eq!(report.representatives, naive(&spec), "{spec:?}");
        }
    }

    #[test]
    fn tetrahedron_is_the_only_three_uniform_biplane() {
        let spec = SearchSpec::new(3, 2, 4, 4).with_degrees(3, 3);
        let report = generate(&spec).unwrap();
        assert_eq!((report.class_count, report.extremal_count), (1, 1));
    }
}
