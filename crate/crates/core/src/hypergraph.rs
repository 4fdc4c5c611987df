//! Incidence structures over a fixed 128-bit vertex universe.
//!
//! Edges are [`VertexSet`]s, so membership and intersection sizes are single
//! word operations. The counting predicates at the bottom of the module are the
//! degree-sequence feasibility rules used to prune exhaustive searches.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 128;
/// Largest supported edge count.
pub const MAX_EDGES: usize = 512;

/// A set of vertex labels in `0..128`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        VertexSet(1u128 << v)
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 128 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn intersection_len(self, other: VertexSet) -> usize {
        (self.0 & other.0).count_ones() as usize
    }

    #[inline]
    pub fn meets(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest element, if any.
    #[inline]
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Image of the set under a vertex map `v -> perm[v]`.
    pub fn map(self, perm: &[usize]) -> VertexSet {
        let mut out = 0u128;
        for v in self.iter() {
            out |= 1u128 << perm[v];
        }
        VertexSet(out)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        f.write_str("{")?;
        for v in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        f.write_str("}")
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Iter {}

/// A simple hypergraph on vertices `0..n`.
///
/// The edge list keeps its input order (block files are verified against
/// their published ordering) but equality and hashing ignore it.
#[derive(Clone)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting empty edges, out-of-range labels and
    /// repeated edges.
    pub fn new(n: usize, edges: Vec<VertexSet>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::CapacityExceeded(format!(
                "{n} vertices (limit {MAX_VERTICES})"
            )));
        }
        if edges.len() > MAX_EDGES {
            return Err(Error::CapacityExceeded(format!(
                "{} edges (limit {MAX_EDGES})",
                edges.len()
            )));
        }
        let universe = VertexSet::full(n);
        for (index, &e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::EmptyEdge { index });
            }
            if !e.is_subset(universe) {
                let vertex = e.difference(universe).first().unwrap_or(n);
                return Err(Error::VertexOutOfRange { vertex, n });
            }
        }
        let mut sorted: Vec<(VertexSet, usize)> =
            edges.iter().copied().zip(0..).collect();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateEdge {
                    index: w[0].1.max(w[1].1),
                });
            }
        }
        Ok(Hypergraph { n, edges })
    }

    /// Builds a hypergraph from edges given as lists of vertex labels.
    pub fn from_edges<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = usize>,
    {
        let mut sets = Vec::new();
        for edge in edges {
            let mut s = VertexSet::EMPTY;
            for v in edge {
                if v >= n || v >= MAX_VERTICES {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                s.insert(v);
            }
            sets.push(s);
        }
        Hypergraph::new(n, sets)
    }

    /// The hypergraph with no edges on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        Hypergraph {
            n,
            edges: Vec::new(),
        }
    }

    /// Skips validation; callers guarantee distinct nonempty in-range edges.
    pub(crate) fn from_parts_unchecked(n: usize, edges: Vec<VertexSet>) -> Self {
        debug_assert!(Hypergraph::new(n, edges.clone()).is_ok());
        Hypergraph { n, edges }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, i: usize) -> VertexSet {
        self.edges[i]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// True iff every edge has exactly `r` vertices (vacuous for no edges).
    pub fn is_uniform(&self, r: usize) -> bool {
        self.edges.iter().all(|e| e.len() == r)
    }

    /// The common edge size, if all edges have the same size and there is at
    /// least one edge.
    pub fn uniformity(&self) -> Option<usize> {
        let r = self.edges.first()?.len();
        self.is_uniform(r).then_some(r)
    }

    /// True iff every pair of distinct edges shares at least `t` vertices.
    pub fn is_t_intersecting(&self, t: usize) -> bool {
        for (i, a) in self.edges.iter().enumerate() {
            for b in &self.edges[i + 1..] {
                if a.intersection_len(*b) < t {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_intersecting(&self) -> bool {
        self.is_t_intersecting(1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for v in e.iter() {
                d[v] += 1;
            }
        }
        d
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::from_degrees(self.degrees())
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn intersection_profile(&self) -> IntersectionProfile {
        let m = self.edges.len();
        let mut sizes = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for i in 0..m {
            for j in i + 1..m {
                sizes.push(self.edges[i].intersection_len(self.edges[j]));
            }
        }
        IntersectionProfile::new(m, sizes)
    }

    /// Sum of edge sizes.
    pub fn incidence_count(&self) -> usize {
        self.edges.iter().map(|e| e.len()).sum()
    }

    /// Edges containing `v`, by index.
    pub fn edges_through(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.contains(v))
            .map(|(i, _)| i)
    }

    /// The hypergraph with edge `i` removed; the vertex set is unchanged.
    pub fn without_edge(&self, i: usize) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.remove(i);
        Hypergraph { n: self.n, edges }
    }

    /// Adds an edge, checking it like [`Hypergraph::new`] would.
    pub fn with_edge(&self, e: VertexSet) -> Result<Hypergraph> {
        let mut edges = self.edges.clone();
        edges.push(e);
        Hypergraph::new(self.n, edges)
    }

    /// Relabels vertices by `v -> perm[v]`; `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Hypergraph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let edges = self.edges.iter().map(|e| e.map(perm)).collect();
        Hypergraph { n: self.n, edges }
    }

    /// Same edges in a different order.
    pub fn reorder_edges(&self, order: &[usize]) -> Hypergraph {
        assert_eq!(order.len(), self.edges.len());
        let edges = order.iter().map(|&i| self.edges[i]).collect();
        Hypergraph::new(self.n, edges).expect("reordering preserves validity")
    }

    /// The dual structure: vertices become edges and edges become vertices.
    /// Fails if two vertices lie on the same set of edges or a vertex is isolated.
    pub fn dual(&self) -> Result<Hypergraph> {
        let m = self.edges.len();
        if m > MAX_VERTICES {
            return Err(Error::CapacityExceeded(format!(
                "dual would have {m} vertices"
            )));
        }
        let edges = (0..self.n)
            .map(|v| {
                self.edges
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.contains(v))
                    .map(|(i, _)| i)
                    .collect::<VertexSet>()
            })
            .collect();
        Hypergraph::new(m, edges)
    }

    fn sorted_edges(&self) -> Vec<VertexSet> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self.sorted_edges() == other.sorted_edges()
    }
}

impl Eq for Hypergraph {}

impl Hash for Hypergraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.sorted_edges().hash(state);
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("])")
    }
}

/// Per-vertex degrees with their extremes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl DegreeProfile {
    pub fn from_degrees(degrees: Vec<usize>) -> Self {
        let min_degree = degrees.iter().copied().min().unwrap_or(0);
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        DegreeProfile {
            degrees,
            min_degree,
            max_degree,
        }
    }

    /// Profile from `(degree, multiplicity)` pairs, e.g. `[(4, 9), (2, 12)]`.
    pub fn from_counts(counts: &[(usize, usize)]) -> Self {
        let degrees = counts
            .iter()
            .flat_map(|&(d, k)| std::iter::repeat_n(d, k))
            .collect();
        DegreeProfile::from_degrees(degrees)
    }

    pub fn degree_sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Number of ordered edge pairs sharing a vertex, counted at the vertices:
    /// `sum d(d-1)`.
    pub fn ordered_pair_count(&self) -> usize {
        self.degrees.iter().map(|&d| d * d.saturating_sub(1)).sum()
    }
}

/// Pairwise intersection sizes over unordered edge pairs `(i, j)`, `i < j`,
/// in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionProfile {
    pub edge_count: usize,
    pub sizes: Vec<usize>,
    pub t_min: Option<usize>,
    pub t_max: Option<usize>,
}

impl IntersectionProfile {
    fn new(edge_count: usize, sizes: Vec<usize>) -> Self {
        let t_min = sizes.iter().copied().min();
        let t_max = sizes.iter().copied().max();
        IntersectionProfile {
            edge_count,
            sizes,
            t_min,
            t_max,
        }
    }

    /// Intersection size of edges `i` and `j` (`i != j`).
    pub fn get(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        assert!(i != j && j < self.edge_count);
        let m = self.edge_count;
        let row_start = i * (2 * m - i - 1) / 2;
        self.sizes[row_start + (j - i - 1)]
    }
}

/// Double-counting test for a `t`-intersecting family with `m` edges:
/// `sum d(d-1) >= t * m * (m-1)` must hold.
pub fn pair_count_feasible(profile: &DegreeProfile, m: usize, t: usize) -> bool {
    profile.ordered_pair_count() >= t * m * m.saturating_sub(1)
}

/// Lower bound on the maximum degree of any 2-intersecting `r`-uniform
/// hypergraph with `m` edges: `k + 2` for the largest `k` with
/// `k*r/2 + 1 < m`.
pub fn degree_force_bound(r: usize, m: usize) -> usize {
    assert!(r >= 2 && m >= 1, "degree_force_bound needs r >= 2 and m >= 1");
    if m == 1 {
        // a single edge has maximum degree 1
        return 1;
    }
    // k*r + 2 < 2m  <=>  k < (2m - 2) / r
    let k = (2 * m - 3) / r;
    k + 2
}

/// Largest value of `sum d(d-1)` over degree sequences of `n` vertices with
/// every degree in `[min_degree, max_degree]` and degree sum `total`, or
/// `None` if no such sequence exists.
pub fn max_pair_count(
    n: usize,
    total: usize,
    min_degree: usize,
    max_degree: usize,
) -> Option<usize> {
    if min_degree > max_degree || n * min_degree > total || n * max_degree < total {
        return None;
    }
    // convex objective: fill vertices to the cap one at a time
    let mut extra = total - n * min_degree;
    let span = max_degree - min_degree;
    let mut sum = 0;
    for _ in 0..n {
        let add = extra.min(span);
        extra -= add;
        let d = min_degree + add;
        sum += d * d.saturating_sub(1);
    }
    Some(sum)
}
