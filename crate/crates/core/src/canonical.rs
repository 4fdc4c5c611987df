//! Canonical labeling of hypergraphs through their vertex/edge incidence
//! (Levi) graph.
//!
//! The search tree is the usual individualization-refinement tree. Vertex and
//! edge colours are refined together until stable; the first non-singleton
//! vertex cell is split by individualizing each of its members in turn. Every
//! leaf is a discrete vertex order, and the canonical leaf is the one with the
//! smallest `(refinement trace, sorted edge columns)` pair. Edge order never
//! needs branching: columns are sorted for each vertex order.
//!
//! Automorphisms found at equivalent leaves, together with transpositions of
//! twin vertices (same incident edges), prune sibling subtrees that lie in a
//! common orbit of the pointwise stabilizer of the current path.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::hypergraph::{Hypergraph, VertexSet};

/// Total-order key of an isomorphism class: vertex count plus the sorted edge
/// columns under the canonical vertex order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    columns: Vec<VertexSet>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[VertexSet] {
        &self.columns
    }

    /// The canonical representative, edges in key order.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::from_parts_unchecked(self.n, self.columns.clone())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(n={}, {:?})", self.n, self.columns)
    }
}

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub form: CanonicalForm,
    /// `perm[v]` is the canonical position of vertex `v`.
    pub perm: Vec<usize>,
    /// Automorphisms discovered during the search (vertex permutations).
    pub generators: Vec<Vec<usize>>,
}

impl Labeling {
    /// Image of an edge in the canonical order.
    pub fn image(&self, e: VertexSet) -> VertexSet {
        e.map(&self.perm)
    }
}

pub fn canonical_form(h: &Hypergraph) -> CanonicalForm {
    canonical_labeling(h).form
}

pub fn are_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && a.degree_profile_sorted() == b.degree_profile_sorted()
        && canonical_form(a) == canonical_form(b)
}

/// One canonical representative per isomorphism class, ordered by key.
pub fn dedup<'a, I>(list: I) -> Vec<Hypergraph>
where
    I: IntoIterator<Item = &'a Hypergraph>,
{
    let mut forms: Vec<CanonicalForm> = list.into_iter().map(canonical_form).collect();
    forms.sort_unstable();
    forms.dedup();
    forms.iter().map(CanonicalForm::to_hypergraph).collect()
}

impl Hypergraph {
    fn degree_profile_sorted(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }
}

pub fn canonical_labeling(h: &Hypergraph) -> Labeling {
    Canonizer::new(h).run()
}

/// Orbits of the group generated by `gens` on `0..n`, as a representative map.
pub fn orbit_representatives(n: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for g in gens {
        for (v, &w) in g.iter().enumerate() {
            uf.union(v, w);
        }
    }
    (0..n).map(|v| uf.find(v)).collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

#[inline]
pub(crate) fn mix(x: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone)]
struct Leaf {
    trace: Vec<u64>,
    key: Vec<VertexSet>,
    perm: Vec<usize>,
    path: Vec<usize>,
}

impl Leaf {
    fn cmp_rank(&self, trace: &[u64], key: &[VertexSet]) -> Ordering {
        trace.cmp(&self.trace[..]).then_with(|| key.cmp(&self.key[..]))
    }
}

/// Ordered partition state: `vcol[v]` / `ecol[e]` is the start index of the
/// cell containing the element.
#[derive(Clone)]
struct Partition {
    vcol: Vec<u32>,
    ecol: Vec<u32>,
    vcells: usize,
}

struct Canonizer<'a> {
    h: &'a Hypergraph,
    n: usize,
    vert_edges: Vec<Vec<u32>>,
    edge_verts: Vec<Vec<u32>>,
    generators: Vec<Vec<usize>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    // scratch
    order: Vec<u32>,
    sig: Vec<(u32, u64)>,
}

enum Flow {
    Continue,
    /// Unwind to the node at this depth.
    Unwind(usize),
}

impl<'a> Canonizer<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let n = h.vertex_count();
        let m = h.edge_count();
        let mut vert_edges = vec![Vec::new(); n];
        let mut edge_verts = Vec::with_capacity(m);
        for (i, e) in h.edges().iter().enumerate() {
            let vs: Vec<u32> = e.iter().map(|v| v as u32).collect();
            for &v in &vs {
                vert_edges[v as usize].push(i as u32);
            }
            edge_verts.push(vs);
        }
        let generators = twin_transpositions(n, &vert_edges);
        Canonizer {
            h,
            n,
            vert_edges,
            edge_verts,
            generators,
            first: None,
            best: None,
            order: Vec::new(),
            sig: Vec::new(),
        }
    }

    fn run(mut self) -> Labeling {
        let mut p = Partition {
            vcol: vec![0; self.n],
            ecol: vec![0; self.h.edge_count()],
            vcells: usize::from(self.n > 0),
        };
        let mut trace = Vec::new();
        let t = self.refine(&mut p);
        trace.push(t);
        let mut path = Vec::new();
        self.descend(p, &mut trace, &mut path);
        let best = self.best.expect("search reaches a leaf");
        Labeling {
            form: CanonicalForm {
                n: self.n,
                columns: best.key,
            },
            perm: best.perm,
            generators: self.generators,
        }
    }

    /// Refines to a stable colouring; returns an isomorphism-invariant trace value.
    fn refine(&mut self, p: &mut Partition) -> u64 {
        let m = p.ecol.len();
        let n = self.n;
        let mut trace = mix(p.vcells as u64);
        let mut ecells = count_cells(&p.ecol);
        loop {
            // edges from vertex colours
            self.sig.clear();
            for e in 0..m {
                let mut s = 0u64;
                for &v in &self.edge_verts[e] {
                    s = s.wrapping_add(mix(p.vcol[v as usize] as u64));
                }
                self.sig.push((p.ecol[e], s));
            }
            let new_ecells = recolour(&self.sig, &mut p.ecol, &mut self.order, &mut trace);
            // vertices from edge colours
            self.sig.clear();
            for v in 0..n {
                let mut s = 0u64;
                for &e in &self.vert_edges[v] {
                    s = s.wrapping_add(mix(0x5bd1_e995 ^ p.ecol[e as usize] as u64));
                }
                self.sig.push((p.vcol[v], s));
            }
            let new_vcells = recolour(&self.sig, &mut p.vcol, &mut self.order, &mut trace);
            let stable = new_vcells == p.vcells && new_ecells == ecells;
            p.vcells = new_vcells;
            ecells = new_ecells;
            if stable {
                return trace;
            }
        }
    }

    fn descend(&mut self, p: Partition, trace: &mut Vec<u64>, path: &mut Vec<usize>) -> Flow {
        if p.vcells == self.n {
            return self.leaf(&p, trace, path);
        }
        // target cell: the non-singleton cell with the smallest start
        let mut sizes = vec![0u32; self.n];
        for &c in &p.vcol {
            sizes[c as usize] += 1;
        }
        let target = (0..self.n).find(|&c| sizes[c] > 1).expect("non-discrete") as u32;
        let cell: Vec<usize> = (0..self.n).filter(|&v| p.vcol[v] == target).collect();

        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        let mut gens_seen = usize::MAX;
        let mut reps: Vec<usize> = Vec::new();
        for &w in &cell {
            if !explored.is_empty() {
                if gens_seen != self.generators.len() {
                    reps = self.stabilizer_orbits(path);
                    gens_seen = self.generators.len();
                }
                if explored.iter().any(|&x| reps[x] == reps[w]) {
                    continue;
                }
            }
            explored.push(w);

            let mut child = p.clone();
            for &u in &cell {
                if u != w {
                    child.vcol[u] = target + 1;
                }
            }
            child.vcells += 1;
            let t = self.refine(&mut child);
            trace.push(t);
            path.push(w);
            let prune = self
                .best
                .as_ref()
                .is_some_and(|b| trace[..] > b.trace[..trace.len().min(b.trace.len())]);
            let flow = if prune {
                Flow::Continue
            } else {
                self.descend(child, trace, path)
            };
            path.pop();
            trace.pop();
            if let Flow::Unwind(d) = flow {
                if d < depth {
                    return flow;
                }
            }
        }
        Flow::Continue
    }

    fn leaf(&mut self, p: &Partition, trace: &[u64], path: &[usize]) -> Flow {
        let perm: Vec<usize> = p.vcol.iter().map(|&c| c as usize).collect();
        let mut key: Vec<VertexSet> = self.h.edges().iter().map(|e| e.map(&perm)).collect();
        key.sort_unstable();

        let Some(first) = &self.first else {
            let leaf = Leaf {
                trace: trace.to_vec(),
                key,
                perm,
                path: path.to_vec(),
            };
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return Flow::Continue;
        };
        if first.cmp_rank(trace, &key) == Ordering::Equal {
            let gamma = automorphism(&first.perm, &perm);
            let common = first
                .path
                .iter()
                .zip(path)
                .take_while(|(a, b)| a == b)
                .count();
            self.push_generator(gamma);
            return Flow::Unwind(common);
        }
        let best = self.best.as_ref().expect("best set with first");
        match best.cmp_rank(trace, &key) {
            Ordering::Less => {
                self.best = Some(Leaf {
                    trace: trace.to_vec(),
                    key,
                    perm,
                    path: path.to_vec(),
                });
            }
            Ordering::Equal => {
                let gamma = automorphism(&best.perm, &perm);
                self.push_generator(gamma);
            }
            Ordering::Greater => {}
        }
        Flow::Continue
    }

    fn push_generator(&mut self, gamma: Vec<usize>) {
        if gamma.iter().enumerate().any(|(v, &w)| v != w) {
            self.generators.push(gamma);
        }
    }

    /// Orbit representatives of the group generated by the known automorphisms
    /// that fix every vertex on `path`.
    fn stabilizer_orbits(&self, path: &[usize]) -> Vec<usize> {
        let gens: Vec<Vec<usize>> = self
            .generators
            .iter()
            .filter(|g| path.iter().all(|&v| g[v] == v))
            .cloned()
            .collect();
        orbit_representatives(self.n, &gens)
    }
}

/// `gamma` with `to[v] = from[gamma[v]]`: maps the labeling `from` onto `to`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; from.len()];
    for (v, &pos) in from.iter().enumerate() {
        inv[pos] = v;
    }
    to.iter().map(|&pos| inv[pos]).collect()
}

fn count_cells(col: &[u32]) -> usize {
    let mut seen: Vec<u32> = col.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Reassigns colours by sorting on `(old colour, signature)`; the new colour
/// of an element is the sorted position of its class. Returns the cell count.
fn recolour(sig: &[(u32, u64)], col: &mut [u32], order: &mut Vec<u32>, trace: &mut u64) -> usize {
    order.clear();
    order.extend(0..sig.len() as u32);
    order.sort_unstable_by_key(|&i| sig[i as usize]);
    let mut cells = 0;
    let mut start = 0u32;
    for (pos, &i) in order.iter().enumerate() {
        let s = sig[i as usize];
        if pos == 0 || sig[order[pos - 1] as usize] != s {
            start = pos as u32;
            cells += 1;
            *trace = mix(*trace ^ s.1 ^ ((s.0 as u64) << 32) ^ pos as u64);
        }
        col[i as usize] = start;
    }
    cells
}

/// Transpositions chaining each class of vertices with identical incident
/// edge lists; each is an automorphism.
fn twin_transpositions(n: usize, vert_edges: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let mut by_edges: Vec<usize> = (0..n).collect();
    by_edges.sort_by(|&a, &b| vert_edges[a].cmp(&vert_edges[b]).then(a.cmp(&b)));
    let mut gens = Vec::new();
    for w in by_edges.windows(2) {
        if vert_edges[w[0]] == vert_edges[w[1]] {
            let mut g: Vec<usize> = (0..n).collect();
            g.swap(w[0], w[1]);
            gens.push(g);
        }
    }
    gens
}

/// Orbit of `set` under the group generated by `gens`.
pub fn set_orbit(set: VertexSet, gens: &[Vec<usize>]) -> HashSet<VertexSet> {
    let mut seen = HashSet::from([set]);
    let mut stack = vec![set];
    while let Some(s) = stack.pop() {
        for g in gens {
            let t = s.map(g);
            if seen.insert(t) {
                stack.push(t);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fano() -> Hypergraph {
        Hypergraph::from_edges(
            7,
            [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
        )
        .unwrap()
    }

    fn is_automorphism(h: &Hypergraph, g: &[usize]) -> bool {
        h.relabel(g) == *h
    }

    #[test]
    fn relabeled_fano_has_same_key() {
        let f = fano();
        let base = canonical_form(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut perm: Vec<usize> = (0..7).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&f.relabel(&perm)), base);
        }
    }

    #[test]
    fn canonical_representative_is_fixed_point() {
        let f = fano();
        let rep = canonical_form(&f).to_hypergraph();
        let again = canonical_form(&rep);
        assert_eq!(again.to_hypergraph().edges(), rep.edges());
    }

    #[test]
    fn generators_are_automorphisms() {
        let f = fano();
        let lab = canonical_labeling(&f);
        assert!(!lab.generators.is_empty());
        for g in &lab.generators {
            assert!(is_automorphism(&f, g));
        }
        // the Fano plane is point-transitive
        let reps = orbit_representatives(7, &lab.generators);
        assert!(reps.iter().all(|&r| r == reps[0]));
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let k64 = Hypergraph::from_edges(6, (0..6).combinations(4)).unwrap();
        let comp = Hypergraph::from_edges(
            7,
            fano()
                .edges()
                .iter()
                .map(|e| (0..7).filter(|v| !e.contains(*v)).collect::<Vec<_>>()),
        )
        .unwrap();
        assert!(!are_isomorphic(&k64, &comp));
        let tetra = Hypergraph::from_edges(4, (0..4).combinations(3)).unwrap();
        assert!(!are_isomorphic(&fano(), &tetra));
        // isolated vertices count
        let a = Hypergraph::from_edges(4, [[0, 1], [1, 2]]).unwrap();
        let b = Hypergraph::from_edges(5, [[0, 1], [1, 2]]).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn dedup_collapses_relabelings() {
        let f = fano();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let list: Vec<Hypergraph> = (0..100)
            .map(|_| {
                let mut perm: Vec<usize> = (0..7).collect();
                perm.shuffle(&mut rng);
                f.relabel(&perm)
            })
            .collect();
        assert_eq!(dedup(&list).len(), 1);
        assert!(dedup(&Vec::new()).is_empty());
    }

    #[test]
    fn empty_and_edgeless() {
        let e = Hypergraph::empty(0);
        assert_eq!(canonical_form(&e).vertex_count(), 0);
        let e5 = Hypergraph::empty(5);
        let lab = canonical_labeling(&e5);
        assert!(lab.form.columns().is_empty());
    }

    #[test]
    fn set_orbit_under_fano_group() {
        let f = fano();
        let lab = canonical_labeling(&f);
        // lines form one orbit of size 7
        let orbit = set_orbit(f.edge(0), &lab.generators);
        assert_eq!(orbit.len(), 7);
    }
}
