use crate::constructions::field::FiniteField;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

/// Orders for which [`projective_plane`] is available.
pub const PLANE_ORDERS: [usize; 7] = [2, 3, 4, 5, 7, 8, 9];

/// The Desarguesian plane `PG(2, q)`.
#[derive(Clone, Debug)]
pub struct ProjectivePlane {
    pub order: usize,
    /// Lines as edges over the points.
    pub hypergraph: Hypergraph,
    /// Normalized homogeneous coordinates: first nonzero entry is 1.
    pub points: Vec<[u8; 3]>,
    /// Line `[a, b, c]` holds the points with `ax + by + cz = 0`.
    pub lines: Vec<[u8; 3]>,
}

impl ProjectivePlane {
    pub fn point_index(&self, coords: [u8; 3]) -> Option<usize> {
        self.points.iter().position(|&p| p == coords)
    }

    /// Checks that any two points share exactly one line and any two lines
    /// exactly one point.
    pub fn check_axioms(&self) -> bool {
        let h = &self.hypergraph;
        let n = h.vertex_count();
        let q = self.order;
        if n != q * q + q + 1 || h.edge_count() != n || !h.is_uniform(q + 1) {
            return false;
        }
        for (i, a) in h.edges().iter().enumerate() {
            for b in &h.edges()[i + 1..] {
                if a.intersection_len(*b) != 1 {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                let pair = VertexSet::from_iter([x, y]);
                if h.edges().iter().filter(|e| pair.is_subset(**e)).count() != 1 {
                    return false;
                }
            }
        }
        true
    }
}

fn normalized_triples(q: u8) -> Vec<[u8; 3]> {
    let mut out = vec![[0, 0, 1]];
    for z in 0..q {
        out.push([0, 1, z]);
    }
    for y in 0..q {
        for z in 0..q {
            out.push([1, y, z]);
        }
    }
    out
}

/// `PG(2, q)`: points and lines are the 1- and 2-dimensional subspaces of
/// `GF(q)^3`.
pub fn projective_plane(q: usize) -> Result<ProjectivePlane> {
    if !PLANE_ORDERS.contains(&q) {
        return Err(Error::UnsupportedOrder(q));
    }
    let f = FiniteField::new(q)?;
    let triples = normalized_triples(q as u8);
    let dot = |l: &[u8; 3], p: &[u8; 3]| {
        let s = f.add(f.mul(l[0], p[0]), f.mul(l[1], p[1]));
        f.add(s, f.mul(l[2], p[2]))
    };
    let edges: Vec<VertexSet> = triples
        .iter()
        .map(|l| {
            triples
                .iter()
                .enumerate()
                .filter(|(_, p)| dot(l, p) == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let hypergraph = Hypergraph::new(triples.len(), edges)?;
    let plane = ProjectivePlane {
        order: q,
        hypergraph,
        points: triples.clone(),
        lines: triples,
    };
    debug_assert!(plane.check_axioms());
    Ok(plane)
}

/// Orders for which [`oval_lines`] is available.
pub const OVAL_ORDERS: [usize; 6] = [3, 4, 5, 7, 8, 9];

/// Secants and tangents of the conic `{(1, s, s^2)} + {(0, 0, 1)}` in
/// `PG(2, q)`: `(q+1)(q+2)/2` lines on all `q^2+q+1` points.
pub fn oval_lines(q: usize) -> Result<Hypergraph> {
    if !OVAL_ORDERS.contains(&q) {
        return Err(Error::UnsupportedOrder(q));
    }
    let plane = projective_plane(q)?;
    let f = FiniteField::new(q)?;
    let mut conic = VertexSet::EMPTY;
    conic.insert(plane.point_index([0, 0, 1]).expect("point exists"));
    for s in f.elements() {
        let idx = plane
            .point_index([1, s, f.mul(s, s)])
            .expect("normalized point exists");
        conic.insert(idx);
    }
    let edges: Vec<VertexSet> = plane
        .hypergraph
        .edges()
        .iter()
        .copied()
        .filter(|l| l.meets(conic))
        .collect();
    Hypergraph::new(plane.hypergraph.vertex_count(), edges)
}

/// Extends a set of `(q+1)`-point lines on `q^2+q+1` points to a projective
/// plane of order `q` by adding lines through the uncovered point pairs.
/// Returns the added lines, or `None` if no completion exists.
pub fn complete_to_plane(h: &Hypergraph, q: usize) -> Option<Vec<VertexSet>> {
    let n = q * q + q + 1;
    if h.vertex_count() != n || !h.is_uniform(q + 1) {
        return None;
    }
    let mut covered = vec![VertexSet::EMPTY; n];
    for e in h.edges() {
        for v in e.iter() {
            if covered[v].meets(e.difference(VertexSet::singleton(v))) {
                return None;
            }
            covered[v] = covered[v].union(*e);
        }
    }
    for (v, c) in covered.iter_mut().enumerate() {
        c.insert(v);
    }
    let mut added = Vec::new();
    extend_plane(&mut covered, q, n, &mut added).then_some(added)
}

fn extend_plane(covered: &mut [VertexSet], q: usize, n: usize, added: &mut Vec<VertexSet>) -> bool {
    let full = VertexSet::full(n);
    let Some(a) = (0..n).find(|&v| covered[v] != full) else {
        return true;
    };
    let b = full.difference(covered[a]).first().expect("uncovered partner");
    let line = VertexSet::from_iter([a, b]);
    grow_line(covered, q, n, line, b, added)
}

fn grow_line(
    covered: &mut [VertexSet],
    q: usize,
    n: usize,
    line: VertexSet,
    last: usize,
    added: &mut Vec<VertexSet>,
) -> bool {
    if line.len() == q + 1 {
        let saved: Vec<VertexSet> = line.iter().map(|v| covered[v]).collect();
        for v in line.iter() {
            covered[v] = covered[v].union(line);
        }
        added.push(line);
        if extend_plane(covered, q, n, added) {
            return true;
        }
        added.pop();
        for (v, s) in line.iter().zip(saved) {
            covered[v] = s;
        }
        return false;
    }
    // candidates: later than `last`, unjoined to every point already on the line
    let mut cand = VertexSet::full(n);
    for v in line.iter() {
        cand = cand.difference(covered[v]);
    }
    for c in cand.iter().filter(|&c| c > last) {
        let mut next = line;
        next.insert(c);
        if grow_line(covered, q, n, next, c, added) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planes_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7] {
            let p = projective_plane(q).unwrap();
            assert!(p.check_axioms(), "PG(2,{q})");
            assert_eq!(p.hypergraph.vertex_count(), q * q + q + 1);
        }
    }

    #[test]
    fn completion_recovers_removed_lines() {
        let plane = projective_plane(3).unwrap().hypergraph;
        let partial = Hypergraph::new(13, plane.edges()[..9].to_vec()).unwrap();
        let added = complete_to_plane(&partial, 3).unwrap();
        let mut added = added;
        added.sort_unstable();
        let mut removed = plane.edges()[9..].to_vec();
        removed.sort_unstable();
        assert_eq!(added, removed);
        // two lines meeting in two points cannot be completed
        let bad = Hypergraph::from_edges(13, [[0, 1, 2, 3], [0, 1, 4, 5]]).unwrap();
        assert!(complete_to_plane(&bad, 3).is_none());
    }

    #[test]
    fn order_six_is_unsupported() {
        assert_eq!(projective_plane(6).unwrap_err(), Error::UnsupportedOrder(6));
        assert!(oval_lines(2).is_err());
    }

    #[test]
    fn oval_line_counts() {
        for q in [3, 4, 5, 7] {
            let h = oval_lines(q).unwrap();
            assert_eq!(h.edge_count(), (q + 1) * (q + 2) / 2, "q={q}");
            assert!(h.is_uniform(q + 1));
        }
    }
}
