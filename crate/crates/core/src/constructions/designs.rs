//! Small named configurations: complete uniform families, grid crosses,
//! biplanes, the three-hares family and the affine-plane duals.

use itertools::Itertools;

use crate::constructions::plane::projective_plane;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

/// All `r`-subsets of an `n`-set.
pub fn complete_subsets(n: usize, r: usize) -> Result<Hypergraph> {
    if r == 0 || r > n || n > 24 {
        return Err(Error::InfeasibleParameters(format!(
            "complete subsets need 1 <= r <= n <= 24 (got n={n}, r={r})"
        )));
    }
    Hypergraph::from_edges(n, (0..n).combinations(r))
}

/// Biplane of order 1: the four faces of a tetrahedron.
pub fn tetrahedron() -> Hypergraph {
    complete_subsets(4, 3).expect("valid parameters")
}

/// The Fano plane `PG(2, 2)`.
pub fn fano() -> Hypergraph {
    projective_plane(2).expect("order 2 supported").hypergraph
}

/// Complements of the Fano lines: the biplane of order 2.
pub fn fano_complement() -> Hypergraph {
    let f = fano();
    let all = f.vertices();
    let edges = f.edges().iter().map(|l| all.difference(*l)).collect();
    Hypergraph::new(7, edges).expect("complements are distinct")
}

/// Crosses of a `rows x cols` grid: cell `(i, j)` is vertex `i * cols + j`,
/// and each cell contributes its whole row and column as one edge.
pub fn cross_grid(rows: usize, cols: usize) -> Result<Hypergraph> {
    if rows < 2 || cols < 2 || rows * cols > 128 {
        return Err(Error::InfeasibleParameters(format!(
            "cross grid needs 2 <= rows, cols and at most 128 cells (got {rows}x{cols})"
        )));
    }
    let mut edges = Vec::with_capacity(rows * cols);
    for a in 0..rows {
        for b in 0..cols {
            let mut e = VertexSet::EMPTY;
            for j in 0..cols {
                e.insert(a * cols + j);
            }
            for i in 0..rows {
                e.insert(i * cols + b);
            }
            edges.push(e);
        }
    }
    Hypergraph::new(rows * cols, edges)
}

/// The 16-point biplane on a 4x4 grid: for every cell, the other three
/// cells of its row and the other three of its column.
pub fn kummer() -> Hypergraph {
    let mut edges = Vec::with_capacity(16);
    for a in 0..4 {
        for b in 0..4 {
            let mut e = VertexSet::EMPTY;
            for j in (0..4).filter(|&j| j != b) {
                e.insert(4 * a + j);
            }
            for i in (0..4).filter(|&i| i != a) {
                e.insert(4 * i + b);
            }
            edges.push(e);
        }
    }
    Hypergraph::new(16, edges).expect("distinct blocks")
}

/// Translates of the quadratic residues `{1, 3, 4, 5, 9}` modulo 11.
pub fn paley_biplane() -> Hypergraph {
    const RESIDUES: [usize; 5] = [1, 3, 4, 5, 9];
    Hypergraph::from_edges(11, (0..11).map(|x| RESIDUES.iter().map(move |d| (x + d) % 11)))
        .expect("distinct blocks")
}

// 1-based labels as drawn in the three-hares figure.
const HARES_BASE: [[usize; 5]; 3] = [[1, 2, 3, 4, 10], [4, 5, 6, 7, 10], [7, 8, 9, 1, 10]];
const HARES_EXTRA: [[usize; 5]; 3] = [[9, 1, 2, 5, 6], [3, 4, 5, 8, 9], [2, 3, 6, 7, 8]];
const HARES_H1: [[usize; 5]; 3] = [[1, 2, 3, 4, 5], [4, 5, 6, 7, 8], [7, 8, 9, 1, 2]];

fn one_based(n: usize, edges: &[[usize; 5]]) -> Hypergraph {
    Hypergraph::from_edges(n, edges.iter().map(|e| e.iter().map(|v| v - 1)))
        .expect("valid labels")
}

/// The three-hares 5-uniform family on 10 vertices: three edges through a
/// common centre, or (`extended`) the six-edge 3-regular 2-intersecting
/// completion.
pub fn three_hares(extended: bool) -> Hypergraph {
    if extended {
        let all: Vec<[usize; 5]> = HARES_BASE.iter().chain(&HARES_EXTRA).copied().collect();
        one_based(10, &all)
    } else {
        one_based(10, &HARES_BASE)
    }
}

/// Three 5-sets on 9 vertices arranged in a cycle, pairwise meeting in two
/// vertices, with no common vertex.
pub fn hares_h1() -> Hypergraph {
    one_based(9, &HARES_H1)
}

/// Lines of `AG(2, 3)` as point sets over `x + 3y`, grouped by parallel class
/// (horizontal, vertical, slope 1, slope 2; three lines each).
pub fn ag23_lines() -> Vec<VertexSet> {
    let pt = |x: usize, y: usize| (x % 3) + 3 * (y % 3);
    let mut lines = Vec::with_capacity(12);
    for b in 0..3 {
        lines.push((0..3).map(|x| pt(x, b)).collect());
    }
    for b in 0..3 {
        lines.push((0..3).map(|y| pt(b, y)).collect());
    }
    for slope in 1..3 {
        for b in 0..3 {
            lines.push((0..3).map(|x| pt(x, slope * x + b)).collect());
        }
    }
    lines
}

/// Dual of `AG(2, 3)`: the 12 lines are the vertices and each of the 9
/// points is the edge of the 4 lines through it.
pub fn ag23_dual() -> Hypergraph {
    let lines = ag23_lines();
    let edges = (0..9)
        .map(|p| {
            lines
                .iter()
                .enumerate()
                .filter(|(_, l)| l.contains(p))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Hypergraph::new(12, edges).expect("distinct points")
}

/// The 5-uniform intersecting family with 12 edges and degrees `4^9 2^12`
/// carried by the dual of `AG(2, 3)`: edges are the affine lines, vertices
/// are the 9 points (0..9) plus one vertex per pair of parallel lines
/// (9..21).
pub fn ag23_pbd() -> Hypergraph {
    let lines = ag23_lines();
    let mut edges = lines.clone();
    let mut next = 9;
    for class in 0..4 {
        for (a, b) in (0..3).tuple_combinations() {
            edges[3 * class + a].insert(next);
            edges[3 * class + b].insert(next);
            next += 1;
        }
    }
    Hypergraph::new(21, edges).expect("distinct lines")
}

/// The 4-cover of [`ag23_pbd`]: the three points of line 0 and the vertex
/// shared by the two lines parallel to it.
pub fn ag23_pbd_cover() -> VertexSet {
    let lines = ag23_lines();
    let mut c = lines[0];
    // pairs of class 0 in order (0,1), (0,2), (1,2) occupy vertices 9, 10, 11
    c.insert(11);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{covering_number_oracle, is_cover};

    #[test]
    fn tetrahedron_shape() {
        let t = tetrahedron();
        assert_eq!(t.edge_count(), 4);
        assert!(t.is_uniform(3) && t.is_t_intersecting(2));
    }

    #[test]
    fn fano_complement_is_a_biplane() {
        let h = fano_complement();
        assert!(h.is_uniform(4));
        let p = h.intersection_profile();
        assert_eq!((p.t_min, p.t_max), (Some(2), Some(2)));
    }

    #[test]
    fn cross_grid_shape() {
        let h = cross_grid(3, 3).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (9, 9));
        assert!(h.is_uniform(5) && h.is_t_intersecting(2));
        assert!(cross_grid(1, 3).is_err());
    }

    #[test]
    fn kummer_is_a_biplane() {
        let k = kummer();
        assert_eq!(k.edge_count(), 16);
        assert!(k.is_uniform(6));
        let p = k.intersection_profile();
        assert_eq!((p.t_min, p.t_max), (Some(2), Some(2)));
        // a full row covers; no three points do
        assert!(is_cover(&k, VertexSet::from_iter([0, 1, 2, 3])));
    }

    #[test]
    fn paley_pairs_in_two_blocks() {
        let h = paley_biplane();
        assert!(h.is_uniform(5));
        for x in 0..11 {
            for y in x + 1..11 {
                let pair = VertexSet::from_iter([x, y]);
                assert_eq!(h.edges().iter().filter(|e| pair.is_subset(**e)).count(), 2);
            }
        }
    }

    #[test]
    fn hares() {
        let base = three_hares(false);
        assert_eq!(base.edge_count(), 3);
        assert_eq!(base.degree(9), 3);
        let ext = three_hares(true);
        assert_eq!(ext.edge_count(), 6);
        assert!(ext.is_uniform(5) && ext.is_t_intersecting(2));
        assert!(ext.degrees().iter().all(|&d| d == 3));
        let h1 = hares_h1();
        assert!(h1.is_t_intersecting(2));
        assert_eq!(covering_number_oracle(&h1).tau, 2);
    }

    #[test]
    fn ag23_structures() {
        let d = ag23_dual();
        assert_eq!((d.vertex_count(), d.edge_count()), (12, 9));
        assert!(d.is_uniform(4));
        assert!(d.degrees().iter().all(|&x| x == 3));

        let h = ag23_pbd();
        assert!(h.is_uniform(5) && h.is_intersecting());
        let mut degs = h.degrees();
        degs.sort_unstable();
        assert_eq!(degs, [vec![2; 12], vec![4; 9]].concat());
        assert!(is_cover(&h, ag23_pbd_cover()));
        assert_eq!(ag23_pbd_cover().len(), 4);
    }
}
