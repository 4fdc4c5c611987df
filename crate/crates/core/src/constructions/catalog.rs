//! Named hypergraphs with their expected parameters. Every entry is checked
//! against its expectations when loaded.

use crate::constructions::designs::{
    ag23_dual, ag23_pbd, complete_subsets, cross_grid, fano, fano_complement, hares_h1, kummer,
    paley_biplane, tetrahedron, three_hares,
};
use crate::constructions::plane::{oval_lines, projective_plane};
use crate::cover::covering_number;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::io::parse_incidence;

/// Where an entry comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Built by a construction in this crate.
    Construction,
    /// A published incidence matrix, embedded verbatim.
    PublishedMatrix,
}

/// Parameters an entry must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    /// Every pair of edges shares at least `t` vertices (0: no claim).
    pub t: usize,
    pub tau: usize,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub hypergraph: Hypergraph,
    pub expected: Expected,
}

impl CatalogEntry {
    /// Recomputes every expected property; `CatalogMismatch` on the first
    /// disagreement.
    pub fn verify(&self) -> Result<()> {
        let h = &self.hypergraph;
        let e = &self.expected;
        let fail = |detail: String| Error::CatalogMismatch {
            name: self.name.clone(),
            detail,
        };
        if h.vertex_count() != e.n || h.edge_count() != e.m {
            return Err(fail(format!(
                "shape {}x{}, expected {}x{}",
                h.vertex_count(),
                h.edge_count(),
                e.n,
                e.m
            )));
        }
        if !h.is_uniform(e.r) {
            return Err(fail(format!("not {}-uniform", e.r)));
        }
        if e.t > 0 && !h.is_t_intersecting(e.t) {
            return Err(fail(format!("not {}-intersecting", e.t)));
        }
        let tau = covering_number(h).tau;
        if tau != e.tau {
            return Err(fail(format!("tau {tau}, expected {}", e.tau)));
        }
        Ok(())
    }
}

/// Fixed names; parametric families are `complete_<n>_<r>`,
/// `cross_grid_<rows>_<cols>`, `pg2_<q>` and `oval_<q>`.
pub const FIXED_NAMES: [&str; 14] = [
    "tetrahedron",
    "fano",
    "fano_complement",
    "paley",
    "kummer",
    "three_hares",
    "three_hares_base",
    "hares_h1",
    "ag23_dual",
    "ag23_pbd",
    "q4_unique",
    "q5_B1",
    "m5_example",
    "m6_unique",
];

/// Loads and verifies a named entry.
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let entry = build(name)?;
    entry.verify()?;
    Ok(entry)
}

/// Loads an entry without recomputing its properties.
pub fn catalog_unchecked(name: &str) -> Result<CatalogEntry> {
    build(name)
}

/// The fixed names plus the parametric instances used as a test corpus.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = FIXED_NAMES.iter().map(|s| s.to_string()).collect();
    names.extend(["complete_4_3", "complete_6_4", "complete_7_4", "complete_8_5"].map(String::from));
    for a in 2..=4 {
        for b in a..=4 {
            names.push(format!("cross_grid_{a}_{b}"));
        }
    }
    names.extend(["pg2_3", "pg2_4", "oval_3", "oval_4", "oval_5"].map(String::from));
    names
}

/// All corpus entries, verified.
pub fn builtin_corpus() -> Result<Vec<CatalogEntry>> {
    catalog_names().iter().map(|n| catalog(n)).collect()
}

fn entry(name: &str, hypergraph: Hypergraph, r: usize, t: usize, tau: usize, provenance: Provenance) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        expected: Expected {
            n: hypergraph.vertex_count(),
            m: hypergraph.edge_count(),
            r,
            t,
            tau,
            provenance,
        },
        hypergraph,
    }
}

fn published(name: &str, matrix: &str, n: usize, m: usize, r: usize, tau: usize) -> Result<CatalogEntry> {
    let h = parse_incidence(matrix)?;
    let mut e = entry(name, h, r, 1, tau, Provenance::PublishedMatrix);
    // shape is part of the expectation, not read off the parse
    e.expected.n = n;
    e.expected.m = m;
    Ok(e)
}

fn params(rest: &str, count: usize) -> Option<Vec<usize>> {
    let v: Vec<usize> = rest.split('_').map(|s| s.parse().ok()).collect::<Option<_>>()?;
    (v.len() == count).then_some(v)
}

fn build(name: &str) -> Result<CatalogEntry> {
    use Provenance::Construction as C;
    let unknown = || Error::UnknownName(name.to_string());
    Ok(match name {
        "tetrahedron" => entry(name, tetrahedron(), 3, 2, 2, C),
        "fano" => entry(name, fano(), 3, 1, 3, C),
        "fano_complement" => entry(name, fano_complement(), 4, 2, 3, C),
        "paley" => entry(name, paley_biplane(), 5, 2, 4, C),
        "kummer" => entry(name, kummer(), 6, 2, 4, C),
        "three_hares" => entry(name, three_hares(true), 5, 2, 3, C),
        "three_hares_base" => entry(name, three_hares(false), 5, 2, 1, C),
        "hares_h1" => entry(name, hares_h1(), 5, 2, 2, C),
        "ag23_dual" => entry(name, ag23_dual(), 4, 1, 3, C),
        "ag23_pbd" => entry(name, ag23_pbd(), 5, 1, 4, C),
        "q4_unique" => published(name, Q4_UNIQUE, 11, 9, 4, 4)?,
        "q5_B1" => published(name, Q5_B1, 17, 13, 5, 5)?,
        "m5_example" => published(name, M5_EXAMPLE, 21, 14, 5, 5)?,
        "m6_unique" => published(name, M6_UNIQUE, 31, 18, 6, 6)?,
        _ => {
            if let Some(rest) = name.strip_prefix("complete_") {
                let p = params(rest, 2).ok_or_else(unknown)?;
                let (n, r) = (p[0], p[1]);
                let h = complete_subsets(n, r)?;
                entry(name, h, r, (2 * r).saturating_sub(n), n - r + 1, C)
            } else if let Some(rest) = name.strip_prefix("cross_grid_") {
                let p = params(rest, 2).ok_or_else(unknown)?;
                let h = cross_grid(p[0], p[1])?;
                entry(name, h, p[0] + p[1] - 1, 2, p[0].min(p[1]), C)
            } else if let Some(rest) = name.strip_prefix("pg2_") {
                let q = params(rest, 1).ok_or_else(unknown)?[0];
                entry(name, projective_plane(q)?.hypergraph, q + 1, 1, q + 1, C)
            } else if let Some(rest) = name.strip_prefix("oval_") {
                let q = params(rest, 1).ok_or_else(unknown)?[0];
                entry(name, oval_lines(q)?, q + 1, 1, q + 1, C)
            } else {
                return Err(unknown());
            }
        }
    })
}

const Q4_UNIQUE: &str = "\
111000001
100110000
100011000
100000111
010100100
010010011
010001100
001100010
001010100
001001010
000101001
";

const Q5_B1: &str = "\
1111000000000
1100000000110
1010100100000
1000010001001
1000001110000
0101101000000
0100010100010
0100000011001
0011010010000
0010001001010
0010001000101
0001000101010
0001000100101
0000111000000
0000100010011
0000100001100
0000010010100
";

const M5_EXAMPLE: &str = "\
11000000000000
00110000000000
00001100000000
00000011110000
00000000001111
00000010001000
00100001000100
00001000100010
00010100010001
00000000100001
00100000010010
00000110000100
00011001001000
10001000010100
10100100101000
10000001000001
10010010000010
01000101000010
01101010000001
01000000011000
01010000100100
";

const M6_UNIQUE: &str = "\
111000000000000000
000110000000000000
000001110000000000
000000001110000000
000000000001111100
000000000000000011
000001001001000000
000100000100100010
000010000010010000
000000100000001001
000000010000000100
100000100000100000
100101000000010000
100010001000000101
100000010011000010
100000000100001000
010000010100010001
010100100010000100
010011000000001010
010000001000100000
010000000001000000
000000000010001000
000100000001000001
000010010000100000
000001000100000100
000000101000010010
001000000000000110
001100011000001000
001010100101000000
001000000000010000
001001000010100001
";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::are_isomorphic;

    const FANO_COMPLETION: &str = "\
1000111
1011001
1101010
1110100
0110011
0101101
0011110
";

    #[test]
    fn published_matrices_verify() {
        for name in ["q4_unique", "q5_B1", "m5_example", "m6_unique"] {
            let e = catalog(name).unwrap();
            assert_eq!(e.expected.provenance, Provenance::PublishedMatrix);
        }
    }

    #[test]
    fn constructions_verify() {
        for name in FIXED_NAMES {
            catalog(name).unwrap_or_else(|err| panic!("{name}: {err}"));
        }
        for name in ["complete_4_3", "complete_8_5", "cross_grid_2_4", "pg2_2", "oval_3"] {
            catalog(name).unwrap_or_else(|err| panic!("{name}: {err}"));
        }
    }

    #[test]
    fn unknown_names() {
        for name in ["nope", "complete_x_3", "cross_grid_3", "pg2_6"] {
            assert!(catalog(name).is_err(), "{name}");
        }
        assert_eq!(catalog("nope").unwrap_err(), Error::UnknownName("nope".into()));
    }

    #[test]
    fn mismatch_is_reported() {
        let mut e = catalog_unchecked("fano").unwrap();
        e.expected.tau = 2;
        assert!(matches!(e.verify(), Err(Error::CatalogMismatch { .. })));
    }

    #[test]
    fn fano_completion_matrix_is_the_fano_complement() {
        let h = parse_incidence(FANO_COMPLETION).unwrap();
        assert!(are_isomorphic(&h, &fano_complement()));
    }

    #[test]
    fn descent_matrices_live_in_their_planes() {
        use crate::constructions::plane::complete_to_plane;
        for (name, q) in [("m5_example", 4), ("m6_unique", 5)] {
            let h = catalog(name).unwrap().hypergraph;
            let added = complete_to_plane(&h, q).expect("completes to a plane");
            let mut edges = h.edges().to_vec();
            edges.extend(added);
            let full = Hypergraph::new(h.vertex_count(), edges).unwrap();
            assert!(are_isomorphic(&full, &projective_plane(q).unwrap().hypergraph), "{name}");
        }
    }

    #[test]
    fn corpus_is_complete() {
        let corpus = builtin_corpus().unwrap();
        assert_eq!(corpus.len(), catalog_names().len());
    }
}
