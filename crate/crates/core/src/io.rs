//! Text formats: 0/1 incidence matrices (rows are vertices, columns are
//! edges), block lists (one edge per line), and level dumps of the descent.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

/// Parses a rectangular 0/1 matrix. Blank lines and whitespace inside a row
/// are ignored; column `j` becomes edge `j`.
pub fn parse_incidence(text: &str) -> Result<Hypergraph> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    let mut width = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(line.len());
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::NonBinaryCharacter {
                        line: line_no,
                        column: col + 1,
                        ch: c,
                    })
                }
            }
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::RaggedMatrix {
                    line: line_no,
                    expected: w,
                    found: row.len(),
                })
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    let m = width.unwrap_or(0);
    let edges = (0..m)
        .map(|j| rows.iter().enumerate().filter(|(_, r)| r[j]).map(|(i, _)| i).collect())
        .collect();
    Hypergraph::new(rows.len(), edges)
}

/// Writes the incidence matrix, one vertex per line, edges in stored order.
pub fn serialize_incidence(h: &Hypergraph) -> String {
    let mut out = String::with_capacity(h.vertex_count() * (h.edge_count() + 1));
    for v in 0..h.vertex_count() {
        for e in h.edges() {
            out.push(if e.contains(v) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// A parsed block list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockList {
    /// Header lines that precede the first block.
    pub header: Vec<String>,
    pub hypergraph: Hypergraph,
    /// `labels[v]` is the label of vertex `v` in the input.
    pub labels: Vec<usize>,
}

impl BlockList {
    /// True when the input labels were not already `0..n`.
    pub fn compacted(&self) -> bool {
        self.labels.iter().enumerate().any(|(i, &l)| i != l)
    }

    /// Translates an input label to its vertex index.
    pub fn vertex_of(&self, label: usize) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }
}

/// Parses one block per line, labels separated by whitespace or commas.
/// Lines before the first block that do not start with a digit form the
/// header. Labels are compacted to `0..n` preserving their order.
pub fn parse_blocks(text: &str) -> Result<BlockList> {
    let mut header = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut pending_blank = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            if !blocks.is_empty() && pending_blank.is_none() {
                pending_blank = Some(line_no);
            }
            continue;
        }
        if blocks.is_empty() && !trimmed.starts_with(|c: char| c.is_ascii_digit()) {
            header.push(trimmed.to_string());
            continue;
        }
        if let Some(blank) = pending_blank {
            return Err(Error::EmptyBlock { line: blank });
        }
        let block = trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::InvalidToken {
                    line: line_no,
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.push(block);
    }
    let labels: Vec<usize> = blocks
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let edges = blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|l| labels.binary_search(l).expect("label collected"))
                .collect()
        })
        .collect();
    let hypergraph = Hypergraph::new(labels.len(), edges)?;
    Ok(BlockList {
        header,
        hypergraph,
        labels,
    })
}

/// One edge per line, vertices ascending, space separated.
pub fn to_blocks(h: &Hypergraph) -> String {
    let mut out = String::new();
    for e in h.edges() {
        let line = e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parses a vertex list such as `0,1,2,8` or `0 1 2 8`.
pub fn parse_vertex_list(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|tok| !tok.is_empty())
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::InvalidToken {
                line: 1,
                token: tok.to_string(),
            })
        })
        .collect()
}

/// A descent level: the frontier hypergraphs at `level` edges in `PG(2, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDump {
    pub level: usize,
    pub q: usize,
    pub hypergraphs: Vec<Hypergraph>,
}

/// Header line `level=<m> q=<q>`, then one incidence matrix per class,
/// blocks separated by blank lines.
pub fn write_level_dump(dump: &LevelDump) -> String {
    let mut out = String::new();
    writeln!(out, "level={} q={}", dump.level, dump.q).expect("write to string");
    for h in &dump.hypergraphs {
        out.push('\n');
        out.push_str(&serialize_incidence(h));
    }
    out
}

pub fn read_level_dump(text: &str) -> Result<LevelDump> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedDump("empty input".into()))?;
    let mut level = None;
    let mut q = None;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::MalformedDump(format!("bad header field {field:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| Error::MalformedDump(format!("bad header value {field:?}")))?;
        match key {
            "level" => level = Some(value),
            "q" => q = Some(value),
            _ => return Err(Error::MalformedDump(format!("unknown header key {key:?}"))),
        }
    }
    let (level, q) = level
        .zip(q)
        .ok_or_else(|| Error::MalformedDump("header needs level and q".into()))?;

    let mut hypergraphs = Vec::new();
    let mut block = String::new();
    for line in lines.chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if !block.is_empty() {
                let h = parse_incidence(&block)?;
                if h.edge_count() != level {
                    return Err(Error::MalformedDump(format!(
                        "block has {} edges, header says {level}",
                        h.edge_count()
                    )));
                }
                hypergraphs.push(h);
                block.clear();
            }
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    Ok(LevelDump {
        level,
        q,
        hypergraphs,
    })
}

/// Vertex set from explicit indices, checked against `n`.
pub fn vertex_set(n: usize, vertices: &[usize]) -> Result<VertexSet> {
    vertices
        .iter()
        .map(|&v| {
            if v < n {
                Ok(v)
            } else {
                Err(Error::VertexOutOfRange { vertex: v, n })
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incidence_columns_are_edges() {
        let h = parse_incidence("10\n01\n").unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edges(), &[VertexSet::singleton(0), VertexSet::singleton(1)]);
        assert_eq!(serialize_incidence(&h), "10\n01\n");
    }

    #[test]
    fn incidence_errors() {
        assert_eq!(
            parse_incidence("101\n01\n").unwrap_err(),
            Error::RaggedMatrix {
                line: 2,
                expected: 3,
                found: 2
            }
        );
        assert_eq!(
            parse_incidence("10\n0x\n").unwrap_err(),
            Error::NonBinaryCharacter {
                line: 2,
                column: 2,
                ch: 'x'
            }
        );
        assert!(matches!(
            parse_incidence("11\n11\n").unwrap_err(),
            Error::DuplicateEdge { .. }
        ));
    }

    #[test]
    fn blocks_tetrahedron() {
        let b = parse_blocks("0 1 2\n0 1 3\n0 2 3\n1 2 3\n").unwrap();
        assert_eq!(b.hypergraph.edge_count(), 4);
        assert!(!b.compacted());
    }

    #[test]
    fn blocks_header_commas_and_compaction() {
        let b = parse_blocks("biplane test\n\n5, 7\n7 9\n").unwrap();
        assert_eq!(b.header, vec!["biplane test".to_string()]);
        assert_eq!(b.labels, vec![5, 7, 9]);
        assert!(b.compacted());
        assert_eq!(b.vertex_of(9), Some(2));
        assert_eq!(b.hypergraph.edge(1), VertexSet::from_iter([1, 2]));
    }

    #[test]
    fn blocks_interior_blank_line() {
        assert_eq!(
            parse_blocks("0 1\n\n1 2\n").unwrap_err(),
            Error::EmptyBlock { line: 2 }
        );
        // trailing blank lines are fine
        assert!(parse_blocks("0 1\n1 2\n\n\n").is_ok());
        assert!(matches!(
            parse_blocks("0 1\n1 q\n").unwrap_err(),
            Error::InvalidToken { line: 2, .. }
        ));
    }

    #[test]
    fn level_dump_round_trip() {
        let a = parse_incidence("110\n101\n011\n").unwrap();
        let b = parse_incidence("111\n100\n010\n").unwrap();
        let dump = LevelDump {
            level: 3,
            q: 2,
            hypergraphs: vec![a, b],
        };
        let text = write_level_dump(&dump);
        assert!(text.starts_with("level=3 q=2\n\n"));
        assert_eq!(read_level_dump(&text).unwrap(), dump);
        assert!(read_level_dump("level=4 q=2\n\n110\n101\n011\n").is_err());
        assert!(read_level_dump("lvl=4\n").is_err());
    }
}
