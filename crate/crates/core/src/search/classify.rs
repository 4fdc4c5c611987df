//! Classification of `r`-uniform 2-intersecting hypergraphs with covering
//! number `r - 1`.
//!
//! Such a hypergraph has minimum degree at least `r` (a vertex of smaller
//! degree yields a cover of size `r - 2`), so `n <= m`, and its maximum
//! degree obeys [`max_degree_cap`]. A cover-critical one has at most
//! `C(2r-2, r)` edges. Any other contains a critical one and is reached
//! from it by adding edges one at a time, each intermediate again having
//! covering number `r - 1` and hence no vertex of degree 1; so the extra
//! edges use no new vertices. The search sweeps all `(n, m)` with
//! `m <= C(2r-2, r)` and then closes the result under single-edge
//! additions on the same vertex set.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use itertools::Itertools;

use crate::canonical::{canonical_form, CanonicalForm};
use crate::cover::{max_degree_cap, tau_at_most};
use crate::error::{Error, Result};
use crate::hypergraph::{max_pair_count, Hypergraph, VertexSet};
use crate::search::{binomial, generate, SearchSpec};

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub r: usize,
    /// `(n, m, class_count, extremal_count)` for every searched pair.
    pub sweep: Vec<(usize, usize, usize, usize)>,
    /// All extremal classes, in canonical-key order.
    pub classes: Vec<Hypergraph>,
    pub wall_time: Duration,
}

/// All `r`-uniform 2-intersecting hypergraphs without isolated vertices and
/// with covering number `r - 1`, up to isomorphism.
pub fn verify_classification(r: usize) -> Result<ClassificationReport> {
    if !(3..=4).contains(&r) {
        return Err(Error::PreconditionViolated(format!(
            "classification is available for r = 3 and r = 4 (got {r})"
        )));
    }
    let start = Instant::now();
    let target = r - 1;
    let max_edges = binomial(2 * r - 2, r);
    let mut sweep = Vec::new();
    let mut found: BTreeSet<CanonicalForm> = BTreeSet::new();
    for m in 1..=max_edges {
        let Ok(cap) = max_degree_cap(m, r, target, true) else {
            continue;
        };
        if cap < r {
            continue;
        }
        for n in r..=m {
            if n * r > m * r || n * cap < m * r {
                continue;
            }
            match max_pair_count(n, m * r, r, cap) {
                Some(best) if best >= 2 * m * (m - 1) => {}
                _ => continue,
            }
            let spec = SearchSpec::new(r, 2, n, m)
                .with_degrees(r, cap)
                .with_target(target);
            let report = generate(&spec)?;
            sweep.push((n, m, report.class_count, report.extremal_count));
            found.extend(report.extremal().map(canonical_form));
        }
    }
    // closure under adding edges on the existing vertices
    let mut stack: Vec<CanonicalForm> = found.iter().cloned().collect();
    while let Some(form) = stack.pop() {
        let h = form.to_hypergraph();
        for extra in (0..h.vertex_count()).combinations(r).map(VertexSet::from_iter) {
            if h.edges().contains(&extra) || h.edges().iter().any(|e| e.intersection_len(extra) < 2) {
                continue;
            }
            let bigger = h.with_edge(extra)?;
            if !tau_at_most(&bigger, target - 1) {
                let f = canonical_form(&bigger);
                if found.insert(f.clone()) {
                    stack.push(f);
                }
            }
        }
    }
    Ok(ClassificationReport {
        r,
        sweep,
        classes: found.iter().map(CanonicalForm::to_hypergraph).collect(),
        wall_time: start.elapsed(),
    })
}
