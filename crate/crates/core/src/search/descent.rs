//! Line-deletion descent inside `PG(2, q)`.
//!
//! Starting from all lines of the plane, each level deletes one line in all
//! ways that keep every point on at least two lines, merges the results up
//! to isomorphism, and splits them into the extremal classes (not coverable
//! by `q` points) and the rest.
//!
//! In [`DescentMode::Full`] every class of a level is expanded, so the class
//! count of a level is the number of all line sets reachable through
//! minimum-degree-2 deletions. In [`DescentMode::ExtremalOnly`] only the
//! extremal frontier is expanded; extremal counts agree in both modes since
//! every superset of an extremal set is extremal.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::canonical::{canonical_form, canonical_labeling, orbit_representatives, CanonicalForm};
use crate::constructions::plane::{complete_to_plane, projective_plane};
use crate::cover::tau_at_most;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

/// Orders accepted by [`descend`].
pub const DESCENT_ORDERS: [usize; 5] = [2, 3, 4, 5, 7];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DescentMode {
    /// Expand every class of each level.
    #[default]
    Full,
    /// Expand only the extremal frontier.
    ExtremalOnly,
}

/// One level of the descent: canonical line sets of `PG(2, q)` with `edges`
/// lines and minimum degree at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentState {
    pub q: usize,
    pub edges: usize,
    pub mode: DescentMode,
    /// Classes with covering number `q + 1`.
    pub frontier: Vec<Hypergraph>,
    /// Classes coverable by `q` points (always empty in extremal-only mode).
    pub coverable: Vec<Hypergraph>,
}

/// Statistics of one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentLevel {
    pub edges: usize,
    /// Classes at this level.
    pub class_count: usize,
    /// Classes not coverable by `q` points.
    pub extremal_count: usize,
    /// The extremal classes, in canonical-key order.
    pub representatives: Vec<Hypergraph>,
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub q: usize,
    pub levels: Vec<DescentLevel>,
    /// Smallest level with an extremal class, when the descent ran until a
    /// level had none.
    pub m: Option<usize>,
}

fn check_order(q: usize) -> Result<()> {
    if DESCENT_ORDERS.contains(&q) {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder(q))
    }
}

impl DescentState {
    /// The full plane.
    pub fn start(q: usize, mode: DescentMode) -> Result<Self> {
        check_order(q)?;
        let plane = projective_plane(q)?.hypergraph;
        Ok(DescentState {
            q,
            edges: plane.edge_count(),
            mode,
            frontier: vec![canonical_form(&plane).to_hypergraph()],
            coverable: Vec::new(),
        })
    }

    /// Rebuilds a level from saved line sets. Each member must be a set of
    /// lines of `PG(2, q)` with minimum degree at least 2; members are
    /// re-canonized and re-split by covering number.
    pub fn resume(q: usize, mode: DescentMode, classes: Vec<Hypergraph>) -> Result<Self> {
        check_order(q)?;
        let points = q * q + q + 1;
        let edges = classes.first().map_or(0, Hypergraph::edge_count);
        for h in &classes {
            let ok = h.vertex_count() == points
                && h.edge_count() == edges
                && h.min_degree() >= 2
                && complete_to_plane(h, q).is_some();
            if !ok {
                return Err(Error::PreconditionViolated(format!(
                    "level member is not a set of {edges} lines of PG(2,{q}) with minimum degree 2"
                )));
            }
        }
        let forms: BTreeSet<CanonicalForm> = classes.iter().map(canonical_form).collect();
        let (frontier, coverable) = split(q, forms);
        let coverable = match mode {
            DescentMode::Full => coverable,
            DescentMode::ExtremalOnly => Vec::new(),
        };
        Ok(DescentState {
            q,
            edges,
            mode,
            frontier,
            coverable,
        })
    }

    /// All classes held at this level.
    pub fn classes(&self) -> impl Iterator<Item = &Hypergraph> {
        self.frontier.iter().chain(&self.coverable)
    }

    /// Deletes one line in all admissible ways. Returns the statistics of the
    /// new level and its state.
    pub fn step(&self) -> (DescentLevel, DescentState) {
        let start = Instant::now();
        let parents: Vec<&Hypergraph> = match self.mode {
            DescentMode::Full => self.classes().collect(),
            DescentMode::ExtremalOnly => self.frontier.iter().collect(),
        };
        let children: BTreeSet<CanonicalForm> = parents
            .par_iter()
            .map(|h| deletions(h))
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        let class_count = children.len();
        let (frontier, coverable) = split(self.q, children);
        let edges = self.edges - 1;
        let level = DescentLevel {
            edges,
            class_count,
            extremal_count: frontier.len(),
            representatives: frontier.clone(),
            wall_time: start.elapsed(),
        };
        let next = DescentState {
            q: self.q,
            edges,
            mode: self.mode,
            frontier,
            coverable: match self.mode {
                DescentMode::Full => coverable,
                DescentMode::ExtremalOnly => Vec::new(),
            },
        };
        (level, next)
    }
}

/// Splits canonical classes into (not coverable by `q` points, coverable).
fn split(q: usize, forms: BTreeSet<CanonicalForm>) -> (Vec<Hypergraph>, Vec<Hypergraph>) {
    let classes: Vec<Hypergraph> = forms.iter().map(CanonicalForm::to_hypergraph).collect();
    let extremal: Vec<bool> = classes.par_iter().map(|h| !tau_at_most(h, q)).collect();
    let mut frontier = Vec::new();
    let mut coverable = Vec::new();
    for (h, ext) in classes.into_iter().zip(extremal) {
        if ext {
            frontier.push(h);
        } else {
            coverable.push(h);
        }
    }
    (frontier, coverable)
}

/// Canonical forms of `h` minus one line, over line orbits, keeping every
/// degree at least 2.
fn deletions(h: &Hypergraph) -> BTreeSet<CanonicalForm> {
    let degrees = h.degrees();
    let labeling = canonical_labeling(h);
    let edges = h.edges();
    let m = edges.len();
    let index = |e: VertexSet| edges.iter().position(|&f| f == e);
    let line_gens: Vec<Vec<usize>> = labeling
        .generators
        .iter()
        .map(|g| {
            (0..m)
                .map(|i| index(edges[i].map(g)).expect("generator is an automorphism"))
                .collect()
        })
        .collect();
    let reps = orbit_representatives(m, &line_gens);
    (0..m)
        .filter(|&i| reps[i] == i && edges[i].iter().all(|v| degrees[v] >= 3))
        .map(|i| canonical_form(&h.without_edge(i)))
        .collect()
}

/// Runs the full-mode descent for `PG(2, q)` until a level has no extremal
/// class or the line count reaches `min_edges`.
pub fn descend(q: usize, min_edges: usize) -> Result<DescentReport> {
    descend_with(DescentState::start(q, DescentMode::Full)?, min_edges, |_, _| Ok(()))
}

/// Descent from an arbitrary state, calling `on_level` after each level
/// with the new state (for checkpoints and progress output).
pub fn descend_with<F>(state: DescentState, min_edges: usize, mut on_level: F) -> Result<DescentReport>
where
    F: FnMut(&DescentLevel, &DescentState) -> Result<()>,
{
    if min_edges == 0 {
        return Err(Error::PreconditionViolated("min_edges must be at least 1".into()));
    }
    let q = state.q;
    let first = DescentLevel {
        edges: state.edges,
        class_count: state.frontier.len() + state.coverable.len(),
        extremal_count: state.frontier.len(),
        representatives: state.frontier.clone(),
        wall_time: Duration::ZERO,
    };
    let mut levels = vec![first];
    let mut state = state;
    let mut m = None;
    while state.edges > min_edges && !state.frontier.is_empty() {
        let (level, next) = state.step();
        on_level(&level, &next)?;
        let done = level.extremal_count == 0;
        if done {
            m = Some(state.edges);
        }
        levels.push(level);
        state = next;
        if done {
            break;
        }
    }
    Ok(DescentReport { q, levels, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::plane::oval_lines;

    fn counts(report: &DescentReport) -> Vec<(usize, usize, usize)> {
        report
            .levels
            .iter()
            .map(|l| (l.edges, l.class_count, l.extremal_count))
            .collect()
    }

    #[test]
    fn fano_descent() {
        let report = descend(2, 1).unwrap();
        assert_eq!(report.m, Some(6));
        assert_eq!(counts(&report), vec![(7, 1, 1), (6, 1, 1), (5, 0, 0)]);
    }

    #[test]
    fn order_three_reaches_the_oval() {
        let report = descend(3, 1).unwrap();
        assert_eq!(report.m, Some(10));
        let ten = report.levels.iter().find(|l| l.edges == 10).unwrap();
        let oval = canonical_form(&oval_lines(3).unwrap());
        assert!(ten.representatives.iter().any(|h| canonical_form(h) == oval));
    }

    #[test]
    fn modes_agree_on_extremal_counts() {
        let full = descend(4, 1).unwrap();
        let state = DescentState::start(4, DescentMode::ExtremalOnly).unwrap();
        let lean = descend_with(state, 1, |_, _| Ok(())).unwrap();
        assert_eq!(full.m, lean.m);
        let ext = |r: &DescentReport| -> Vec<usize> { r.levels.iter().map(|l| l.extremal_count).collect() };
        assert_eq!(ext(&full), ext(&lean));
        for (a, b) in full.levels.iter().zip(&lean.levels) {
            assert!(a.class_count >= b.class_count);
        }
    }

    #[test]
    fn min_edges_stops_early() {
        let report = descend(3, 12).unwrap();
        assert_eq!(report.m, None);
        assert_eq!(report.levels.last().unwrap().edges, 12);
    }

    #[test]
    fn unsupported_orders() {
        assert_eq!(descend(6, 1).unwrap_err(), Error::UnsupportedOrder(6));
        assert!(descend(8, 1).is_err());
    }

    #[test]
    fn resume_matches_straight_run() {
        let straight = descend(3, 1).unwrap();
        let mut state = DescentState::start(3, DescentMode::Full).unwrap();
        for _ in 0..2 {
            state = state.step().1;
        }
        let saved: Vec<Hypergraph> = state.classes().cloned().collect();
        let resumed = DescentState::resume(3, DescentMode::Full, saved).unwrap();
        assert_eq!(resumed, state);
        let tail = descend_with(resumed, 1, |_, _| Ok(())).unwrap();
        assert_eq!(tail.m, straight.m);
        let not_lines = crate::constructions::designs::fano_complement();
        assert!(DescentState::resume(3, DescentMode::Full, vec![not_lines]).is_err());
    }
}
