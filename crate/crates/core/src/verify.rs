//! Reproduction checks for the published results, shared by the
//! `verify-paper` subcommand and the acceptance test target.
//!
//! Each criterion returns a [`Outcome`] with a one-line detail. Criteria
//! marked `long` only run when long checks are enabled; the biplane
//! criterion needs a directory of block-list files.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use itertools::Itertools;

use crate::canonical::{are_isomorphic, canonical_form, dedup};
use crate::constructions::catalog::{builtin_corpus, catalog};
use crate::constructions::designs::{ag23_dual, complete_subsets, fano_complement};
use crate::constructions::plane::{oval_lines, projective_plane};
use crate::cover::{covering_number, covering_number_oracle, is_cover, max_degree_cap, mindeg_cover, tau_at_most};
use crate::error::Result;
use crate::hypergraph::{degree_force_bound, pair_count_feasible, DegreeProfile, Hypergraph, VertexSet};
use crate::io::parse_blocks;
use crate::search::{descend, generate, verify_classification, SearchSpec};

/// Environment variable enabling long criteria.
pub const LONG_ENV: &str = "COVERING_LAB_LONG";
/// Environment variable naming the directory of biplane block lists.
pub const ROYLE_ENV: &str = "COVERING_LAB_ROYLE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} C{} {}: {} ({:.1}s)",
            self.status.label(),
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Run criteria (and parts of criteria) marked long.
    pub long: bool,
    /// Directory holding the biplane block lists.
    pub royle_dir: Option<PathBuf>,
}

impl Options {
    /// Reads [`LONG_ENV`] and [`ROYLE_ENV`].
    pub fn from_env() -> Self {
        Options {
            long: std::env::var(LONG_ENV).is_ok_and(|v| !v.is_empty() && v != "0"),
            royle_dir: std::env::var_os(ROYLE_ENV).map(PathBuf::from),
        }
    }
}

pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    /// Skipped unless long checks are enabled.
    pub long: bool,
    check: fn(&Options) -> Result<Verdict>,
}

/// Result of a check with its one-line detail.
enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

pub const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, title: "solver agrees with the oracle on the corpus", long: false, check: c1_oracle },
    Criterion { id: 2, title: "named covering numbers", long: false, check: c2_named },
    Criterion { id: 3, title: "q(4) table", long: false, check: c3_q4 },
    Criterion { id: 4, title: "2-intersecting classification", long: false, check: c4_classification },
    Criterion { id: 5, title: "5-uniform 2-intersecting counts at n=10", long: false, check: c5_five_uniform },
    Criterion { id: 6, title: "descent for q = 2, 3, 4", long: false, check: c6_descent },
    Criterion { id: 7, title: "descent for q = 5", long: false, check: c7_descent_five },
    Criterion { id: 8, title: "substitutes for the multi-week searches", long: false, check: c8_substitutes },
    Criterion { id: 9, title: "property samples", long: false, check: c9_properties },
    Criterion { id: 10, title: "biplane covers", long: false, check: c10_biplanes },
];

/// Runs one criterion.
pub fn run(criterion: &Criterion, options: &Options) -> Outcome {
    let start = Instant::now();
    let (status, detail) = if criterion.long && !options.long {
        (Status::Skip, format!("long; enable with --long or {LONG_ENV}=1"))
    } else {
        match (criterion.check)(options) {
            Ok(Verdict::Pass(d)) => (Status::Pass, d),
            Ok(Verdict::Fail(d)) => (Status::Fail, d),
            Ok(Verdict::Skip(d)) => (Status::Skip, d),
            Err(e) => (Status::Fail, format!("error: {e}")),
        }
    };
    Outcome {
        id: criterion.id,
        title: criterion.title,
        status,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Runs every criterion in order, reporting each outcome as it finishes.
pub fn run_all(options: &Options, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    CRITERIA
        .iter()
        .map(|c| {
            let outcome = run(c, options);
            report(&outcome);
            outcome
        })
        .collect()
}

/// Collects mismatches; passes when there are none.
struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { failures: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn verdict(self, summary: String) -> Verdict {
        if self.failures.is_empty() {
            Verdict::Pass(summary)
        } else {
            Verdict::Fail(self.failures.join("; "))
        }
    }
}

fn c1_oracle(_: &Options) -> Result<Verdict> {
    let corpus = builtin_corpus()?;
    let mut checks = Checks::new();
    for entry in &corpus {
        let fast = covering_number(&entry.hypergraph);
        let slow = covering_number_oracle(&entry.hypergraph);
        checks.expect(fast.tau == slow.tau && fast.witness.verify(&entry.hypergraph), || {
            format!("{}: solver {} oracle {}", entry.name, fast.tau, slow.tau)
        });
    }
    Ok(checks.verdict(format!("{} hypergraphs", corpus.len())))
}

fn c2_named(_: &Options) -> Result<Verdict> {
    let named = [
        ("tetrahedron", 2),
        ("fano_complement", 3),
        ("paley", 4),
        ("kummer", 4),
        ("three_hares", 3),
        ("q4_unique", 4),
        ("q5_B1", 5),
        ("m5_example", 5),
        ("m6_unique", 6),
    ];
    let mut checks = Checks::new();
    for (name, tau) in named {
        let got = covering_number(&catalog(name)?.hypergraph).tau;
        checks.expect(got == tau, || format!("{name}: tau {got}, expected {tau}"));
    }
    for a in 2..=4 {
        for b in 2..=4 {
            let got = covering_number(&crate::constructions::designs::cross_grid(a, b)?).tau;
            checks.expect(got == a.min(b), || format!("cross_grid({a},{b}): tau {got}"));
        }
    }
    Ok(checks.verdict(format!("{} named values and 9 cross grids", named.len())))
}

fn c3_q4(_: &Options) -> Result<Verdict> {
    let expected = [(9, 91, 0), (10, 3295, 0), (11, 1592, 1), (12, 51, 0), (13, 2, 0)];
    let cap = max_degree_cap(9, 4, 4, false)?;
    let target = catalog("q4_unique")?.hypergraph;
    let mut checks = Checks::new();
    let mut counts = Vec::new();
    for (n, classes, extremal) in expected {
        let report = generate(&SearchSpec::new(4, 1, n, 9).with_degrees(2, cap))?;
        counts.push(format!("{}/{}", report.class_count, report.extremal_count));
        checks.expect(report.class_count == classes && report.extremal_count == extremal, || {
            format!(
                "n={n}: {} classes, {} extremal; expected {classes}, {extremal}",
                report.class_count, report.extremal_count
            )
        });
        for h in report.extremal() {
            checks.expect(are_isomorphic(h, &target), || format!("n={n}: extremal class is not q4_unique"));
        }
    }
    Ok(checks.verdict(format!("n=9..13: {}", counts.join(" "))))
}

fn c4_classification(_: &Options) -> Result<Verdict> {
    let mut checks = Checks::new();
    let three = verify_classification(3)?;
    let expect3 = [complete_subsets(4, 3)?];
    checks.expect(same_classes(&three.classes, &expect3), || {
        format!("r=3: {} classes, expected <4 choose 3>", three.classes.len())
    });
    let four = verify_classification(4)?;
    let expect4 = [complete_subsets(6, 4)?, fano_complement()];
    checks.expect(same_classes(&four.classes, &expect4), || {
        format!("r=4: {} classes, expected <6 choose 4> and the Fano complement", four.classes.len())
    });
    Ok(checks.verdict(format!(
        "r=3: {} class, r=4: {} classes",
        three.classes.len(),
        four.classes.len()
    )))
}

fn same_classes(found: &[Hypergraph], expected: &[Hypergraph]) -> bool {
    let mut a: Vec<_> = found.iter().map(canonical_form).collect();
    let mut b: Vec<_> = expected.iter().map(canonical_form).collect();
    a.sort();
    b.sort();
    a == b
}

/// `(m, classes)` for the 5-uniform search at n = 10.
pub const FIVE_UNIFORM_COUNTS: [(usize, usize); 5] = [(12, 1), (13, 17), (14, 462), (15, 7965), (16, 196_514)];

/// Largest `m` of the 5-uniform search run without `--long`.
pub const DEFAULT_FIVE_UNIFORM_MAX: usize = 13;

/// The 5-uniform 2-intersecting search at `n = 10` with `m` edges: degrees
/// between 5 and `m - 6`.
pub fn five_uniform_spec(m: usize) -> SearchSpec {
    SearchSpec::new(5, 2, 10, m).with_degrees(5, m - 6)
}

fn c5_five_uniform(options: &Options) -> Result<Verdict> {
    let mut checks = Checks::new();
    let mut counts = Vec::new();
    for (m, classes) in FIVE_UNIFORM_COUNTS {
        if m > DEFAULT_FIVE_UNIFORM_MAX && !options.long {
            continue;
        }
        let report = generate(&five_uniform_spec(m))?;
        counts.push(format!("m={m}: {}/{}", report.class_count, report.extremal_count));
        checks.expect(report.class_count == classes && report.extremal_count == 0, || {
            format!(
                "m={m}: {} classes, {} extremal; expected {classes}, 0",
                report.class_count, report.extremal_count
            )
        });
    }
    Ok(checks.verdict(counts.join(", ")))
}

fn c6_descent(_: &Options) -> Result<Verdict> {
    let mut checks = Checks::new();
    let two = descend(2, 1)?;
    checks.expect(two.m == Some(6), || format!("q=2: m={:?}", two.m));

    let three = descend(3, 1)?;
    checks.expect(three.m == Some(10), || format!("q=3: m={:?}", three.m));
    let oval = oval_lines(3)?;
    let at_ten = three.levels.iter().find(|l| l.edges == 10);
    checks.expect(
        at_ten.is_some_and(|l| l.representatives.iter().any(|h| are_isomorphic(h, &oval))),
        || "q=3: oval lines not extremal at 10 edges".into(),
    );
    let plane = projective_plane(3)?.hypergraph;
    let subsets = plane.edges().iter().copied().combinations(9).count();
    let uncoverable = plane
        .edges()
        .iter()
        .copied()
        .combinations(9)
        .filter(|lines| !tau_at_most(&Hypergraph::new(13, lines.clone()).expect("lines are valid"), 3))
        .count();
    checks.expect(subsets == 715 && uncoverable == 0, || {
        format!("q=3: {uncoverable} of {subsets} nine-line sets need 4 points")
    });

    let four = descend(4, 1)?;
    checks.expect(four.m == Some(14), || format!("q=4: m={:?}", four.m));
    let level = |edges| four.levels.iter().find(|l| l.edges == edges).map(|l| (l.class_count, l.extremal_count));
    checks.expect(level(14) == Some((5, 2)), || format!("q=4 at 14 edges: {:?}", level(14)));
    checks.expect(level(13) == Some((3, 0)), || format!("q=4 at 13 edges: {:?}", level(13)));
    Ok(checks.verdict(format!(
        "m(3)={} m(4)={} m(5)={}, 715 nine-line sets coverable",
        show(two.m),
        show(three.m),
        show(four.m)
    )))
}

/// `m` of a descent, `none` when it stopped early.
fn show(m: Option<usize>) -> String {
    m.map_or_else(|| "none".into(), |m| m.to_string())
}

fn c7_descent_five(_: &Options) -> Result<Verdict> {
    let mut checks = Checks::new();
    let five = descend(5, 1)?;
    let level = |edges| five.levels.iter().find(|l| l.edges == edges);
    for (edges, classes, extremal) in [(21, Some(130), 112), (20, Some(178), 99), (19, Some(207), 23), (18, None, 1)] {
        let got = level(edges).map(|l| (l.class_count, l.extremal_count));
        let ok = got.is_some_and(|(c, e)| e == extremal && classes.is_none_or(|x| x == c));
        checks.expect(ok, || format!("{edges} edges: {got:?}"));
    }
    checks.expect(five.m == Some(18), || format!("m={:?}", five.m));
    let unique = catalog("m6_unique")?.hypergraph;
    checks.expect(
        level(18).is_some_and(|l| l.representatives.len() == 1 && are_isomorphic(&l.representatives[0], &unique)),
        || "the 18-line class is not m6_unique".into(),
    );
    Ok(checks.verdict(format!("m(6)={}", show(five.m))))
}

fn c8_substitutes(_: &Options) -> Result<Verdict> {
    let mut checks = Checks::new();
    let b1 = catalog("q5_B1")?.hypergraph;
    checks.expect(b1.is_uniform(5) && b1.is_intersecting(), || "q5_B1 is not 5-uniform intersecting".into());
    let four_covers = (0..b1.vertex_count())
        .combinations(4)
        .filter(|s| is_cover(&b1, s.iter().copied().collect()))
        .count();
    checks.expect(four_covers == 0, || format!("q5_B1 has {four_covers} 4-covers"));
    checks.expect(covering_number_oracle(&b1).tau == 5, || "q5_B1: oracle tau is not 5".into());

    checks.expect(tau_at_most(&ag23_dual(), 4), || "ag23_dual has no 4-cover".into());

    // degree profiles of 12 edges of size 5 on at least 21 vertices with
    // degrees in [2, 4]: 2 a2 + 3 a3 + 4 a4 = 60
    let mut feasible = Vec::new();
    let mut profiles = 0;
    for a4 in 0..=15 {
        for a3 in 0..=20 {
            let rest = 60usize.checked_sub(4 * a4 + 3 * a3);
            let Some(rest) = rest.filter(|r| r % 2 == 0) else { continue };
            let a2 = rest / 2;
            if a2 + a3 + a4 < 21 {
                continue;
            }
            profiles += 1;
            let profile = DegreeProfile::from_counts(&[(4, a4), (3, a3), (2, a2)]);
            if pair_count_feasible(&profile, 12, 1) {
                feasible.push((a4, a3, a2));
            }
        }
    }
    checks.expect(feasible == [(9, 0, 12)], || format!("feasible profiles {feasible:?}"));
    Ok(checks.verdict(format!(
        "q5_B1 has no 4-cover; ag23_dual has a 4-cover; {profiles} profiles, only 4^9 2^12 feasible"
    )))
}

fn c9_properties(_: &Options) -> Result<Verdict> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    let mut checks = Checks::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let samples = [catalog("paley")?.hypergraph, catalog("q4_unique")?.hypergraph];
    for h in &samples {
        let form = canonical_form(h);
        let mut perm: Vec<usize> = (0..h.vertex_count()).collect();
        for _ in 0..500 {
            perm.shuffle(&mut rng);
            let mut order: Vec<usize> = (0..h.edge_count()).collect();
            order.shuffle(&mut rng);
            let image = h.relabel(&perm).reorder_edges(&order);
            checks.expect(canonical_form(&image) == form, || "canonical form changed under relabeling".into());
        }
    }

    let corpus: Vec<Hypergraph> = builtin_corpus()?.into_iter().map(|e| e.hypergraph).collect();
    let once = dedup(&corpus);
    checks.expect(dedup(&once) == once, || "dedup is not idempotent".into());

    let mut configs = 0;
    for n in 3..=6 {
        for m in 1..=6 {
            let spec = SearchSpec::new(3, 1, n, m);
            if spec.validate().is_err() {
                continue;
            }
            configs += 1;
            let found = generate(&spec)?.representatives;
            let naive = naive_classes(&spec);
            checks.expect(found == naive, || format!("r=3 n={n} m={m}: generate and naive differ"));
        }
    }

    let mut instances = 0;
    for (n, m) in [(5, 4), (6, 5), (6, 6), (7, 6)] {
        for h in generate(&SearchSpec::new(4, 2, n, m))?.representatives {
            instances += 1;
            checks.expect(h.max_degree() >= degree_force_bound(4, m), || {
                format!("degree bound fails on a 4-uniform instance with {m} edges")
            });
            for v in 0..n {
                if (1..4).contains(&h.degree(v)) {
                    let cover = mindeg_cover(&h, v)?;
                    checks.expect(cover.verify(&h) && cover.size() <= 2, || "mindeg cover invalid".into());
                }
            }
        }
    }
    Ok(checks.verdict(format!(
        "1000 relabelings, dedup of {} classes, {configs} generate/naive configurations, {instances} bound instances",
        once.len()
    )))
}

/// Isomorphism classes of all `m`-sets of admissible `r`-subsets, by brute
/// force.
fn naive_classes(spec: &SearchSpec) -> Vec<Hypergraph> {
    let subsets: Vec<VertexSet> = (0..spec.n).combinations(spec.r).map(VertexSet::from_iter).collect();
    let all: Vec<Hypergraph> = subsets
        .into_iter()
        .combinations(spec.m)
        .map(|edges| Hypergraph::new(spec.n, edges).expect("distinct subsets"))
        .filter(|h| {
            h.is_t_intersecting(spec.t) && h.min_degree() >= spec.min_degree && h.max_degree() <= spec.max_degree
        })
        .collect();
    dedup(&all)
}

/// Printed covers: `(design, cover size, points)`.
pub const BIPLANE_COVERS: [(&str, usize, &[usize]); 10] = [
    ("B9A", 7, &[0, 1, 2, 8, 9, 15, 36]),
    ("B9A*", 7, &[0, 1, 2, 3, 4, 6, 10]),
    ("B9B", 7, &[30, 31, 32, 33, 34, 35, 36]),
    ("B9C", 7, &[0, 1, 2, 3, 4, 20, 33]),
    ("B11A", 9, &[0, 1, 2, 3, 4, 5, 18, 19, 40]),
    ("B11B", 9, &[0, 1, 3, 4, 6, 10, 11, 13, 52]),
    ("B11C", 9, &[0, 1, 2, 3, 4, 5, 8, 13, 20]),
    ("B11D", 9, &[0, 1, 2, 3, 4, 9, 10, 28, 55]),
    ("B11E", 9, &[0, 1, 2, 3, 4, 5, 6, 9, 20]),
    ("B13A", 11, &[0, 1, 2, 3, 4, 5, 9, 13, 16, 40, 42]),
];

/// Finds the block list for `design` in `dir`: a file whose name without
/// extension equals the design name, ignoring case (`B9A*` may also be
/// spelled `B9Astar` or `B9A_dual`).
pub fn find_design_file(dir: &Path, design: &str) -> Option<PathBuf> {
    let wanted: Vec<String> = match design.strip_suffix('*') {
        Some(base) => vec![design.into(), format!("{base}star"), format!("{base}_dual")],
        None => vec![design.into()],
    };
    let mut entries: Vec<PathBuf> = fs::read_dir(dir).ok()?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    entries.sort();
    entries.into_iter().find(|p| {
        let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("");
        wanted.iter().any(|w| w.eq_ignore_ascii_case(stem))
    })
}

fn c10_biplanes(options: &Options) -> Result<Verdict> {
    let Some(dir) = &options.royle_dir else {
        return Ok(Verdict::Skip(format!("no block lists; set {ROYLE_ENV} or pass --royle-dir")));
    };
    let mut checks = Checks::new();
    let mut verified = Vec::new();
    let mut missing = Vec::new();
    for (design, size, points) in BIPLANE_COVERS {
        let parsed = match find_design_file(dir, design) {
            Some(path) => {
                let text = fs::read_to_string(&path).map_err(|e| crate::Error::PreconditionViolated(e.to_string()))?;
                let blocks = parse_blocks(&text)?;
                let labels: Option<Vec<usize>> = points.iter().map(|&p| blocks.vertex_of(p)).collect();
                Some((blocks.hypergraph, labels))
            }
            // the dual's points are the blocks of B9A, in file order
            None if design == "B9A*" => find_design_file(dir, "B9A")
                .map(|path| -> Result<_> {
                    let text = fs::read_to_string(&path).map_err(|e| crate::Error::PreconditionViolated(e.to_string()))?;
                    Ok((parse_blocks(&text)?.hypergraph.dual()?, Some(points.to_vec())))
                })
                .transpose()?,
            None => None,
        };
        let Some((h, labels)) = parsed else {
            missing.push(design);
            continue;
        };
        let cover: Option<VertexSet> = labels.filter(|ls| ls.iter().all(|&v| v < h.vertex_count())).map(VertexSet::from_iter);
        checks.expect(cover.is_some_and(|c| c.len() == size && is_cover(&h, c)), || {
            format!("{design}: printed {size}-cover does not verify")
        });
        if design == "B9C" {
            let tau = covering_number(&h).tau;
            checks.expect(tau == 7, || format!("B9C: tau {tau}, expected 7"));
        }
        verified.push(design);
    }
    if verified.is_empty() {
        return Ok(Verdict::Skip(format!("no block lists found in {}", dir.display())));
    }
    let mut summary = format!("verified {}", verified.join(" "));
    if !missing.is_empty() {
        summary.push_str(&format!("; missing {}", missing.join(" ")));
    }
    Ok(checks.verdict(summary))
}
