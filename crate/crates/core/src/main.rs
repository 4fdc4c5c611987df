use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use covering_lab::constructions::catalog::{catalog, catalog_names};
use covering_lab::cover::{covering_number, is_cover, max_degree_cap};
use covering_lab::io::{parse_blocks, parse_incidence, parse_vertex_list, read_level_dump, serialize_incidence, to_blocks, write_level_dump, LevelDump};
use covering_lab::search::{descend_with, generate, DescentMode, DescentState, SearchSpec};
use covering_lab::verify::{self, Status};
use covering_lab::{Error, Hypergraph, VertexSet};

/// Exact covering numbers and isomorph-free search for uniform intersecting
/// hypergraphs.
#[derive(Parser, Debug)]
#[command(name = "covering-lab", version)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputKind {
    /// Incidence matrix when every line is 0/1, block list otherwise.
    Auto,
    Incidence,
    Blocks,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact covering number with a witness.
    Tau {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = InputKind::Auto)]
        input: InputKind,
    },
    /// Checks whether a vertex list (input labels) covers every edge.
    CheckCover {
        file: PathBuf,
        /// Vertices such as `0,1,2,8`.
        vertices: String,
        #[arg(long, value_enum, default_value_t = InputKind::Auto)]
        input: InputKind,
    },
    /// Counts isomorphism classes of r-uniform t-intersecting hypergraphs;
    /// `n` and `m` accept ranges such as `9-13`.
    Gen {
        r: usize,
        t: usize,
        n: Span,
        m: Span,
        #[arg(long, default_value_t = 1)]
        min_deg: usize,
        /// A number, `auto` for the covering-number cap, or omitted for `m`.
        #[arg(long)]
        max_deg: Option<MaxDegree>,
        /// Covering number counted as extremal (default `r - t + 1`).
        #[arg(long)]
        target_tau: Option<usize>,
    },
    /// Line-deletion descent inside PG(2, q).
    Descend {
        q: usize,
        /// Stop when a level has this many lines.
        #[arg(long, default_value_t = 1)]
        min_edges: usize,
        /// Lift the default floor of 44 lines for q = 7.
        #[arg(long)]
        unbounded: bool,
        /// Expand only the extremal classes of each level.
        #[arg(long)]
        extremal_only: bool,
        /// Write a level dump per level into this directory.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from a level dump.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Prints a named hypergraph as an incidence matrix.
    Catalog {
        name: Option<String>,
        /// List the available names with their parameters.
        #[arg(long)]
        list: bool,
        /// Print a block list instead.
        #[arg(long)]
        blocks: bool,
    },
    /// Runs the reproduction checks.
    VerifyPaper {
        /// Include the long criteria.
        #[arg(long)]
        long: bool,
        /// Directory with biplane block lists.
        #[arg(long)]
        royle_dir: Option<PathBuf>,
        /// Run only these criteria, e.g. `3,5`.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

/// Inclusive range `a-b` or a single value.
#[derive(Clone, Copy, Debug)]
struct Span {
    lo: usize,
    hi: usize,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("invalid number {x:?}"));
        let (lo, hi) = match s.split_once('-') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => (parse(s)?, parse(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Span { lo, hi })
    }
}

#[derive(Clone, Copy, Debug)]
enum MaxDegree {
    Fixed(usize),
    Auto,
}

impl FromStr for MaxDegree {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            Ok(MaxDegree::Auto)
        } else {
            s.parse().map(MaxDegree::Fixed).map_err(|_| format!("expected a number or `auto`, got {s:?}"))
        }
    }
}

/// A successful run that found a mismatch.
#[derive(Debug)]
struct Mismatch;

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification mismatch")
    }
}

impl std::error::Error for Mismatch {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Mismatch>() => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("COVERING_LAB_THREADS") {
        let threads: usize = value
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| anyhow!("COVERING_LAB_THREADS must be a positive integer, got {value:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let format = cli.format;
    match cli.command {
        Command::Tau { file, input } => tau(&file, input, format),
        Command::CheckCover { file, vertices, input } => check_cover(&file, &vertices, input),
        Command::Gen { r, t, n, m, min_deg, max_deg, target_tau } => {
            gen(r, t, n, m, min_deg, max_deg, target_tau, format)
        }
        Command::Descend { q, min_edges, unbounded, extremal_only, checkpoint, resume } => {
            descend(q, min_edges, unbounded, extremal_only, checkpoint, resume, format)
        }
        Command::Catalog { name, list, blocks } => show_catalog(name, list, blocks, format),
        Command::VerifyPaper { long, royle_dir, only } => verify_paper(long, royle_dir, only),
    }
}

/// A hypergraph read from a file with the input label of each vertex.
struct Loaded {
    hypergraph: Hypergraph,
    labels: Vec<usize>,
}

impl Loaded {
    fn vertex_of(&self, label: usize) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    fn show(&self, set: VertexSet) -> String {
        set.iter().map(|v| self.labels[v].to_string()).collect::<Vec<_>>().join(",")
    }
}

fn load(path: &Path, kind: InputKind) -> Result<Loaded> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let incidence = match kind {
        InputKind::Incidence => true,
        InputKind::Blocks => false,
        InputKind::Auto => text
            .lines()
            .all(|line| line.chars().all(|c| c == '0' || c == '1' || c.is_whitespace())),
    };
    if incidence {
        let hypergraph = parse_incidence(&text).with_context(|| format!("parsing {}", path.display()))?;
        let labels = (0..hypergraph.vertex_count()).collect();
        return Ok(Loaded { hypergraph, labels });
    }
    let blocks = parse_blocks(&text).with_context(|| format!("parsing {}", path.display()))?;
    if blocks.compacted() {
        eprintln!("labels compacted (input -> vertex):");
        for (v, label) in blocks.labels.iter().enumerate() {
            eprintln!("  {label} -> {v}");
        }
    }
    Ok(Loaded {
        hypergraph: blocks.hypergraph,
        labels: blocks.labels,
    })
}

fn tau(file: &Path, input: InputKind, format: Format) -> Result<()> {
    let loaded = load(file, input)?;
    let result = covering_number(&loaded.hypergraph);
    let witness = loaded.show(result.witness.vertices);
    match format {
        Format::Text => {
            println!("tau={}", result.tau);
            println!("witness={witness}");
        }
        Format::Tsv => println!("tau\twitness\n{}\t{witness}", result.tau),
    }
    Ok(())
}

fn check_cover(file: &Path, vertices: &str, input: InputKind) -> Result<()> {
    let loaded = load(file, input)?;
    let labels = parse_vertex_list(vertices)?;
    let mut set = VertexSet::EMPTY;
    for label in &labels {
        let v = loaded
            .vertex_of(*label)
            .ok_or_else(|| anyhow!("vertex {label} does not occur in {}", file.display()))?;
        set.insert(v);
    }
    if is_cover(&loaded.hypergraph, set) {
        println!("valid {}-cover", set.len());
        Ok(())
    } else {
        let missed = loaded.hypergraph.edges().iter().filter(|e| !e.meets(set)).count();
        println!("not a cover: {missed} edges missed");
        Err(Mismatch.into())
    }
}

#[allow(clippy::too_many_arguments)]
fn gen(
    r: usize,
    t: usize,
    ns: Span,
    ms: Span,
    min_deg: usize,
    max_deg: Option<MaxDegree>,
    target_tau: Option<usize>,
    format: Format,
) -> Result<()> {
    let mut cells = Vec::new();
    for m in ms.lo..=ms.hi {
        let target = target_tau.unwrap_or((r + 1).saturating_sub(t));
        let max = match max_deg {
            None => m,
            Some(MaxDegree::Fixed(d)) => d,
            Some(MaxDegree::Auto) => max_degree_cap(m, r, target, t == 2)?,
        };
        for n in ns.lo..=ns.hi {
            let spec = SearchSpec::new(r, t, n, m).with_degrees(min_deg, max.min(m)).with_target(target);
            let cell = match generate(&spec) {
                Ok(report) => {
                    eprintln!(
                        "n={n} m={m}: {} classes, {} extremal ({:.2}s)",
                        report.class_count,
                        report.extremal_count,
                        report.wall_time.as_secs_f64()
                    );
                    Some((report.class_count, report.extremal_count))
                }
                Err(Error::InvalidSpec(_)) if ns.lo != ns.hi || ms.lo != ms.hi => None,
                Err(e) => return Err(e.into()),
            };
            cells.push(((n, m), cell));
        }
    }
    print!("{}", count_table(ns, ms, &cells, format));
    Ok(())
}

/// `(n, m)` with `(classes, extremal)`, `None` where the spec is infeasible.
type Cell = ((usize, usize), Option<(usize, usize)>);

/// Rows are vertex counts, columns edge counts; a cell reads
/// `classes/extremal`, `-` where the parameters admit nothing.
fn count_table(ns: Span, ms: Span, cells: &[Cell], format: Format) -> String {
    let cell = |n, m| -> String {
        match cells.iter().find(|(k, _)| *k == (n, m)).and_then(|(_, c)| *c) {
            Some((c, e)) => format!("{c}/{e}"),
            None => "-".into(),
        }
    };
    let mut rows: Vec<Vec<String>> = vec![std::iter::once("n\\m".to_string())
        .chain((ms.lo..=ms.hi).map(|m| m.to_string()))
        .collect()];
    for n in ns.lo..=ns.hi {
        rows.push(std::iter::once(n.to_string()).chain((ms.lo..=ms.hi).map(|m| cell(n, m))).collect());
    }
    let mut out = String::new();
    match format {
        Format::Tsv => {
            for row in rows {
                writeln!(out, "{}", row.join("\t")).expect("write to string");
            }
        }
        Format::Text => {
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
            for row in rows {
                let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                writeln!(out, "{}", line.join("  ")).expect("write to string");
            }
        }
    }
    out
}

/// Lines kept by default for q = 7.
const SEVEN_FLOOR: usize = 44;

fn descend(
    q: usize,
    min_edges: usize,
    unbounded: bool,
    extremal_only: bool,
    checkpoint: Option<PathBuf>,
    resume: Option<PathBuf>,
    format: Format,
) -> Result<()> {
    let mode = if extremal_only { DescentMode::ExtremalOnly } else { DescentMode::Full };
    let min_edges = if q == 7 && !unbounded { min_edges.max(SEVEN_FLOOR) } else { min_edges };
    let state = match &resume {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let dump = read_level_dump(&text)?;
            if dump.q != q {
                bail!("{} holds a level of PG(2,{}), not PG(2,{q})", path.display(), dump.q);
            }
            DescentState::resume(q, mode, dump.hypergraphs)?
        }
        None => DescentState::start(q, mode)?,
    };
    if let Some(dir) = &checkpoint {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let start = Instant::now();
    if format == Format::Tsv {
        println!("edges\tclasses\textremal\tseconds");
    }
    let print_level = |edges: usize, classes: usize, extremal: usize, secs: f64| match format {
        Format::Text => println!("{edges} lines: {classes} classes, {extremal} extremal ({secs:.2}s)"),
        Format::Tsv => println!("{edges}\t{classes}\t{extremal}\t{secs:.3}"),
    };
    print_level(state.edges, state.classes().count(), state.frontier.len(), 0.0);
    let report = descend_with(state, min_edges, |level, next| {
        print_level(level.edges, level.class_count, level.extremal_count, level.wall_time.as_secs_f64());
        if let Some(dir) = &checkpoint {
            let dump = LevelDump {
                level: next.edges,
                q,
                hypergraphs: next.classes().cloned().collect(),
            };
            let path = dir.join(format!("level-{}.txt", next.edges));
            fs::write(&path, write_level_dump(&dump))
                .map_err(|e| Error::PreconditionViolated(format!("writing {}: {e}", path.display())))?;
        }
        Ok(())
    })?;
    eprintln!("total {:.2}s", start.elapsed().as_secs_f64());
    match report.m {
        Some(m) => println!("m({})={m}", q + 1),
        None => {
            let last = report.levels.last().map_or(0, |l| l.edges);
            println!("m({}) not determined: stopped at {last} lines", q + 1);
        }
    }
    Ok(())
}

fn show_catalog(name: Option<String>, list: bool, blocks: bool, format: Format) -> Result<()> {
    if list {
        if format == Format::Tsv {
            println!("name\tn\tm\tr\tt\ttau");
        }
        for name in catalog_names() {
            let e = catalog(&name)?.expected;
            match format {
                Format::Text => println!("{name}: n={} m={} r={} t={} tau={}", e.n, e.m, e.r, e.t, e.tau),
                Format::Tsv => println!("{name}\t{}\t{}\t{}\t{}\t{}", e.n, e.m, e.r, e.t, e.tau),
            }
        }
        return Ok(());
    }
    let name = name.ok_or_else(|| anyhow!("give a catalog name or --list"))?;
    let entry = catalog(&name)?;
    if blocks {
        print!("{}", to_blocks(&entry.hypergraph));
    } else {
        print!("{}", serialize_incidence(&entry.hypergraph));
    }
    Ok(())
}

fn verify_paper(long: bool, royle_dir: Option<PathBuf>, only: Vec<usize>) -> Result<()> {
    let env = verify::Options::from_env();
    let options = verify::Options {
        long: long || env.long,
        royle_dir: royle_dir.or(env.royle_dir),
    };
    if let Some(bad) = only.iter().find(|&&id| !verify::CRITERIA.iter().any(|c| c.id == id)) {
        bail!("no criterion C{bad}");
    }
    let mut failed = false;
    for criterion in verify::CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let outcome = verify::run(criterion, &options);
        println!("{outcome}");
        failed |= outcome.status == Status::Fail;
    }
    if failed {
        Err(Mismatch.into())
    } else {
        Ok(())
    }
}
