//! `sumchain`: search, construct, analyse and verify chains and necklaces.

mod output;
mod reproduce;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sumchain::billiards::{
    decompose, gcd, lemma_predict, parse_fold_pair, render_folds_svg, render_table_svg, summarize,
    BilliardTable, CycleSummary, FoldSystem, MergeError, PathSummary,
};
use sumchain::constructions::{
    build_necklace_from_corners, cubic_chain_387, cubic_necklace_candidates, extend_necklace,
    fibonacci_chain, lucas_chain, odd_square_family, square_necklace_rows, ConstructionError,
    DEFAULT_CUBE_BOUND,
};
use sumchain::search::{
    enumerate_chains_with, enumerate_necklaces_with, find_chain_with, find_necklace_with,
    spectrum_with, Presence, SpectrumMode, DEFAULT_NODE_BUDGET,
};
use sumchain::sumgraph::{format_beads, parse_beads};
use sumchain::{
    verify_sequence, Necklace, SearchConfig, SearchError, SumGraph, TargetKind, TargetSet,
};
use thiserror::Error;

use output::{to_json, SequenceDoc};

/// Orderings of 1..n whose adjacent pairs sum to members of a target set.
///
/// Target sets: squares, cubes, triangular, pentagonal (generalized),
/// fibonacci, lucas, primes, recurrence:X0,X1, explicit:V1,V2,...
/// n = 1 counts as a chain but not a necklace; necklaces need n >= 3.
///
/// Exit status: 0 found, valid or match; 1 not found, invalid or mismatch;
/// 2 usage or input error; 3 search budget exhausted.
#[derive(Debug, Parser)]
#[command(name = "sumchain", version)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find one chain or necklace on 1..n, or enumerate them up to a cap.
    Search(SearchArgs),
    /// Report existence of chains and necklaces for each n in a range.
    Spectrum(SpectrumArgs),
    /// Decompose a billiard table into pocket paths and cycles.
    Table(TableArgs),
    /// Build a chain, necklace or table listing from a parametric family.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Check a bead sequence read from a file or standard input.
    Verify(VerifyArgs),
    /// Regenerate a figure or table and compare it with the bundled fixture.
    Reproduce {
        #[arg(value_enum)]
        id: reproduce::FigureId,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Chain,
    Necklace,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RangeMode {
    Chain,
    Necklace,
    Both,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    targets: String,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Mode::Chain)]
    mode: Mode,
    /// Enumerate up to this many solutions instead of stopping at the first.
    #[arg(long, value_name = "CAP")]
    count: Option<usize>,
    /// Backtracking node budget.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[arg(long)]
    targets: String,
    #[arg(long)]
    from: u32,
    #[arg(long)]
    to: u32,
    #[arg(long, value_enum, default_value_t = RangeMode::Both)]
    mode: RangeMode,
    /// Backtracking node budget per search.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Doubled corners A,B,C,D.
    #[arg(long, conflicts_with = "folds", required_unless_present = "folds")]
    corners: Option<String>,
    /// Fold-pair JSON: {"n": N, "f": [[lo, hi, sum], ...], "g": [...]}.
    #[arg(long)]
    folds: Option<PathBuf>,
    /// Write an SVG drawing of the decomposition.
    #[arg(long, value_name = "OUT.svg")]
    render: Option<PathBuf>,
    /// Report component endpoints and lengths only.
    #[arg(long)]
    summary: bool,
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// Fibonacci-sum chain on 1..n.
    Fibonacci {
        #[arg(long)]
        n: u32,
    },
    /// Lucas-sum chain on 1..n.
    Lucas {
        #[arg(long)]
        n: u32,
    },
    /// Square necklace tables from parameter pairs.
    SquareRows {
        /// Comma-separated r:s pairs.
        #[arg(long)]
        pairs: String,
    },
    /// Necklace from a table with the given doubled corners.
    SquareNecklace {
        #[arg(long)]
        corners: String,
        #[arg(long, default_value = "squares")]
        targets: String,
    },
    /// Square necklace from the odd-square table of (r, s), loops spliced.
    OddSquare {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
    },
    /// Cube-sum chain on 1..387 from the six-corner table.
    #[command(name = "cubic-387")]
    Cubic387 {
        /// Drop bead 387 to give a chain on 1..386.
        #[arg(long)]
        drop_max: bool,
    },
    /// Odd quadruples a³ + d³ = b³ + c³ as cubic necklace tables.
    CubicCandidates {
        #[arg(long, default_value_t = DEFAULT_CUBE_BOUND)]
        bound: u64,
    },
    /// Insert bead n+1 into a necklace on 1..n.
    Extend {
        #[arg(long)]
        targets: String,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    targets: String,
    /// Also check the sum of the last and first beads.
    #[arg(long)]
    closed: bool,
    /// Bead file; standard input when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn input(e: impl ToString) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExhausted { .. } => CliError::Budget(e.to_string()),
            SearchError::Graph(g) => CliError::Input(g.to_string()),
        }
    }
}

/// Negative outcomes are printed and give exit status 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Positive,
    Negative,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Positive
        } else {
            Status::Negative
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("sumchain: {}", line.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(Status::Positive) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("sumchain: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("sumchain: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<Status, CliError> {
    match &cli.command {
        Command::Search(a) => search(a, cli.json),
        Command::Spectrum(a) => range(a, cli.json),
        Command::Table(a) => table(a, cli.json),
        Command::Construct { what } => construct(what, cli.json),
        Command::Verify(a) => verify(a, cli.json),
        Command::Reproduce { id } => {
            let report = reproduce::run(*id).map_err(CliError::Input)?;
            if cli.json {
                println!("{}", to_json(&report));
            } else {
                for line in &report.lines {
                    println!("{line}");
                }
                println!("{}", if report.matched { "match" } else { "mismatch" });
            }
            Ok(Status::from_bool(report.matched))
        }
    }
}

pub(crate) fn parse_targets(s: &str) -> Result<TargetSet, CliError> {
    let kind: TargetKind = s.parse().map_err(CliError::input)?;
    TargetSet::new(kind).map_err(CliError::input)
}

fn parse_corners(s: &str) -> Result<[u64; 4], CliError> {
    let vals: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            CliError::Input(format!("corners must be four integers A,B,C,D, got {s:?}"))
        })?;
    vals.try_into()
        .map_err(|_| CliError::Input(format!("corners must be four integers A,B,C,D, got {s:?}")))
}

fn parse_pairs(s: &str) -> Result<Vec<(u64, u64)>, CliError> {
    s.split(',')
        .map(|p| {
            let (r, q) = p
                .split_once(':')
                .ok_or_else(|| CliError::Input(format!("pair {p:?} is not r:s")))?;
            let num = |v: &str| {
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Input(format!("pair {p:?} is not r:s")))
            };
            Ok((num(r)?, num(q)?))
        })
        .collect()
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(CliError::input)?;
            Ok(s)
        }
    }
}

fn emit_sequence(beads: &[u32], ts: &TargetSet, closed: bool, json: bool) {
    if json {
        println!("{}", to_json(&SequenceDoc::new(beads, ts, closed)));
    } else {
        print!("{}", format_beads(beads));
    }
}

fn search(a: &SearchArgs, json: bool) -> Result<Status, CliError> {
    let ts = parse_targets(&a.targets)?;
    let g = SumGraph::build(a.n, &ts).map_err(CliError::input)?;
    let cfg = SearchConfig {
        node_budget: a.budget,
    };
    let closed = matches!(a.mode, Mode::Necklace);
    let t0 = Instant::now();
    let status = if let Some(cap) = a.count {
        let (items, truncated): (Vec<Vec<u32>>, bool) = if closed {
            let e = enumerate_necklaces_with(&g, cap, cfg)?;
            (
                e.items.into_iter().map(Necklace::into_beads).collect(),
                e.truncated,
            )
        } else {
            let e = enumerate_chains_with(&g, cap, cfg)?;
            (
                e.items.into_iter().map(|c| c.into_beads()).collect(),
                e.truncated,
            )
        };
        if json {
            #[derive(Serialize)]
            struct CountDoc<'a> {
                n: u32,
                targets: output::TargetsDoc,
                mode: &'a str,
                count: usize,
                truncated: bool,
                items: &'a [Vec<u32>],
            }
            println!(
                "{}",
                to_json(&CountDoc {
                    n: a.n,
                    targets: output::TargetsDoc::of(&ts),
                    mode: if closed { "necklace" } else { "chain" },
                    count: items.len(),
                    truncated,
                    items: &items,
                })
            );
        } else {
            for item in &items {
                print!("{}", format_beads(item));
            }
            let more = if truncated { " (truncated)" } else { "" };
            println!("count {}{more}", items.len());
        }
        Status::from_bool(!items.is_empty())
    } else {
        let found = if closed {
            find_necklace_with(&g, cfg)?.map(Necklace::into_beads)
        } else {
            find_chain_with(&g, cfg)?.map(|c| c.into_beads())
        };
        match found {
            Some(beads) => {
                emit_sequence(&beads, &ts, closed, json);
                Status::Positive
            }
            None => {
                let what = if closed { "necklace" } else { "chain" };
                if json {
                    println!("{{\"n\":{},\"mode\":\"{what}\",\"found\":false}}", a.n);
                } else {
                    println!("no {what} on 1..{}", a.n);
                }
                Status::Negative
            }
        }
    };
    eprintln!("elapsed {:.3} s", t0.elapsed().as_secs_f64());
    Ok(status)
}

fn range(a: &SpectrumArgs, json: bool) -> Result<Status, CliError> {
    let ts = parse_targets(&a.targets)?;
    if a.from > a.to {
        return Err(CliError::Input(format!("empty range {}..{}", a.from, a.to)));
    }
    let mode = match a.mode {
        RangeMode::Chain => SpectrumMode::Chain,
        RangeMode::Necklace => SpectrumMode::Necklace,
        RangeMode::Both => SpectrumMode::Both,
    };
    let t0 = Instant::now();
    let rows = spectrum_with(
        &ts,
        a.from,
        a.to,
        mode,
        false,
        SearchConfig {
            node_budget: a.budget,
        },
    );
    if json {
        println!("{}", to_json(&rows));
    } else {
        println!("n chain necklace");
        let cell = |p: Option<Presence>| p.map_or("-".to_string(), |p| p.to_string());
        for r in &rows {
            println!("{} {} {}", r.n, cell(r.chain), cell(r.necklace));
        }
    }
    eprintln!("elapsed {:.3} s", t0.elapsed().as_secs_f64());
    let unknown = rows
        .iter()
        .flat_map(|r| [r.chain, r.necklace])
        .any(|p| p == Some(Presence::Unknown));
    if unknown {
        return Err(CliError::Budget("node budget exhausted for some n".into()));
    }
    Ok(Status::Positive)
}

#[derive(Serialize)]
struct TableDoc<P: Serialize, C: Serialize> {
    corners: Option<[u64; 4]>,
    n: u32,
    pockets: Vec<u32>,
    gcd: Option<u64>,
    complete: Option<bool>,
    paths: Vec<P>,
    cycles: Vec<C>,
}

fn table(a: &TableArgs, json: bool) -> Result<Status, CliError> {
    let (table, f, g): (Option<BilliardTable>, FoldSystem, FoldSystem) =
        match (&a.corners, &a.folds) {
            (Some(c), _) => {
                let t = BilliardTable::from_corners(parse_corners(c)?).map_err(CliError::input)?;
                let (f, g) = t.folds();
                (Some(t), f, g)
            }
            (None, Some(p)) => {
                let (f, g) = parse_fold_pair(&read_input(Some(p))?).map_err(CliError::input)?;
                (None, f, g)
            }
            (None, None) => unreachable!("clap requires one source"),
        };
    let corners = table.as_ref().map(BilliardTable::corners);
    let gcd_value = table.as_ref().map(|t| {
        let (s, r) = t.double_sides();
        gcd(s, r)
    });
    let complete = table
        .as_ref()
        .and_then(|t| lemma_predict(t).ok())
        .map(|p| p.complete);
    let head = |n: u32, pockets: &[u32]| {
        if let Some(c) = corners {
            println!("corners {},{},{},{}", c[0], c[1], c[2], c[3]);
        }
        println!("n {n}");
        print!("pockets {}", format_beads(pockets));
        if let Some(g) = gcd_value {
            println!("gcd {g}");
        }
        if let Some(c) = complete {
            println!("lemma {}", if c { "complete" } else { "incomplete" });
        }
    };
    if a.summary {
        if a.render.is_some() {
            return Err(CliError::Input(
                "--render needs the full decomposition".into(),
            ));
        }
        let s = summarize(&f, &g).map_err(CliError::input)?;
        if json {
            let doc: TableDoc<PathSummary, CycleSummary> = TableDoc {
                corners,
                n: s.n,
                pockets: s.pockets.clone(),
                gcd: gcd_value,
                complete,
                paths: s.paths.clone(),
                cycles: s.cycles.clone(),
            };
            println!("{}", to_json(&doc));
        } else {
            head(s.n, &s.pockets);
            for p in &s.paths {
                println!("path {}..{} length {}", p.start, p.end, p.len);
            }
            for c in &s.cycles {
                println!("cycle from {} length {}", c.least, c.len);
            }
        }
        return Ok(Status::Positive);
    }
    let d = decompose(&f, &g).map_err(CliError::input)?;
    if let Some(path) = &a.render {
        let svg = match &table {
            Some(t) => render_table_svg(t, &d),
            None => render_folds_svg(&f, &g, &d),
        };
        fs::write(path, svg).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    if json {
        let doc: TableDoc<Vec<u32>, Vec<u32>> = TableDoc {
            corners,
            n: d.n,
            pockets: d.pockets.clone(),
            gcd: gcd_value,
            complete,
            paths: d.paths.clone(),
            cycles: d.cycles.clone(),
        };
        println!("{}", to_json(&doc));
    } else {
        head(d.n, &d.pockets);
        for p in &d.paths {
            print!("path {}", format_beads(p));
        }
        for c in &d.cycles {
            print!("cycle {}", format_beads(c));
        }
    }
    Ok(Status::Positive)
}

/// Maps construction failures onto the exit-status contract.
fn construction_outcome(e: ConstructionError) -> Result<Status, CliError> {
    match e {
        ConstructionError::NoChain { .. }
        | ConstructionError::ClosureFailure { .. }
        | ConstructionError::Degenerate { .. }
        | ConstructionError::NoInsertionPoint { .. }
        | ConstructionError::Unverified(_)
        | ConstructionError::Merge(MergeError::NoSpliceFound { .. }) => {
            println!("{e}");
            Ok(Status::Negative)
        }
        ConstructionError::Search(s) => Err(s.into()),
        ConstructionError::Merge(MergeError::BudgetExhausted { .. }) => {
            Err(CliError::Budget(e.to_string()))
        }
        other => Err(CliError::input(other)),
    }
}

fn construct(what: &Construct, json: bool) -> Result<Status, CliError> {
    let result = match what {
        Construct::Fibonacci { n } => fibonacci_chain(*n).map(|c| {
            emit_sequence(c.beads(), &TargetSet::fibonacci(), false, json);
        }),
        Construct::Lucas { n } => lucas_chain(*n).map(|c| {
            emit_sequence(c.beads(), &TargetSet::lucas(), false, json);
        }),
        Construct::SquareRows { pairs } => square_necklace_rows(&parse_pairs(pairs)?).map(|rows| {
            if json {
                println!("{}", to_json(&rows));
            } else {
                let yn = |b: bool| if b { "yes" } else { "no" };
                for r in &rows {
                    let [a, b, c, d] = r.roots;
                    println!(
                        "r,s {},{} x,y {},{} roots {a},{b},{c},{d} double-sides {},{} P {} coprime {} coverage {}",
                        r.r, r.s, r.x, r.y, r.double_sides[0], r.double_sides[1], r.perimeter,
                        yn(r.coprime), yn(r.coverage_ok)
                    );
                }
            }
        }),
        Construct::SquareNecklace { corners, targets } => {
            let ts = parse_targets(targets)?;
            build_necklace_from_corners(parse_corners(corners)?, &ts).map(|nk| {
                emit_sequence(nk.beads(), &ts, true, json);
            })
        }
        Construct::OddSquare { r, s } => odd_square_family(*r, *s).map(|out| {
            for l in &out.loops {
                eprint!("loop {}", format_beads(l));
            }
            for ring in &out.splices {
                let links: Vec<String> = ring.links.iter().map(|l| format!("{}/{}", l.enter, l.leave)).collect();
                eprintln!("splice {}", links.join(" "));
            }
            emit_sequence(out.necklace.beads(), &TargetSet::squares(), true, json);
        }),
        Construct::Cubic387 { drop_max } => cubic_chain_387(*drop_max).map(|c| {
            emit_sequence(c.beads(), &TargetSet::cubes(), false, json);
        }),
        Construct::CubicCandidates { bound } => cubic_necklace_candidates(*bound).map(|cands| {
            if json {
                println!("{}", to_json(&cands));
            } else {
                let yn = |b: bool| if b { "yes" } else { "no" };
                for c in &cands {
                    let [a, b, cc, d] = c.roots;
                    println!(
                        "roots {a},{b},{cc},{d} P {} gcd {} components {} coverage {} buildable {}",
                        c.perimeter,
                        c.gcd_value,
                        c.predicted_components,
                        yn(c.coverage_ok),
                        yn(c.buildable())
                    );
                }
            }
        }),
        Construct::Extend { targets, input } => {
            let ts = parse_targets(targets)?;
            let beads = parse_beads(&read_input(input.as_ref())?).map_err(CliError::input)?;
            extend_necklace(&Necklace::new(beads), &ts).map(|nk| {
                emit_sequence(nk.beads(), &ts, true, json);
            })
        }
    };
    match result {
        Ok(()) => Ok(Status::Positive),
        Err(e) => construction_outcome(e),
    }
}

fn verify(a: &VerifyArgs, json: bool) -> Result<Status, CliError> {
    let ts = parse_targets(&a.targets)?;
    let beads = parse_beads(&read_input(a.input.as_ref())?).map_err(CliError::input)?;
    let report = verify_sequence(&beads, &ts, a.closed);
    if json {
        println!("{}", to_json(&report));
    } else {
        println!("{report}");
    }
    Ok(Status::from_bool(report.valid))
}
