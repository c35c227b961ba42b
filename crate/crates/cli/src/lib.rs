//! Command-line front end: argument parsing, file I/O and the benchmark harness.

mod bench;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use deltatour::coverage::{edge_verdicts, is_delta_tour, CoverageMode};
use deltatour::discrete::{candidate_points, complete_max_stops, exact_shortest_tour, exact_with_upper_bound, initial_upper_bound};
use deltatour::generators;
use deltatour::graph::Graph;
use deltatour::io::{parse_graph, parse_tour, report_to_json, tour_to_json, verdict_to_json, write_graph};
use deltatour::rational::{fmt_rational, parse_rational, to_f64, zero, Rational};
use deltatour::regimes::{solve_with, LargeMode, SolveError, SolveOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};

pub use bench::{bench_rows, write_csv, BenchConfig, BenchRow, Instance};

/// Success, or a valid δ-tour.
pub const EXIT_OK: i32 = 0;
/// The question was answered negatively: not a δ-tour, or no tour within the cap.
pub const EXIT_NEGATIVE: i32 = 1;
/// Unreadable input or bad parameters.
pub const EXIT_INPUT: i32 = 2;
/// A computed tour failed its own validation.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "deltatour", version, about = "Shortest delta-tours on unit-length graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Fixed,
    InputDelta,
}

impl From<ModeArg> for LargeMode {
    fn from(m: ModeArg) -> LargeMode {
        match m {
            ModeArg::Fixed => LargeMode::Fixed,
            ModeArg::InputDelta => LargeMode::InputDelta,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Tree,
    GnpConnected,
    AllConnectedN,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Approximate a shortest tour and report lower bounds.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        /// `p/q`, an integer, or a terminating decimal.
        #[arg(long)]
        delta: String,
        #[arg(long, value_enum, default_value = "fixed")]
        mode: ModeArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a tour: exit 0 iff every point is within delta.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tour: PathBuf,
        #[arg(long)]
        delta: String,
        /// Print the verdicts as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Exact shortest tour by exhaustive search (small graphs).
    Exact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        delta: String,
        /// Stop cap; defaults to a small fixed cap. `0` means a cap that cannot bind.
        #[arg(long)]
        max_stops: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a corpus over a grid of radii and write CSV.
    Bench {
        /// Directory of graph files (`*.g`, by name).
        #[arg(long, conflicts_with_all = ["all_connected", "random"])]
        corpus: Option<PathBuf>,
        /// Every connected graph on 1..=N vertices.
        #[arg(long)]
        all_connected: Option<usize>,
        /// Number of random connected graphs.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value = "1/4")]
        p: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated radii.
        #[arg(long, default_value = "1/10,1/6,1/4,1/2,3/5,33/40,9/10,1,5/4,3/2,2")]
        deltas: String,
        #[arg(long, value_enum, default_value = "fixed")]
        mode: ModeArg,
        /// Run the exact oracle on graphs with at most this many vertices.
        #[arg(long, default_value_t = 0)]
        exact_max_n: usize,
        /// Fill the wall-time column (makes output run-dependent).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate graph files.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Edge probability for gnp-connected, as `p/q` or a decimal.
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; a directory for all-connected-n.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An error with the exit code it should produce.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure { code: EXIT_INPUT, error: e.into() }
}

type Outcome = Result<i32, Failure>;

pub fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(input)?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display())).map_err(input)
}

pub fn parse_delta(s: &str) -> Result<Rational, Failure> {
    let d = parse_rational(s).map_err(|e| input(anyhow::anyhow!("delta: {e}")))?;
    if d < zero() {
        return Err(input(anyhow::anyhow!("delta must be nonnegative, got {s}")));
    }
    Ok(d)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(input),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).and_then(|_| so.flush()).map_err(input)
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Solve { graph, delta, mode, out } => cmd_solve(&graph, &delta, mode, &out),
        Command::Validate { graph, tour, delta, json } => cmd_validate(&graph, &tour, &delta, json),
        Command::Exact { graph, delta, max_stops, out } => cmd_exact(&graph, &delta, max_stops, &out),
        Command::Bench { corpus, all_connected, random, n, p, seed, deltas, mode, exact_max_n, timing, out } => {
            let instances = if let Some(dir) = corpus {
                bench::load_corpus(&dir).map_err(input)?
            } else if let Some(k) = all_connected {
                bench::all_connected_instances(k).map_err(input)?
            } else if let Some(k) = random {
                let p = parse_probability(&p)?;
                bench::random_instances(k, n, p, seed).map_err(input)?
            } else {
                return Err(input(anyhow::anyhow!("bench needs --corpus, --all-connected or --random")));
            };
            let deltas = deltas
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(parse_delta)
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = BenchConfig { deltas, mode: mode.into(), exact_max_n, timing };
            let rows = bench_rows(&instances, &cfg);
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).map_err(input)?;
            emit(&out, &String::from_utf8(buf).expect("csv is utf-8"))?;
            Ok(EXIT_OK)
        }
        Command::Gen { family, n, p, seed, out } => cmd_gen(family, n, p, seed, &out),
    }
}

fn cmd_solve(graph: &Path, delta: &str, mode: ModeArg, out: &Option<PathBuf>) -> Outcome {
    let g = read_graph(graph)?;
    let d = parse_delta(delta)?;
    let r = match solve_with(&g, &d, &SolveOptions { mode: mode.into() }) {
        Ok(r) => r,
        Err(e @ SolveError::Invalid(..)) => return Err(Failure { code: EXIT_INTERNAL, error: e.into() }),
        Err(e) => return Err(input(e)),
    };
    if !is_delta_tour(&g, &r.tour, &d) {
        return Err(Failure { code: EXIT_INTERNAL, error: anyhow::anyhow!("emitted tour failed validation") });
    }
    let mut v = report_to_json(&r);
    v["validated"] = json!(true);
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))?;
    Ok(EXIT_OK)
}

fn cmd_validate(graph: &Path, tour: &Path, delta: &str, as_json: bool) -> Outcome {
    let g = read_graph(graph)?;
    let d = parse_delta(delta)?;
    let text = std::fs::read_to_string(tour).with_context(|| format!("reading {}", tour.display())).map_err(input)?;
    let t = parse_tour(&g, &text).with_context(|| format!("parsing {}", tour.display())).map_err(input)?;
    let verdicts = edge_verdicts(&g, &t, &d);
    let ok = verdicts.iter().all(|v| v.mode != CoverageMode::Uncovered);
    let mut s = String::new();
    if as_json {
        let v = json!({
            "delta": fmt_rational(&d),
            "length": fmt_rational(&t.length(&g)),
            "valid": ok,
            "edges": verdicts.iter().map(verdict_to_json).collect::<Vec<_>>(),
        });
        s.push_str(&serde_json::to_string_pretty(&v).unwrap());
        s.push('\n');
    } else {
        s.push_str(&format!("{:<12} {:<14} {:<20} {}\n", "edge", "max_distance", "mode", "witness"));
        for v in &verdicts {
            s.push_str(&format!(
                "{:<12} {:<14} {:<20} {}\n",
                format!("{}-{}", v.edge.0 + 1, v.edge.1 + 1),
                fmt_rational(&v.max_distance),
                v.mode.label(),
                deltatour::io::point_to_json(&v.witness)
            ));
        }
        s.push_str(&format!(
            "length {}; {} at delta {}\n",
            fmt_rational(&t.length(&g)),
            if ok { "valid" } else { "NOT a tour" },
            fmt_rational(&d)
        ));
    }
    emit(&None, &s)?;
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_exact(graph: &Path, delta: &str, max_stops: Option<usize>, out: &Option<PathBuf>) -> Outcome {
    let g = read_graph(graph)?;
    let d = parse_delta(delta)?;
    let res = match max_stops {
        Some(0) => {
            let ub = initial_upper_bound(&g, &d);
            let s = candidate_points(&g, &d).map_err(input)?.min_gap;
            exact_with_upper_bound(&g, &d, Some(complete_max_stops(&ub, &s)), &ub)
        }
        cap => exact_shortest_tour(&g, &d, cap),
    };
    let r = match res {
        Ok(r) => r,
        Err(e @ deltatour::discrete::ExactError::CapExhausted { .. }) => {
            eprintln!("error: {e}");
            return Ok(EXIT_NEGATIVE);
        }
        Err(e) => return Err(input(e)),
    };
    let v = json!({
        "delta": fmt_rational(&d),
        "length": fmt_rational(&r.length),
        "alpha": r.tour.alpha(),
        "tour": tour_to_json(&r.tour),
        "max_stops": r.max_stops,
        "cap_binding": r.cap_binding,
        "s_delta": fmt_rational(&r.s_delta),
        "configurations": r.configs,
    });
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))?;
    Ok(EXIT_OK)
}

fn parse_probability(s: &str) -> Result<f64, Failure> {
    let p = parse_rational(s).map_err(|e| input(anyhow::anyhow!("p: {e}")))?;
    let f = to_f64(&p);
    if !(f > 0.0 && f <= 1.0) {
        return Err(input(anyhow::anyhow!("p must lie in (0,1], got {s}")));
    }
    Ok(f)
}

fn cmd_gen(family: Family, n: usize, p: Option<String>, seed: u64, out: &Option<PathBuf>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = |g: Result<Graph, generators::GenError>| -> Result<Vec<Graph>, Failure> { Ok(vec![g.map_err(input)?]) };
    let graphs = match family {
        Family::Path => one(generators::path(n))?,
        Family::Cycle => one(generators::cycle(n))?,
        Family::Star => one(generators::star(n))?,
        Family::Tree => one(generators::random_tree(n, &mut rng))?,
        Family::GnpConnected => {
            let p = parse_probability(p.as_deref().ok_or_else(|| input(anyhow::anyhow!("gnp-connected needs --p")))?)?;
            one(generators::gnp_connected(n, p, &mut rng))?
        }
        Family::AllConnectedN => generators::all_connected(n).map_err(input)?,
    };
    match (family, out) {
        (Family::AllConnectedN, Some(dir)) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display())).map_err(input)?;
            for (i, g) in graphs.iter().enumerate() {
                let path = dir.join(format!("n{n}_{:03}.g", i + 1));
                std::fs::write(&path, write_graph(g)).with_context(|| format!("writing {}", path.display())).map_err(input)?;
            }
            eprintln!("wrote {} graphs to {}", graphs.len(), dir.display());
        }
        _ => {
            let mut s = String::new();
            for (i, g) in graphs.iter().enumerate() {
                if graphs.len() > 1 {
                    s.push_str(&format!("# graph {}\n", i + 1));
                }
                s.push_str(&write_graph(g));
            }
            emit(out, &s)?;
        }
    }
    Ok(EXIT_OK)
}
