//! Batch solving over a corpus and a grid of radii, with CSV output.

use anyhow::{Context, Result};
use deltatour::discrete::{candidate_points, complete_max_stops, exact_with_upper_bound, initial_upper_bound};
use deltatour::generators::{all_connected, gnp_connected};
use deltatour::graph::Graph;
use deltatour::io::parse_graph;
use deltatour::rational::{approx_decimal, fmt_rational, zero, Rational};
use deltatour::regimes::{solve_with, LargeMode, SolveOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::path::Path;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub graph: Graph,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub deltas: Vec<Rational>,
    pub mode: LargeMode,
    /// Exact oracle for graphs up to this size; 0 disables it.
    pub exact_max_n: usize,
    pub timing: bool,
}

/// One CSV line. Numbers are exact fraction strings except `ratio_approx` and `wall_ms`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BenchRow {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub delta: String,
    pub regime: String,
    pub length: String,
    pub lower_bound: String,
    pub exact_length: String,
    pub certified_ratio: String,
    pub exact_ratio: String,
    pub shipped_bound: String,
    pub within_bound: String,
    pub ratio_approx: String,
    pub wall_ms: String,
    pub error: String,
}

const HEADER: [&str; 15] = [
    "id",
    "n",
    "m",
    "delta",
    "regime",
    "length",
    "lower_bound",
    "exact_length",
    "certified_ratio",
    "exact_ratio",
    "shipped_bound",
    "within_bound",
    "ratio_approx",
    "wall_ms",
    "error",
];

pub fn load_corpus(dir: &Path) -> Result<Vec<Instance>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "g"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            let graph = parse_graph(&text).with_context(|| format!("parsing {}", p.display()))?;
            let id = p.file_stem().unwrap().to_string_lossy().into_owned();
            Ok(Instance { id, graph })
        })
        .collect()
}

pub fn all_connected_instances(max_n: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (i, graph) in all_connected(n)?.into_iter().enumerate() {
            out.push(Instance { id: format!("n{n}_{:03}", i + 1), graph });
        }
    }
    Ok(out)
}

pub fn random_instances(count: usize, n: usize, p: f64, seed: u64) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| Ok(Instance { id: format!("r{:04}", i + 1), graph: gnp_connected(n, p, &mut rng)? }))
        .collect()
}

fn opt(x: &Option<Rational>) -> String {
    x.as_ref().map(fmt_rational).unwrap_or_default()
}

fn one_row(inst: &Instance, delta: &Rational, cfg: &BenchConfig) -> BenchRow {
    let g = &inst.graph;
    let mut row = BenchRow { id: inst.id.clone(), n: g.n(), m: g.m(), delta: fmt_rational(delta), ..Default::default() };
    let t0 = Instant::now();
    let report = match solve_with(g, delta, &SolveOptions { mode: cfg.mode }) {
        Ok(r) => r,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    let solved = t0.elapsed();
    row.regime = report.regime.label().to_string();
    row.length = fmt_rational(&report.length);
    row.lower_bound = fmt_rational(&report.best_lower_bound());
    row.certified_ratio = opt(&report.certified_ratio);
    row.shipped_bound = opt(&report.theoretical_ratio);
    let mut shown = report.certified_ratio.clone();
    if g.n() <= cfg.exact_max_n {
        let ub = initial_upper_bound(g, delta);
        let exact = candidate_points(g, delta)
            .map_err(|e| e.to_string())
            .and_then(|cs| exact_with_upper_bound(g, delta, Some(complete_max_stops(&ub, &cs.min_gap)), &ub).map_err(|e| e.to_string()));
        match exact {
            Ok(e) => {
                row.exact_length = fmt_rational(&e.length);
                if e.length > zero() {
                    let r = &report.length / &e.length;
                    if let Some(b) = &report.theoretical_ratio {
                        row.within_bound = (r <= *b).to_string();
                    }
                    row.exact_ratio = fmt_rational(&r);
                    shown = Some(r);
                } else {
                    row.within_bound = (report.length == zero()).to_string();
                }
            }
            Err(e) => row.error = format!("exact: {e}"),
        }
    }
    row.ratio_approx = shown.as_ref().map(|r| approx_decimal(r, 6)).unwrap_or_default();
    if cfg.timing {
        row.wall_ms = format!("{:.3}", solved.as_secs_f64() * 1e3);
    }
    row
}

fn pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(k) = std::env::var("DELTA_TOUR_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&k| k > 0) {
        b = b.num_threads(k);
    }
    b.build().expect("thread pool")
}

/// Rows in instance order, then radius order, whatever the thread count.
pub fn bench_rows(instances: &[Instance], cfg: &BenchConfig) -> Vec<BenchRow> {
    let jobs: Vec<(&Instance, &Rational)> = instances.iter().flat_map(|i| cfg.deltas.iter().map(move |d| (i, d))).collect();
    pool().install(|| {
        jobs.par_iter()
            .map(|(inst, d)| {
                std::panic::catch_unwind(|| one_row(inst, d, cfg)).unwrap_or_else(|_| BenchRow {
                    id: inst.id.clone(),
                    n: inst.graph.n(),
                    m: inst.graph.m(),
                    delta: fmt_rational(d),
                    error: "panic".into(),
                    ..Default::default()
                })
            })
            .collect()
    })
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record([
            r.id.as_str(),
            &r.n.to_string(),
            &r.m.to_string(),
            &r.delta,
            &r.regime,
            &r.length,
            &r.lower_bound,
            &r.exact_length,
            &r.certified_ratio,
            &r.exact_ratio,
            &r.shipped_bound,
            &r.within_bound,
            &r.ratio_approx,
            &r.wall_ms,
            &r.error,
        ])?;
    }
    w.flush()?;
    Ok(())
}
