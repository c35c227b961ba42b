//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! All comparisons are exact rationals; the only thresholds are wall-clock limits.

mod common;

use common::*;
use deltatour::coverage::{covers_edge, coverage_radius, is_delta_tour, max_edge_distance};
use deltatour::discrete::{candidate_points, complete_max_stops, exact_shortest_tour, exact_with_upper_bound, initial_upper_bound, min_gap, stop_position_set, ExactOutcome};
use deltatour::fixtures::{lollipop_graph, ring_graph, ring_tour};
use deltatour::generators::all_connected_up_to;
use deltatour::graph::{Graph, Point};
use deltatour::kernels::cpp::chinese_postman_tour;
use deltatour::kernels::matching::matching_blossom;
use deltatour::kernels::trees::spanning_double_tour;
use deltatour::kernels::tsp::{christofides, held_karp, tour_cost};
use deltatour::large_delta::{build_gamma, connection_bound, domination_equivalence_check, fixed_delta_tour};
use deltatour::lp::{cut_edges, enumerate_family, solve_tour_lp, vertex_cover_tour};
use deltatour::rational::{ceil_to_usize, int, one, parse_rational, rat, zero, Rational};
use deltatour::regimes::{augment_below_one, solve, three_stop_lower_bound};
use deltatour::tour::{make_nice, Tour};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::{Duration, Instant};

const SEED: u64 = 0x5eed_2024;

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn grid(xs: &[&str]) -> Vec<Rational> {
    xs.iter().map(|s| q(s)).collect()
}

/// Exact optimum with a stop cap large enough that it cannot bind.
fn exact(g: &Graph, delta: &Rational) -> ExactOutcome {
    let ub = initial_upper_bound(g, delta);
    let s = candidate_points(g, delta).unwrap().min_gap;
    let r = exact_with_upper_bound(g, delta, Some(complete_max_stops(&ub, &s)), &ub).unwrap();
    assert!(!r.cap_binding, "complete cap cannot bind");
    r
}

type Check = Result<String, String>;

struct Report {
    failed: Vec<&'static str>,
}

impl Report {
    fn run(&mut self, id: &'static str, title: &str, limit: Duration, f: impl FnOnce() -> Check) {
        let t0 = Instant::now();
        let res = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
            .unwrap_or_else(|e| Err(format!("panicked: {}", panic_text(&e))));
        let took = t0.elapsed();
        let (ok, detail) = match res {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over time limit")),
            Err(d) => (false, d),
        };
        println!(
            "[{}] {id} {title}: {detail} ({:.2} s, limit {} s)",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs()
        );
        if !ok {
            self.failed.push(id);
        }
    }
}

fn panic_text(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Check {
    let g = ring_graph();
    let t = ring_tour(&g);
    ensure(is_delta_tour(&g, &t, &one()), || "fixture tour is not a 1-tour".into())?;
    ensure(t.length(&g) == int(18), || format!("fixture length {}", t.length(&g)))?;
    let r = solve(&g, &one()).map_err(|e| e.to_string())?;
    ensure(is_delta_tour(&g, &r.tour, &one()), || "solver tour invalid".into())?;
    ensure(r.length <= int(3 * 18), || format!("solver length {} > 54", r.length))?;
    Ok(format!("fixture length 18 valid; solver length {} <= 54", r.length))
}

fn ac2() -> Check {
    let g = lollipop_graph();
    let r = exact_shortest_tour(&g, &rat(5, 3), None).map_err(|e| e.to_string())?;
    ensure(r.length == rat(1, 3), || format!("exact length {}", r.length))?;
    Ok(format!("exact length 1/3 with default cap {} (binding: {})", r.max_stops, r.cap_binding))
}

fn ac3(graphs: &[Graph]) -> Check {
    let bad: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let s = solve(g, &zero()).unwrap().length;
            let c = chinese_postman_tour(g).length(g);
            let e = exact(g, &zero()).length;
            (s != c || c != e).then(|| format!("n={} m={}: solve {s} postman {c} exact {e}", g.n(), g.m()))
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} graphs, all three lengths equal", graphs.len()))
}

fn ac4(graphs: &[Graph]) -> Check {
    let deltas = grid(&["1/10", "1/6", "1/4", "2/5", "1/2", "3/5", "33/40", "9/10", "1", "5/4"]);
    let mut summary = Vec::new();
    let mut bad = Vec::new();
    for d in &deltas {
        let rows: Vec<(Rational, Rational, Option<Rational>, usize, usize)> = graphs
            .par_iter()
            .map(|g| {
                let s = solve(g, d).unwrap();
                let e = exact(g, d);
                (s.length, e.length, s.theoretical_ratio, g.n(), g.m())
            })
            .collect();
        let mut worst = one();
        for (sl, el, bound, n, m) in rows {
            if el == zero() {
                if sl != zero() {
                    bad.push(format!("delta {d} n={n} m={m}: optimum 0, solver {sl}"));
                }
                continue;
            }
            let ratio = &sl / &el;
            match bound {
                Some(b) if ratio <= b => {}
                other => bad.push(format!("delta {d} n={n} m={m}: ratio {ratio} vs bound {other:?}")),
            }
            worst = worst.max(ratio);
        }
        summary.push(format!("{d}:{worst}"));
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} graphs x {} deltas within bounds; worst ratios {}", graphs.len(), deltas.len(), summary.join(" ")))
}

fn ac5(graphs: &[Graph]) -> Check {
    let bad: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let lp = solve_tour_lp(g);
            let e = exact(g, &one()).length;
            if lp.value > e {
                return Some(format!("n={} m={}: lp {} > exact {}", g.n(), g.m(), lp.value, e));
            }
            if lp.z.iter().any(|z| *z < zero() || *z > int(2)) {
                return Some(format!("n={} m={}: z out of bounds", g.n(), g.m()));
            }
            for f in enumerate_family(g) {
                let mut mask = vec![false; g.n()];
                for v in &f {
                    mask[*v] = true;
                }
                let s: Rational = cut_edges(g, &mask).iter().map(|&k| lp.z[k].clone()).sum();
                if s < int(2) {
                    return Some(format!("n={} m={}: cut {:?} has {}", g.n(), g.m(), f, s));
                }
            }
            None
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} graphs, lp value <= exact 1-tour, solution feasible for the full family", graphs.len()))
}

fn ac6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut cases = Vec::new();
    while cases.len() < 1000 {
        let g = random_graph(&mut rng, 7);
        if g.m() == 0 {
            continue;
        }
        let t = make_nice(&g, &random_tour(&g, &mut rng, 12));
        let (x, y) = g.edges()[rng.gen_range(0..g.m())];
        let r = max_edge_distance(&g, &t, x, y).unwrap().max_distance;
        let delta = match rng.gen_range(0..3) {
            0 => r,
            1 => (r + rat(rng.gen_range(-1..=1), 24)).max(zero()),
            _ => rat(rng.gen_range(0..=36), 12),
        };
        cases.push((g, t, delta));
    }
    let edges: usize = cases.iter().map(|(g, _, _)| g.m()).sum();
    let bad: Vec<String> = cases
        .par_iter()
        .flat_map_iter(|(g, t, d)| {
            g.edges().iter().filter_map(move |&(x, y)| {
                let geo = max_edge_distance(g, t, x, y).unwrap().max_distance <= *d;
                match covers_edge(g, t, x, y, d) {
                    Ok(c) if c == geo => None,
                    other => Some(format!("edge {x}-{y} at {d}: case analysis {other:?}, geometric {geo}")),
                }
            })
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} mismatches, first: {}", bad.len(), bad[0]))?;
    Ok(format!("1000 triples, {edges} edge checks agree"))
}

fn ac7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let deltas = grid(&["9/8", "5/4", "4/3", "3/2", "5/3", "7/4", "2", "9/4", "5/2", "3"]);
    let mut cases = Vec::new();
    while cases.len() < 500 {
        let g = random_graph(&mut rng, 6);
        if g.m() == 0 {
            continue;
        }
        let d = deltas[rng.gen_range(0..deltas.len())].clone();
        let t = if rng.gen_bool(0.2) && d >= rat(3, 2) {
            fixed_delta_tour(&g, &d).unwrap().tour
        } else {
            random_candidate_tour(&g, &d, &mut rng, 4)
        };
        cases.push((g, d, t));
    }
    let res: Vec<Result<bool, String>> = cases
        .par_iter()
        .map(|(g, d, t)| {
            let gm = build_gamma(g, d).map_err(|e| e.to_string())?;
            let dom = domination_equivalence_check(t, &gm).map_err(|e| e.to_string())?;
            let valid = is_delta_tour(g, t, d);
            if dom == valid {
                Ok(valid)
            } else {
                Err(format!("n={} m={} delta {d}: dominates {dom}, valid {valid}", g.n(), g.m()))
            }
        })
        .collect();
    let bad: Vec<&String> = res.iter().filter_map(|r| r.as_ref().err()).collect();
    ensure(bad.is_empty(), || format!("{} mismatches, first: {}", bad.len(), bad[0]))?;
    let yes = res.iter().filter(|r| matches!(r, Ok(true))).count();
    Ok(format!("500 triples agree ({yes} valid, {} invalid)", 500 - yes))
}

fn ac8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let cases: Vec<(Graph, Tour)> = (0..1000)
        .map(|_| {
            let g = random_graph(&mut rng, 8);
            let t = random_tour(&g, &mut rng, 20);
            (g, t)
        })
        .collect();
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|(g, t)| {
            let n1 = make_nice(g, t);
            let radius = coverage_radius(g, t);
            let mut why = Vec::new();
            if n1.length(g) > t.length(g) {
                why.push("longer");
            }
            if n1.alpha() > t.alpha() {
                why.push("more stops");
            }
            if make_nice(g, &n1) != n1 {
                why.push("not idempotent");
            }
            if !is_delta_tour(g, &n1, &radius) {
                why.push("coverage lost");
            }
            if !(n1.alpha() <= 2 || n1.is_nice(g).unwrap()) {
                why.push("neither nice nor short");
            }
            (!why.is_empty()).then(|| format!("{:?}: {}", t.stops(), why.join(",")))
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} failures, first: {}", bad.len(), bad[0]))?;
    Ok("1000 tours: never longer, never more stops, idempotent, coverage kept".into())
}

fn ac9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mats: Vec<Vec<Vec<Rational>>> = (0..500)
        .map(|_| {
            let n = 2 * rng.gen_range(1..=5);
            random_weights(&mut rng, n)
        })
        .collect();
    let bad: Vec<String> = mats
        .par_iter()
        .filter_map(|w| {
            let (pairs, cost) = matching_blossom(w).unwrap();
            let mut seen = vec![false; w.len()];
            let mut sum = zero();
            for &(i, j) in &pairs {
                if seen[i] || seen[j] {
                    return Some("vertex matched twice".to_string());
                }
                seen[i] = true;
                seen[j] = true;
                sum += &w[i][j];
            }
            let oracle = matching_oracle(w);
            (!(seen.iter().all(|&s| s) && sum == cost && cost == oracle))
                .then(|| format!("n={}: blossom {cost} (pairs sum {sum}), oracle {oracle}", w.len()))
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    let metrics: Vec<Vec<Vec<Rational>>> = (0..200)
        .map(|_| {
            let n = rng.gen_range(3..=10);
            random_metric(&mut rng, n)
        })
        .collect();
    let mut worst = one();
    for w in &metrics {
        let c = tour_cost(w, &christofides(w).unwrap());
        let hk = held_karp(w).unwrap().1;
        ensure(c <= rat(3, 2) * &hk, || format!("n={}: christofides {c} > 1.5 x {hk}", w.len()))?;
        if hk > zero() {
            worst = worst.max(&c / &hk);
        }
    }
    Ok(format!("500 matchings equal the subset oracle; 200 metric tours within 3/2 (worst {worst})"))
}

fn literal_three_stop_bound(g: &Graph, d: &Rational) -> Rational {
    let v1 = int(g.leaves().len() as i64);
    let rest = int(g.n() as i64) - &v1;
    int(2) * (one() - d) * v1 + int(4) * (one() - d) * rest
}

fn ac10() -> Check {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let mut corpus: Vec<Graph> = all_connected_up_to(6).unwrap();
    corpus.extend((0..100).map(|_| random_graph(&mut rng, 12)));

    // doubled spanning tree
    let bad = corpus
        .par_iter()
        .filter(|g| {
            let t = spanning_double_tour(g);
            t.length(g) > int(2 * g.n() as i64 - 2) || !is_delta_tour(g, &t, &rat(1, 2))
        })
        .count();
    if bad > 0 {
        failures.push(format!("doubled tree: {bad} graphs violate"));
    }
    notes.push(format!("doubled tree ok on {} graphs", corpus.len()));

    // stop count versus length
    let deltas = grid(&["0", "1/10", "1/6", "1/4", "2/5", "1/2", "3/5", "33/40", "9/10", "1", "5/4", "3/2", "2", "5/2"]);
    let mut emitted = 0usize;
    let mut bad = Vec::new();
    for d in &deltas {
        let s = min_gap(&stop_position_set(d).unwrap());
        let tours: Vec<(usize, Rational)> = corpus
            .par_iter()
            .flat_map_iter(|g| {
                let mut v = vec![solve(g, d).unwrap().tour];
                if g.n() <= 5 {
                    v.push(exact(g, d).tour);
                }
                v.into_iter().map(move |t| (t.alpha(), t.length(g)))
            })
            .collect();
        emitted += tours.len();
        for (alpha, len) in tours {
            if alpha > ceil_to_usize(&(&len / &s)) {
                bad.push(format!("delta {d}: alpha {alpha}, length {len}, s {s}"));
            }
        }
    }
    if !bad.is_empty() {
        failures.push(format!("stop count: {} violations, first {}", bad.len(), bad[0]));
    }
    notes.push(format!("stop count ok on {emitted} tours"));

    // three-stop bound on augmented tours, checked exactly as stated
    let below = grid(&["33/40", "7/8", "9/10", "19/20"]);
    let mut checked = 0;
    let mut literal_bad = Vec::new();
    let mut repaired_bad = 0;
    for g in corpus.iter().filter(|g| g.n() >= 3) {
        let base = vertex_cover_tour(g);
        for d in &below {
            let t = augment_below_one(g, &base, d).unwrap();
            if t.alpha() < 3 {
                continue;
            }
            checked += 1;
            let len = t.length(g);
            if len < three_stop_lower_bound(g, d) {
                repaired_bad += 1;
            }
            let lit = literal_three_stop_bound(g, d);
            if len < lit {
                let vertex_stops = t.distinct_stops().iter().filter(|p| matches!(p, Point::Vertex(_))).count();
                literal_bad.push((g.n(), g.m(), d.clone(), len, lit, vertex_stops));
            }
        }
    }
    if repaired_bad > 0 {
        failures.push(format!("augmented tours below the one-vertex-aware bound: {repaired_bad}"));
    }
    if let Some((n, m, d, len, lit, vs)) = literal_bad.first() {
        let all_single = literal_bad.iter().all(|x| x.5 == 1);
        failures.push(format!(
            "three-stop bound as stated fails on {} of {checked} augmented tours, e.g. n={n} m={m} delta {d}: length {len} < {lit} \
             with {vs} vertex stop(s); every counterexample stops at a single vertex: {all_single}",
            literal_bad.len()
        ));
    } else {
        notes.push(format!("three-stop bound ok on {checked} tours"));
    }

    // connection bound for the fixed-radius large-δ tour
    let large = grid(&["3/2", "7/4", "2", "5/2", "3"]);
    let bad = corpus
        .par_iter()
        .flat_map_iter(|g| large.iter().map(move |d| (g, d)))
        .filter(|(g, d)| {
            let r = fixed_delta_tour(g, d).unwrap();
            r.tour.length(g) > connection_bound(d, r.domset.len()) || !is_delta_tour(g, &r.tour, d)
        })
        .count();
    if bad > 0 {
        failures.push(format!("connection bound: {bad} violations"));
    }
    notes.push(format!("connection bound ok on {} runs", corpus.len() * large.len()));

    if failures.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(format!("{} | passed parts: {}", failures.join("; "), notes.join("; ")))
    }
}

fn main() {
    if let Ok(k) = std::env::var("DELTA_TOUR_THREADS") {
        if let Ok(k) = k.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    std::panic::set_hook(Box::new(|_| {}));
    let small = all_connected_up_to(5).unwrap();
    let mut r = Report { failed: Vec::new() };
    let min = |m: u64| Duration::from_secs(60 * m);
    r.run("AC1", "ring fixture", Duration::from_secs(10), ac1);
    r.run("AC2", "lollipop fixture exact", Duration::from_secs(60), ac2);
    r.run("AC3", "zero radius equals postman", min(5), || ac3(&small));
    r.run("AC4", "ratio ceilings vs exact", min(30), || ac4(&small));
    r.run("AC5", "LP lower bound and feasibility", min(5), || ac5(&small));
    r.run("AC6", "edge characterization vs geometry", min(2), ac6);
    r.run("AC7", "domination vs validation", min(5), ac7);
    r.run("AC8", "normalization", min(2), ac8);
    r.run("AC9", "matching and TSP kernels", min(5), ac9);
    r.run("AC10", "structural bounds", min(5), ac10);
    if r.failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
    } else {
        println!("acceptance: failed {}", r.failed.join(", "));
        std::process::exit(1);
    }
}
