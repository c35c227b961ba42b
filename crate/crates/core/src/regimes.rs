//! Per-δ approximation algorithms, their lower bounds, and the dispatcher.

use crate::coverage::is_delta_tour;
use crate::discrete::{best_two_stop_tour, candidate_points, exact_shortest_tour, ExactError};
use crate::graph::{Graph, Point};
use crate::kernels::cpp::chinese_postman_tour;
use crate::kernels::trees::spanning_double_tour;
use crate::kernels::tsp::{christofides, held_karp, mst, WeightedGraph, TspError};
use crate::large_delta::{fixed_delta_tour, input_delta_tour, LargeDeltaError};
use crate::lp::{solve_tour_lp, vertex_cover_tour};
use crate::rational::{half, int, one, rat, zero, Rational};
use crate::tour::{make_nice, Tour};
use num_traits::{Signed, Zero};
use std::fmt;

/// Exact TSP lower bounds are computed up to this many auxiliary vertices.
pub const HELD_KARP_BOUND_LIMIT: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// At most two vertices: solved exactly.
    Tiny,
    Zero,
    Small,
    Mid,
    Half,
    Lifted,
    BelowOne,
    OneToThreeHalves,
    Large,
}

impl Regime {
    pub fn of(delta: &Rational) -> Regime {
        if delta.is_zero() {
            Regime::Zero
        } else if *delta <= rat(1, 6) {
            Regime::Small
        } else if *delta < half() {
            Regime::Mid
        } else if *delta == half() {
            Regime::Half
        } else if *delta < rat(33, 40) {
            Regime::Lifted
        } else if *delta < one() {
            Regime::BelowOne
        } else if *delta < rat(3, 2) {
            Regime::OneToThreeHalves
        } else {
            Regime::Large
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::Tiny => "exact",
            Regime::Zero => "zero",
            Regime::Small => "(0,1/6]",
            Regime::Mid => "(1/6,1/2)",
            Regime::Half => "1/2",
            Regime::Lifted => "(1/2,33/40)",
            Regime::BelowOne => "[33/40,1)",
            Regime::OneToThreeHalves => "[1,3/2)",
            Regime::Large => "[3/2,inf)",
        }
    }

    /// Shipped worst-case ratio, if any. Matching-based TSP stands in for the
    /// 1.4 graphic-TSP routine, so every bound that would use 1.4 uses 3/2.
    pub fn shipped_ratio(self, delta: &Rational) -> Option<Rational> {
        match self {
            Regime::Tiny | Regime::Zero => Some(one()),
            Regime::Small => Some(one() / (one() - int(2) * delta)),
            Regime::Mid | Regime::Half => Some(rat(3, 2)),
            Regime::Lifted => Some(rat(3, 2) / (int(2) - int(2) * delta)),
            Regime::BelowOne => Some(int(4)),
            Regime::OneToThreeHalves => Some(int(3) / (int(3) - int(2) * delta)),
            Regime::Large => None,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LargeMode {
    #[default]
    Fixed,
    InputDelta,
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub mode: LargeMode,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub delta: Rational,
    pub regime: Regime,
    pub tour: Tour,
    pub length: Rational,
    /// `(source, value)`; every value is at most `length`.
    pub lower_bounds: Vec<(String, Rational)>,
    /// `None` means only measured ratios are available.
    pub theoretical_ratio: Option<Rational>,
    /// `length / best lower bound`; 1 for a zero-length tour; `None` without a positive bound.
    pub certified_ratio: Option<Rational>,
    pub s_delta: Rational,
    pub opt_lp: Option<Rational>,
    pub constraints_generated: Option<usize>,
    pub gamma_vertices: Option<usize>,
    pub domset_size: Option<usize>,
    pub tree_weight: Option<Rational>,
}

impl SolveReport {
    pub fn best_lower_bound(&self) -> Rational {
        self.lower_bounds.iter().map(|(_, v)| v.clone()).max().unwrap_or_else(zero)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("delta must be nonnegative")]
    NegativeDelta,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    LargeDelta(#[from] LargeDeltaError),
    #[error(transparent)]
    Tsp(#[from] TspError),
    #[error("internal error: {0} produced a tour that is not a {1}-tour")]
    Invalid(&'static str, Rational),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RegimeError {
    #[error("delta {0} is outside the range of this algorithm")]
    OutOfRange(Rational),
    #[error("the graph needs at least three vertices")]
    TooSmall,
    #[error("vertex {0} is neither stopped at nor next to a stop")]
    NotACover(usize),
    #[error("stop position {0} is not of the expected form")]
    UnexpectedPosition(Point),
    #[error("tour is not nice with at least three stops")]
    NotNice,
}

pub fn approx_small_delta(g: &Graph, delta: &Rational) -> Result<Tour, RegimeError> {
    if !delta.is_positive() || *delta > rat(1, 6) {
        return Err(RegimeError::OutOfRange(delta.clone()));
    }
    Ok(chinese_postman_tour(g))
}

/// The auxiliary TSP instance for δ ∈ (1/6,1/2): its points and weighted edges.
#[derive(Clone, Debug)]
pub struct AuxTsp {
    pub points: Vec<Point>,
    pub graph: WeightedGraph,
}

pub fn build_aux_tsp(g: &Graph, delta: &Rational) -> Result<AuxTsp, RegimeError> {
    if *delta <= rat(1, 6) || *delta >= half() {
        return Err(RegimeError::OutOfRange(delta.clone()));
    }
    if g.n() < 3 {
        return Err(RegimeError::TooSmall);
    }
    let inner: Vec<bool> = (0..g.n()).map(|v| g.degree(v) >= 2).collect();
    let mut points: Vec<Point> = (0..g.n()).filter(|&v| inner[v]).map(Point::Vertex).collect();
    let mut links: Vec<(Point, Point)> = Vec::new();
    let two_delta = int(2) * delta;
    for &(a, b) in g.edges() {
        match (inner[a], inner[b]) {
            (true, false) | (false, true) => {
                let (u, v) = if inner[a] { (a, b) } else { (b, a) };
                let p = Point::on_edge(u, v, one() - delta);
                links.push((Point::Vertex(u), p.clone()));
                points.push(p);
            }
            (true, true) if *delta < rat(1, 4) => {
                let p = Point::on_edge(a, b, two_delta.clone());
                let q = Point::on_edge(b, a, two_delta.clone());
                links.push((Point::Vertex(a), p.clone()));
                links.push((p.clone(), q.clone()));
                links.push((q.clone(), Point::Vertex(b)));
                points.push(p);
                points.push(q);
            }
            (true, true) => {
                // a < b, so the single point is measured from the lower id
                let p = Point::on_edge(a, b, two_delta.clone());
                links.push((Point::Vertex(a), p.clone()));
                links.push((p.clone(), Point::Vertex(b)));
                points.push(p);
            }
            (false, false) => unreachable!("connected graphs on three or more vertices have no isolated edge"),
        }
    }
    let mut graph = WeightedGraph::new(points.len());
    let idx = |p: &Point| points.iter().position(|x| x == p).unwrap();
    for (p, q) in &links {
        graph.add_edge(idx(p), idx(q), g.distance(p, q));
    }
    Ok(AuxTsp { points, graph })
}

/// Turns a closed order over auxiliary points into a walk along auxiliary edges.
fn aux_walk(g: &Graph, aux: &AuxTsp, order: &[usize], next: &[Vec<usize>]) -> Tour {
    if order.len() <= 1 {
        return Tour::single(aux.points[order.first().copied().unwrap_or(0)].clone());
    }
    let mut stops = vec![aux.points[order[0]].clone()];
    for w in order.windows(2) {
        for i in WeightedGraph::path(next, w[0], w[1]).into_iter().skip(1) {
            let p = aux.points[i].clone();
            if stops.last() != Some(&p) {
                stops.push(p);
            }
        }
    }
    if stops.len() == 1 {
        return Tour::single(stops.pop().unwrap());
    }
    Tour::new(g, stops).expect("auxiliary edges lie on graph edges")
}

pub fn approx_mid_delta(g: &Graph, delta: &Rational) -> Result<Tour, RegimeError> {
    let aux = build_aux_tsp(g, delta)?;
    let (dist, next) = aux.graph.closure();
    let w: Vec<Vec<Rational>> = dist.into_iter().map(|r| r.into_iter().map(|x| x.unwrap()).collect()).collect();
    let order = christofides(&w).expect("metric closure");
    Ok(aux_walk(g, &aux, &order, &next))
}

/// TSP lower bound for the auxiliary instance: exact when small, else a spanning tree.
fn aux_lower_bound(aux: &AuxTsp) -> (String, Rational) {
    let w = aux.graph.metric_closure();
    if w.len() <= HELD_KARP_BOUND_LIMIT {
        ("aux_tsp_exact".into(), held_karp(&w).expect("within limit").1)
    } else {
        ("aux_tsp_mst".into(), mst(&w).1)
    }
}

fn inner_vertices(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let leaves = g.leaves();
    let inner = (0..g.n()).filter(|&v| g.degree(v) >= 2).collect();
    (inner, leaves)
}

pub fn approx_half(g: &Graph) -> Result<Tour, RegimeError> {
    if g.n() < 3 {
        return Err(RegimeError::TooSmall);
    }
    let (inner, leaves) = inner_vertices(g);
    let mut walk: Vec<Point> = if inner.len() == 1 {
        vec![Point::Vertex(inner[0])]
    } else {
        let w: Vec<Vec<Rational>> =
            inner.iter().map(|&a| inner.iter().map(|&b| int(g.hops(a, b) as i64)).collect()).collect();
        let order = christofides(&w).expect("metric closure");
        let mut out = vec![Point::Vertex(inner[order[0]])];
        for s in order.windows(2) {
            for x in g.shortest_path(inner[s[0]], inner[s[1]]).into_iter().skip(1) {
                out.push(Point::Vertex(x));
            }
        }
        out
    };
    for v in leaves {
        let x = g.neighbors(v)[0];
        let b = Point::Vertex(x);
        let i = walk.iter().position(|p| *p == b).expect("walk visits every inner vertex");
        walk.splice(i + 1..i + 1, [Point::on_edge(x, v, half()), b]);
    }
    Ok(if walk.len() == 1 { Tour::single(walk.pop().unwrap()) } else { Tour::new(g, walk).expect("half tour") })
}

fn half_lower_bound(g: &Graph) -> (String, Rational) {
    let (inner, leaves) = inner_vertices(g);
    let k = inner.len();
    let leaves = int(leaves.len() as i64);
    if k <= 1 {
        return ("inner_tsp+leaves".into(), leaves);
    }
    if k <= HELD_KARP_BOUND_LIMIT {
        let w: Vec<Vec<Rational>> = inner.iter().map(|&a| inner.iter().map(|&b| int(g.hops(a, b) as i64)).collect()).collect();
        ("inner_tsp+leaves".into(), held_karp(&w).expect("within limit").1 + leaves)
    } else {
        ("inner_count+leaves".into(), int(k as i64) + leaves)
    }
}

/// A 1/2-tour is a δ-tour for every δ > 1/2; only the ratio bookkeeping changes.
pub fn lift_half_to_delta(g: &Graph, t_half: &Tour, delta: &Rational) -> Result<Tour, RegimeError> {
    if *delta <= half() || *delta >= rat(33, 40) {
        return Err(RegimeError::OutOfRange(delta.clone()));
    }
    if !is_delta_tour(g, t_half, &half()) {
        return Err(RegimeError::OutOfRange(half()));
    }
    Ok(t_half.clone())
}

/// Normalized vertex cover tour; a 1-tour.
pub fn one_tour(g: &Graph) -> Tour {
    make_nice(g, &vertex_cover_tour(g))
}

/// Adds a U-turn toward every vertex the tour does not stop at.
pub fn augment_below_one(g: &Graph, t_one: &Tour, delta: &Rational) -> Result<Tour, RegimeError> {
    if *delta < rat(33, 40) || *delta >= one() {
        return Err(RegimeError::OutOfRange(delta.clone()));
    }
    let stopped: Vec<bool> = (0..g.n()).map(|v| t_one.stops_at(&Point::Vertex(v))).collect();
    let mut walk: Vec<Point> = t_one.stops().to_vec();
    for v in 0..g.n() {
        if stopped[v] {
            continue;
        }
        let w = *g.neighbors(v).iter().find(|&&w| stopped[w]).ok_or(RegimeError::NotACover(v))?;
        let lam = if g.degree(v) == 1 { one() - delta } else { int(2) * (one() - delta) };
        let b = Point::Vertex(w);
        let i = walk.iter().position(|p| *p == b).unwrap();
        walk.splice(i + 1..i + 1, [Point::on_edge(w, v, lam), b]);
    }
    Ok(if walk.len() == 1 { Tour::single(walk.pop().unwrap()) } else { Tour::new(g, walk).expect("augmented tour") })
}

/// Length every δ-tour with at least three stops must have, for δ ∈ [33/40,1).
///
/// A tour that stops at two or more vertices pays `2(1−δ)` per leaf and `4(1−δ)`
/// per other vertex. A tour that stops at a single vertex `r` has only U-turns
/// out of `r`, so `r` is adjacent to everything and each other vertex costs `2(1−δ)`.
pub fn three_stop_lower_bound(g: &Graph, delta: &Rational) -> Rational {
    let v1 = int(g.leaves().len() as i64);
    let rest = int(g.n() as i64) - &v1;
    let spread = int(2) * (one() - delta) * v1 + int(4) * (one() - delta) * rest;
    if (0..g.n()).any(|v| g.degree(v) + 1 == g.n()) {
        spread.min(int(2) * (one() - delta) * int(g.n() as i64 - 1))
    } else {
        spread
    }
}

/// Maps U-turn depths `3/2−δ ↦ 1/2` and `3−2δ, 2−δ ↦ 1` (full traversal).
pub fn downshift_to_one_tour(g: &Graph, t_delta: &Tour, delta: &Rational) -> Result<Tour, RegimeError> {
    if *delta <= one() || *delta >= rat(3, 2) {
        return Err(RegimeError::OutOfRange(delta.clone()));
    }
    if t_delta.alpha() < 3 || !t_delta.is_nice(g).unwrap_or(false) {
        return Err(RegimeError::NotNice);
    }
    let a = rat(3, 2) - delta;
    let b = int(3) - int(2) * delta;
    let c = int(2) - delta;
    let stops = t_delta.stops();
    let mut out = Vec::with_capacity(stops.len());
    for (i, p) in stops.iter().enumerate() {
        if let Point::Interior { u, v, .. } = p {
            // nice: an interior stop sits between two copies of its base
            let base = stops[i - 1].as_vertex().ok_or(RegimeError::NotNice)?;
            let other = if base == *u { *v } else { *u };
            let lam = p.position_from(base, other);
            if lam == a {
                out.push(Point::on_edge(base, other, half()));
            } else if lam == b || lam == c {
                out.push(Point::Vertex(other));
            } else {
                return Err(RegimeError::UnexpectedPosition(p.clone()));
            }
        } else {
            out.push(p.clone());
        }
    }
    Ok(Tour::new(g, out).expect("rewritten nice tour"))
}

/// Any δ-tour passes within δ of two points at distance `D`, so it has length at least `2(D−2δ)`.
pub fn diameter_lower_bound(g: &Graph, delta: &Rational) -> Rational {
    let mut pts: Vec<Point> = (0..g.n()).map(Point::Vertex).collect();
    for &(u, v) in g.edges() {
        pts.push(Point::on_edge(u, v, half()));
    }
    let mut dmax = zero();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = g.distance(&pts[i], &pts[j]);
            if d > dmax {
                dmax = d;
            }
        }
    }
    let lb = int(2) * (dmax - int(2) * delta);
    if lb.is_positive() {
        lb
    } else {
        zero()
    }
}

/// Tiny instances without the exact search, so the search can use this as a seed.
fn tiny_tour(g: &Graph, delta: &Rational) -> Tour {
    if g.n() == 1 {
        return Tour::single(Point::Vertex(0));
    }
    best_two_stop_tour(g, delta).unwrap_or_else(|| chinese_postman_tour(g))
}

fn pick_shorter(g: &Graph, a: Tour, b: Option<Tour>) -> Tour {
    match b {
        Some(b) if b.length(g) < a.length(g) => b,
        _ => a,
    }
}

/// A δ-tour from the regime's algorithm, without lower bounds.
pub fn approximate_tour(g: &Graph, delta: &Rational) -> Tour {
    approximate_tour_with(g, delta, LargeMode::Fixed)
}

pub fn approximate_tour_with(g: &Graph, delta: &Rational, mode: LargeMode) -> Tour {
    assert!(!delta.is_negative(), "delta must be nonnegative");
    if g.n() <= 2 {
        return tiny_tour(g, delta);
    }
    match Regime::of(delta) {
        Regime::Zero | Regime::Small => chinese_postman_tour(g),
        Regime::Mid => approx_mid_delta(g, delta).unwrap(),
        Regime::Half | Regime::Lifted => approx_half(g).unwrap(),
        Regime::BelowOne => {
            let t = make_nice(g, &augment_below_one(g, &vertex_cover_tour(g), delta).unwrap());
            pick_shorter(g, t, best_two_stop_tour(g, delta))
        }
        Regime::OneToThreeHalves => pick_shorter(g, one_tour(g), best_two_stop_tour(g, delta)),
        Regime::Large => {
            let t = match mode {
                LargeMode::Fixed => fixed_delta_tour(g, delta).unwrap().tour,
                LargeMode::InputDelta => input_delta_tour(g, delta).unwrap().tour,
            };
            pick_shorter(g, t, best_two_stop_tour(g, delta))
        }
        Regime::Tiny => unreachable!(),
    }
}

pub fn solve(g: &Graph, delta: &Rational) -> Result<SolveReport, SolveError> {
    solve_with(g, delta, &SolveOptions::default())
}

pub fn solve_with(g: &Graph, delta: &Rational, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    if delta.is_negative() {
        return Err(SolveError::NegativeDelta);
    }
    let s_delta = candidate_points(g, delta)?.min_gap;
    let mut lbs: Vec<(String, Rational)> = Vec::new();
    let mut opt_lp = None;
    let mut constraints_generated = None;
    let (mut gamma_vertices, mut domset_size, mut tree_weight) = (None, None, None);
    let regime = if g.n() <= 2 { Regime::Tiny } else { Regime::of(delta) };
    let two_stop = |lbs: &mut Vec<(String, Rational)>| -> Option<Tour> {
        let t = best_two_stop_tour(g, delta);
        if t.is_none() {
            lbs.push(("no_two_stop_tour".into(), zero()));
        }
        t
    };
    let tour = match regime {
        Regime::Tiny => {
            let r = exact_shortest_tour(g, delta, None)?;
            if !r.cap_binding {
                lbs.push(("exact".into(), r.length.clone()));
            }
            r.tour
        }
        Regime::Zero => {
            let t = chinese_postman_tour(g);
            lbs.push(("postman".into(), t.length(g)));
            t
        }
        Regime::Small => {
            let t = approx_small_delta(g, delta).unwrap();
            lbs.push(("(1-2delta)*postman".into(), (one() - int(2) * delta) * t.length(g)));
            t
        }
        Regime::Mid => {
            let aux = build_aux_tsp(g, delta).unwrap();
            lbs.push(aux_lower_bound(&aux));
            approx_mid_delta(g, delta).unwrap()
        }
        Regime::Half => {
            lbs.push(half_lower_bound(g));
            approx_half(g).unwrap()
        }
        Regime::Lifted => {
            let (src, v) = half_lower_bound(g);
            lbs.push((format!("(2-2delta)*{src}"), (int(2) - int(2) * delta) * v));
            lift_half_to_delta(g, &approx_half(g).unwrap(), delta).unwrap()
        }
        Regime::BelowOne => {
            let lp = solve_tour_lp(g);
            lbs.push(("opt_lp".into(), lp.value.clone()));
            opt_lp = Some(lp.value.clone());
            constraints_generated = Some(lp.cuts.len());
            let t = make_nice(g, &augment_below_one(g, &vertex_cover_tour(g), delta).unwrap());
            let two = two_stop(&mut lbs);
            let dv = three_stop_lower_bound(g, delta);
            let lb = match &two {
                Some(t2) => dv.min(t2.length(g)),
                None => dv,
            };
            lbs.push(("min(two_stop,three_stop_bound)".into(), lb));
            pick_shorter(g, t, two)
        }
        Regime::OneToThreeHalves => {
            let lp = solve_tour_lp(g);
            opt_lp = Some(lp.value.clone());
            constraints_generated = Some(lp.cuts.len());
            let scaled = (int(3) - int(2) * delta) * &lp.value;
            let two = two_stop(&mut lbs);
            let lb = match &two {
                Some(t2) => scaled.min(t2.length(g)),
                None => scaled,
            };
            lbs.push(("min(two_stop,(3-2delta)*opt_lp)".into(), lb));
            pick_shorter(g, one_tour(g), two)
        }
        Regime::Large => {
            let r = match opts.mode {
                LargeMode::Fixed => fixed_delta_tour(g, delta)?,
                LargeMode::InputDelta => input_delta_tour(g, delta)?,
            };
            gamma_vertices = Some(r.gamma_vertices);
            domset_size = Some(r.domset.len());
            tree_weight = Some(r.tree_weight.clone());
            let two = best_two_stop_tour(g, delta);
            pick_shorter(g, r.tour, two)
        }
    };
    lbs.push(("diameter".into(), diameter_lower_bound(g, delta)));
    lbs.retain(|(name, _)| name != "no_two_stop_tour");
    let length = tour.length(g);
    if !is_delta_tour(g, &tour, delta) {
        return Err(SolveError::Invalid(regime.label(), delta.clone()));
    }
    for (name, v) in &lbs {
        assert!(*v <= length, "lower bound {name} = {v} exceeds tour length {length}");
    }
    let best = lbs.iter().map(|(_, v)| v.clone()).max().unwrap_or_else(zero);
    let certified_ratio = if length.is_zero() {
        Some(one())
    } else if best.is_positive() {
        Some(&length / &best)
    } else {
        None
    };
    Ok(SolveReport {
        delta: delta.clone(),
        regime,
        tour,
        length,
        lower_bounds: lbs,
        theoretical_ratio: regime.shipped_ratio(delta),
        certified_ratio,
        s_delta,
        opt_lp,
        constraints_generated,
        gamma_vertices,
        domset_size,
        tree_weight,
    })
}

/// Every δ ≥ 1/2 admits a tour of length at most `2n−2`.
pub fn spanning_bound_tour(g: &Graph) -> Tour {
    spanning_double_tour(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::new(n, &e).unwrap()
    }

    fn star(k: usize) -> Graph {
        let e: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::new(k + 1, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn boundaries() {
        assert_eq!(Regime::of(&zero()), Regime::Zero);
        assert_eq!(Regime::of(&rat(1, 6)), Regime::Small);
        assert_eq!(Regime::of(&half()), Regime::Half);
        assert_eq!(Regime::of(&rat(33, 40)), Regime::BelowOne);
        assert_eq!(Regime::of(&one()), Regime::OneToThreeHalves);
        assert_eq!(Regime::of(&rat(3, 2)), Regime::Large);
        assert_eq!(Regime::Lifted.shipped_ratio(&rat(3, 5)), Some(rat(15, 8)));
    }

    #[test]
    fn dispatcher_examples() {
        let k3 = cycle(3);
        let r = solve(&k3, &zero()).unwrap();
        assert_eq!((r.length.clone(), r.regime.label()), (int(3), "zero"));
        let e = path(2);
        let r = solve(&e, &half()).unwrap();
        assert_eq!(r.length, zero());
        assert_eq!(r.tour.stops(), &[Point::on_edge(0, 1, half())]);
    }

    #[test]
    fn small_and_mid() {
        let p3 = path(3);
        assert_eq!(approx_small_delta(&p3, &rat(1, 10)).unwrap().length(&p3), int(4));
        let s = star(3);
        let aux = build_aux_tsp(&s, &rat(1, 4)).unwrap();
        assert_eq!(aux.points.len(), 4);
        assert_eq!(aux.graph.edges.len(), 3);
        assert!(aux.graph.edges.iter().all(|(_, _, w)| *w == rat(3, 4)));
        let t = approx_mid_delta(&s, &rat(1, 4)).unwrap();
        assert_eq!(t.length(&s), rat(9, 2));
        let aux = build_aux_tsp(&p3, &rat(1, 5)).unwrap();
        assert_eq!(aux.points.len(), 3);
        let tri = cycle(3);
        let aux = build_aux_tsp(&tri, &rat(1, 3)).unwrap();
        assert_eq!(aux.points.len(), 6);
        assert!(aux.points.contains(&Point::on_edge(0, 1, rat(2, 3))));
        let p4 = path(4);
        let aux = build_aux_tsp(&p4, &rat(1, 5)).unwrap();
        // the middle edge carries two points
        assert_eq!(aux.points.len(), 2 + 2 + 2);
    }

    #[test]
    fn half_tours() {
        assert_eq!(approx_half(&star(3)).unwrap().length(&star(3)), int(3));
        assert_eq!(approx_half(&path(3)).unwrap().length(&path(3)), int(2));
        assert_eq!(approx_half(&cycle(4)).unwrap().length(&cycle(4)), int(4));
    }

    #[test]
    fn augment_examples() {
        let p3 = path(3);
        let t = Tour::single(Point::Vertex(1));
        let a = augment_below_one(&p3, &t, &rat(9, 10)).unwrap();
        assert_eq!(a.length(&p3), rat(2, 5));
        assert!(is_delta_tour(&p3, &a, &rat(9, 10)));
        let s = star(3);
        let a = augment_below_one(&s, &Tour::single(Point::Vertex(0)), &rat(33, 40)).unwrap();
        assert_eq!(a.length(&s), rat(21, 20));
        assert!(is_delta_tour(&s, &a, &rat(33, 40)));
        let k3 = cycle(3);
        let full = Tour::from_cycle(&k3, (0..3).map(Point::Vertex).collect()).unwrap();
        assert_eq!(augment_below_one(&k3, &full, &rat(9, 10)).unwrap(), full);
    }

    #[test]
    fn downshift_examples() {
        let p3 = path(3);
        let d = rat(5, 4);
        let t = Tour::new(
            &p3,
            vec![
                Point::Vertex(0),
                Point::Vertex(1),
                Point::on_edge(1, 2, rat(1, 4)),
                Point::Vertex(1),
                Point::Vertex(0),
            ],
        )
        .unwrap();
        let o = downshift_to_one_tour(&p3, &t, &d).unwrap();
        assert_eq!(o.stops()[2], Point::on_edge(1, 2, half()));
        let t = Tour::new(
            &p3,
            vec![
                Point::Vertex(0),
                Point::Vertex(1),
                Point::on_edge(1, 2, rat(3, 4)),
                Point::Vertex(1),
                Point::Vertex(0),
            ],
        )
        .unwrap();
        let o = downshift_to_one_tour(&p3, &t, &d).unwrap();
        assert_eq!(o.stops()[2], Point::Vertex(2));
        assert!(is_delta_tour(&p3, &o, &one()));
    }

    #[test]
    fn one_tours() {
        let s = star(3);
        assert_eq!(one_tour(&s).length(&s), zero());
        let p4 = path(4);
        assert_eq!(one_tour(&p4).length(&p4), int(2));
        let c5 = cycle(5);
        let r = solve(&c5, &one()).unwrap();
        assert!(r.opt_lp.unwrap() <= r.length);
    }
}
