//! Candidate stop positions and an exhaustive search for shortest δ-tours.
//!
//! Some shortest δ-tour is either nice or has at most two stops, and all of
//! its stops sit at candidate positions. A nice tour is a closed walk on
//! vertices that uses each edge at most twice, plus U-turns `⟨u, p, u⟩` into
//! edges the walk never traverses. The search enumerates exactly that space.

use crate::graph::{Graph, Point};
use crate::kernels::cpp::chinese_postman_tour;
use crate::kernels::euler::Multigraph;
use crate::rational::{ceil_to_usize, common_denominator, frac, from_units, half, int, one, to_units, zero, Rational};
use crate::tour::Tour;
use num_traits::Signed;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("delta must be nonnegative")]
    NegativeDelta,
    #[error("max_stops must be at least 1")]
    ZeroCap,
    #[error("no delta-tour with at most {cap} stops and length within the search bound")]
    CapExhausted { cap: usize },
    #[error("denominators too large for the integer search")]
    Overflow,
}

/// The four base positions valid for every δ.
pub fn base_positions(delta: &Rational) -> Vec<Rational> {
    vec![zero(), frac(delta), frac(&(half() + delta)), frac(&(int(2) * delta))]
}

/// Extra positions available once δ ≥ 1/2.
pub fn wide_positions(delta: &Rational) -> Vec<Rational> {
    let f = (int(2) * delta).floor();
    let a = &f + one() - int(2) * delta;
    vec![zero(), &a * half(), a.clone(), (&f + int(2) - int(2) * delta) * half()]
}

/// Sorted, deduplicated candidate positions in `[0,1]`, closed under `λ ↦ 1−λ`.
pub fn stop_position_set(delta: &Rational) -> Result<Vec<Rational>, ExactError> {
    if delta.is_negative() {
        return Err(ExactError::NegativeDelta);
    }
    let mut raw = base_positions(delta);
    if *delta >= half() {
        raw.extend(wide_positions(delta));
    }
    let mut out: Vec<Rational> = Vec::new();
    for x in raw {
        for y in [one() - &x, x] {
            if y >= zero() && y <= one() && !out.contains(&y) {
                out.push(y);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Smallest positive gap between consecutive positions (1 if there is none).
pub fn min_gap(positions: &[Rational]) -> Rational {
    positions.windows(2).map(|w| &w[1] - &w[0]).filter(|d| d.is_positive()).min().unwrap_or_else(one)
}

#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub positions: Vec<Rational>,
    pub points: Vec<Point>,
    pub min_gap: Rational,
}

/// Vertices first, then each edge's interior candidates in increasing position.
pub fn candidate_points(g: &Graph, delta: &Rational) -> Result<CandidateSet, ExactError> {
    let positions = stop_position_set(delta)?;
    let mut points: Vec<Point> = (0..g.n()).map(Point::Vertex).collect();
    for &(u, v) in g.edges() {
        for l in &positions {
            if l.is_positive() && *l < one() {
                points.push(Point::on_edge(u, v, l.clone()));
            }
        }
    }
    let gap = min_gap(&positions);
    Ok(CandidateSet { positions, points, min_gap: gap })
}

/// `min(12, ⌈2n/s_δ⌉)`.
pub fn default_max_stops(n: usize, s_delta: &Rational) -> usize {
    ceil_to_usize(&(int(2 * n as i64) / s_delta)).min(12)
}

/// A cap that cannot cut off any tour of length at most `len`.
pub fn complete_max_stops(len: &Rational, s_delta: &Rational) -> usize {
    ceil_to_usize(&(len / s_delta)).max(2)
}

#[derive(Clone, Debug)]
pub struct ExactOutcome {
    pub tour: Tour,
    pub length: Rational,
    pub max_stops: usize,
    pub s_delta: Rational,
    /// Some branch was cut by the stop cap while still cheaper than the result.
    pub cap_binding: bool,
    /// Multigraph configurations examined.
    pub configs: usize,
}

/// Shortest δ-tour with at most `max_stops` stops (default cap when `None`).
pub fn exact_shortest_tour(g: &Graph, delta: &Rational, max_stops: Option<usize>) -> Result<ExactOutcome, ExactError> {
    let upper = initial_upper_bound(g, delta);
    exact_with_upper_bound(g, delta, max_stops, &upper)
}

/// Length of some δ-tour, used to seed the search.
pub fn initial_upper_bound(g: &Graph, delta: &Rational) -> Rational {
    let mut ub = chinese_postman_tour(g).length(g);
    if *delta >= half() {
        ub = ub.min(int(2 * g.n() as i64 - 2));
    }
    if g.n() >= 3 && !delta.is_negative() {
        ub = ub.min(crate::regimes::approximate_tour(g, delta).length(g));
    }
    ub
}

/// Same search with an explicit upper bound; only tours no longer than `upper` are found.
pub fn exact_with_upper_bound(
    g: &Graph,
    delta: &Rational,
    max_stops: Option<usize>,
    upper: &Rational,
) -> Result<ExactOutcome, ExactError> {
    let cs = candidate_points(g, delta)?;
    let cap = max_stops.unwrap_or_else(|| default_max_stops(g.n(), &cs.min_gap));
    if cap == 0 {
        return Err(ExactError::ZeroCap);
    }
    let mut s = Search::new(g, delta, &cs, cap, upper)?;
    s.two_stop_tours();
    if !(s.found && s.best == 0) {
        s.nice_tours();
    }
    let tour = s.rebuild().ok_or(ExactError::CapExhausted { cap })?;
    let length = tour.length(g);
    debug_assert_eq!(to_units(&length, s.d), Some(s.best));
    assert!(crate::coverage::is_delta_tour(g, &tour, delta), "exact search produced an invalid tour");
    Ok(ExactOutcome {
        tour,
        length,
        max_stops: cap,
        s_delta: cs.min_gap,
        cap_binding: s.cap_skipped_min.is_some_and(|c| c < s.best),
        configs: s.configs,
    })
}

/// Shortest δ-tour with at most two stops, if one exists.
pub fn best_two_stop_tour(g: &Graph, delta: &Rational) -> Option<Tour> {
    if delta.is_negative() {
        return None;
    }
    let cs = candidate_points(g, delta).ok()?;
    let mut s = Search::new(g, delta, &cs, 2, &int(2)).ok()?;
    s.two_stop_tours();
    s.rebuild()
}

#[derive(Clone, Debug)]
enum Found {
    /// Passed segment `[a,b]` on edge `k`, positions from the lower endpoint.
    Segment { k: usize, a: i64, b: i64 },
    Nice { mult: Vec<u8>, root: usize, peeks: Vec<(usize, usize, i64)> },
}

struct Search<'a> {
    g: &'a Graph,
    d: i64,
    two_delta: i64,
    hops: Vec<Vec<i64>>,
    /// interior positions in units, ascending
    interior: Vec<i64>,
    /// all positions in units, ascending
    all: Vec<i64>,
    cap: usize,
    upper: i64,
    found: bool,
    best: i64,
    result: Option<Found>,
    cap_skipped_min: Option<i64>,
    configs: usize,
}

const INF: i64 = i64::MAX / 8;

impl<'a> Search<'a> {
    fn new(g: &'a Graph, delta: &Rational, cs: &CandidateSet, cap: usize, upper: &Rational) -> Result<Search<'a>, ExactError> {
        let mut vals: Vec<&Rational> = cs.positions.iter().collect();
        vals.push(delta);
        vals.push(upper);
        let d = common_denominator(vals.iter().copied()).ok_or(ExactError::Overflow)?;
        // distances, doubled radii and sums of a few of them must stay far from overflow
        let lim = i64::MAX / (64 * (g.n() as i64 + g.m() as i64 + 4));
        let two_delta = to_units(&(int(2) * delta), d).ok_or(ExactError::Overflow)?;
        let upper_u = to_units(upper, d).ok_or(ExactError::Overflow)?;
        if d > lim / (g.n() as i64 + 2) || two_delta > lim || upper_u > lim {
            return Err(ExactError::Overflow);
        }
        let hops = (0..g.n()).map(|a| (0..g.n()).map(|b| g.hops(a, b) as i64).collect()).collect();
        let all: Vec<i64> = cs.positions.iter().map(|x| to_units(x, d).unwrap()).collect();
        let interior = all.iter().copied().filter(|&x| x > 0 && x < d).collect();
        Ok(Search {
            g,
            d,
            two_delta,
            hops,
            interior,
            all,
            cap,
            upper: upper_u,
            found: false,
            best: INF,
            result: None,
            cap_skipped_min: None,
            configs: 0,
        })
    }

    fn admissible(&self, cost: i64) -> bool {
        if self.found {
            cost < self.best
        } else {
            cost <= self.upper
        }
    }

    fn accept(&mut self, cost: i64, f: Found) {
        self.found = true;
        self.best = cost;
        self.result = Some(f);
    }

    fn skipped_by_cap(&mut self, cost: i64) {
        if self.cap_skipped_min.is_none_or(|c| cost < c) {
            self.cap_skipped_min = Some(cost);
        }
    }

    /// Single points and `⟨a, b, a⟩` on one edge.
    fn two_stop_tours(&mut self) {
        let g = self.g;
        let d = self.d;
        if g.m() == 0 {
            self.accept(0, Found::Nice { mult: Vec::new(), root: 0, peeks: Vec::new() });
            return;
        }
        let all = self.all.clone();
        for (k, &(x, y)) in g.edges().iter().enumerate() {
            for (i, &a) in all.iter().enumerate() {
                for &b in &all[i..] {
                    let cost = 2 * (b - a);
                    if cost > 0 && self.cap < 2 {
                        self.skipped_by_cap(cost);
                        continue;
                    }
                    if !self.admissible(cost) {
                        continue;
                    }
                    // a single vertex is reported once, from its first edge
                    if a == b && (a == 0 || a == d) {
                        let v = if a == 0 { x } else { y };
                        if g.edges().iter().position(|&(p, q)| p == v || q == v) != Some(k) {
                            continue;
                        }
                    }
                    if self.segment_covers(k, a, b) {
                        self.accept(cost, Found::Segment { k, a, b });
                        if cost == 0 {
                            return;
                        }
                    }
                }
            }
        }
    }

    fn segment_covers(&self, k: usize, a: i64, b: i64) -> bool {
        let g = self.g;
        let (x, y) = g.edges()[k];
        let d = self.d;
        let dist: Vec<i64> = (0..g.n()).map(|w| (self.hops[w][x] * d + a).min(self.hops[w][y] * d + d - b)).collect();
        for (j, &(p, q)) in g.edges().iter().enumerate() {
            let ok = if j == k {
                (a == 0 || dist[x] + a <= self.two_delta) && (b == d || dist[y] + d - b <= self.two_delta)
            } else {
                d + dist[p] + dist[q] <= self.two_delta
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Nice tours: Eulerian edge multiplicities in {0,1,2} plus U-turn peeks.
    fn nice_tours(&mut self) {
        let g = self.g;
        let m = g.m();
        let mut configs: Vec<(i64, Vec<u8>, usize)> = Vec::new();
        // a lone stopped vertex with peeks around it
        for r in 0..g.n() {
            configs.push((0, vec![0; m], r));
        }
        let max_edges = if self.found { self.best / self.d } else { self.upper / self.d }.min(self.cap as i64);
        let mut last = vec![usize::MAX; g.n()];
        for (k, &(u, v)) in g.edges().iter().enumerate() {
            last[u] = k;
            last[v] = k;
        }
        let mut mult = vec![0u8; m];
        let mut parity = vec![0u8; g.n()];
        enumerate_multiplicities(g, 0, &last, max_edges, 0, &mut mult, &mut parity, &mut configs);
        configs.sort();
        for (edges_used, mult, root) in configs {
            let cost = edges_used * self.d;
            if !self.admissible(cost) {
                if self.found {
                    break;
                }
                continue;
            }
            self.configs += 1;
            self.peek_search(&mult, root, cost);
        }
    }

    fn peek_search(&mut self, mult: &[u8], root: usize, base_cost: i64) {
        let g = self.g;
        let mut stopped = vec![false; g.n()];
        if mult.iter().all(|&x| x == 0) {
            stopped[root] = true;
        } else {
            for (k, &(u, v)) in g.edges().iter().enumerate() {
                if mult[k] > 0 {
                    stopped[u] = true;
                    stopped[v] = true;
                }
            }
        }
        let peekable: Vec<usize> = (0..g.m())
            .filter(|&k| {
                let (u, v) = g.edges()[k];
                mult[k] == 0 && (stopped[u] || stopped[v])
            })
            .collect();
        let alpha0: usize = mult.iter().map(|&x| x as usize).sum();
        let mut st = PeekState { mult, stopped, peekable, choice: Vec::new() };
        if !self.feasible(&st, true) {
            return;
        }
        self.peek_dfs(&mut st, base_cost, alpha0, root);
    }

    fn peek_dfs(&mut self, st: &mut PeekState, cost: i64, alpha: usize, root: usize) {
        if st.choice.len() == st.peekable.len() {
            if self.feasible(st, false) && self.admissible(cost) {
                let peeks = st.choice.iter().flatten().copied().collect();
                self.accept(cost, Found::Nice { mult: st.mult.to_vec(), root, peeks });
            }
            return;
        }
        let k = st.peekable[st.choice.len()];
        let (u, v) = self.g.edges()[k];
        st.choice.push(None);
        if self.feasible(st, true) {
            self.peek_dfs(st, cost, alpha, root);
        }
        st.choice.pop();
        let interior = self.interior.clone();
        for (base, other) in [(u, v), (v, u)] {
            if !st.stopped[base] {
                continue;
            }
            for &l in &interior {
                let c = cost + 2 * l;
                if !self.admissible(c) {
                    break;
                }
                if alpha + 2 > self.cap {
                    self.skipped_by_cap(c);
                    break;
                }
                st.choice.push(Some((base, other, l)));
                if self.feasible(st, true) {
                    self.peek_dfs(st, c, alpha + 2, root);
                }
                st.choice.pop();
            }
        }
    }

    /// Coverage test; with `optimistic`, undecided peekable edges count as covered
    /// and their endpoints as passed.
    fn feasible(&self, st: &PeekState, optimistic: bool) -> bool {
        let g = self.g;
        let d = self.d;
        let n = g.n();
        let mut src: Vec<(usize, i64)> = (0..n).filter(|&w| st.stopped[w]).map(|w| (w, 0)).collect();
        for &(_, other, l) in st.choice.iter().flatten() {
            src.push((other, d - l));
        }
        if optimistic {
            for &k in &st.peekable[st.choice.len()..] {
                let (u, v) = g.edges()[k];
                src.push((u, 0));
                src.push((v, 0));
            }
        }
        let dist: Vec<i64> =
            (0..n).map(|w| src.iter().map(|&(s, off)| self.hops[w][s] * d + off).min().unwrap_or(INF)).collect();
        let mut state = vec![0u8; g.m()]; // 0 plain, 1 traversed, 2 undecided
        let mut peek_at: Vec<Option<(usize, i64)>> = vec![None; g.m()];
        for (k, s) in state.iter_mut().enumerate() {
            if st.mult[k] > 0 {
                *s = 1;
            }
        }
        for (i, &k) in st.peekable.iter().enumerate() {
            if i >= st.choice.len() {
                state[k] = 2;
            } else if let Some((_, other, l)) = st.choice[i] {
                peek_at[k] = Some((other, l));
            }
        }
        for (k, &(x, y)) in g.edges().iter().enumerate() {
            let ok = match (state[k], &peek_at[k]) {
                (1, _) | (2, _) => true,
                (_, Some((other, l))) => d - l + dist[*other] <= self.two_delta,
                _ => d + dist[x] + dist[y] <= self.two_delta,
            };
            if !ok {
                return false;
            }
        }
        true
    }

    fn rebuild(&self) -> Option<Tour> {
        let g = self.g;
        let d = self.d;
        let pos = |l: i64| from_units(l, d);
        match self.result.as_ref()? {
            Found::Segment { k, a, b } => {
                let (x, y) = g.edges()[*k];
                let p = Point::on_edge(x, y, pos(*a));
                if a == b {
                    Some(Tour::single(p))
                } else {
                    let q = Point::on_edge(x, y, pos(*b));
                    Some(Tour::new(g, vec![p.clone(), q, p]).expect("two-stop tour"))
                }
            }
            Found::Nice { mult, root, peeks } => {
                let mut walk: Vec<Point> = if mult.iter().all(|&x| x == 0) {
                    vec![Point::Vertex(*root)]
                } else {
                    let mut mg = Multigraph::new(g.n());
                    for (k, &(u, v)) in g.edges().iter().enumerate() {
                        for _ in 0..mult[k] {
                            mg.add_edge(u, v);
                        }
                    }
                    let start = mg.edges()[0].0;
                    mg.euler_tour(start).expect("connected Eulerian configuration").into_iter().map(Point::Vertex).collect()
                };
                for &(base, other, l) in peeks {
                    let b = Point::Vertex(base);
                    let i = walk.iter().position(|p| *p == b).expect("peek base is stopped");
                    walk.splice(i + 1..i + 1, [Point::on_edge(base, other, pos(l)), b]);
                }
                Some(if walk.len() == 1 { Tour::single(walk.pop().unwrap()) } else { Tour::new(g, walk).expect("nice tour") })
            }
        }
    }
}

struct PeekState<'m> {
    mult: &'m [u8],
    stopped: Vec<bool>,
    peekable: Vec<usize>,
    choice: Vec<Option<(usize, usize, i64)>>,
}

#[allow(clippy::too_many_arguments)]
fn enumerate_multiplicities(
    g: &Graph,
    k: usize,
    last: &[usize],
    max_edges: i64,
    used: i64,
    mult: &mut Vec<u8>,
    parity: &mut Vec<u8>,
    out: &mut Vec<(i64, Vec<u8>, usize)>,
) {
    if k == g.m() {
        if used > 0 && connected_support(g, mult) {
            let root = g.edges()[mult.iter().position(|&x| x > 0).unwrap()].0;
            out.push((used, mult.clone(), root));
        }
        return;
    }
    let (u, v) = g.edges()[k];
    for x in 0..=2u8 {
        if used + x as i64 > max_edges {
            break;
        }
        mult[k] = x;
        parity[u] ^= x & 1;
        parity[v] ^= x & 1;
        let closed_ok = (last[u] != k || parity[u] == 0) && (last[v] != k || parity[v] == 0);
        if closed_ok {
            enumerate_multiplicities(g, k + 1, last, max_edges, used + x as i64, mult, parity, out);
        }
        parity[u] ^= x & 1;
        parity[v] ^= x & 1;
    }
    mult[k] = 0;
}

fn connected_support(g: &Graph, mult: &[u8]) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut touched = vec![false; g.n()];
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        if mult[k] > 0 {
            touched[u] = true;
            touched[v] = true;
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
    }
    let mut roots = (0..g.n()).filter(|&w| touched[w]).map(|w| find(&mut parent, w)).collect::<Vec<_>>();
    roots.dedup();
    roots.sort();
    roots.dedup();
    roots.len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn position_sets() {
        assert_eq!(base_positions(&rat(1, 3)), vec![zero(), rat(1, 3), rat(5, 6), rat(2, 3)]);
        let mut s1 = base_positions(&int(1));
        s1.sort();
        s1.dedup();
        assert_eq!(s1, vec![zero(), half()]);
        assert_eq!(base_positions(&rat(5, 3)), vec![zero(), rat(2, 3), rat(1, 6), rat(1, 3)]);
        assert_eq!(
            stop_position_set(&rat(5, 3)).unwrap(),
            vec![zero(), rat(1, 6), rat(1, 3), rat(2, 3), rat(5, 6), one()]
        );
        assert_eq!(stop_position_set(&rat(-1, 2)), Err(ExactError::NegativeDelta));
    }

    #[test]
    fn candidate_counts() {
        let e = Graph::new(2, &[(0, 1)]).unwrap();
        let c = candidate_points(&e, &int(1)).unwrap();
        assert_eq!(c.points, vec![Point::Vertex(0), Point::Vertex(1), Point::on_edge(0, 1, half())]);
        assert_eq!(c.min_gap, half());
        let tri = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = candidate_points(&tri, &zero()).unwrap();
        // S_0 still contains 1/2
        assert_eq!(c.points.len(), 3 + 3);
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(candidate_points(&p3, &rat(1, 3)).unwrap().points.len(), 11);
    }

    #[test]
    fn single_edge_quarter() {
        let e = Graph::new(2, &[(0, 1)]).unwrap();
        let r = exact_shortest_tour(&e, &rat(1, 4), None).unwrap();
        assert_eq!(r.length, int(1));
        let r = exact_shortest_tour(&e, &half(), None).unwrap();
        assert_eq!(r.length, zero());
        assert_eq!(r.tour.stops(), &[Point::on_edge(0, 1, half())]);
    }

    #[test]
    fn star_at_half() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = exact_shortest_tour(&star, &half(), None).unwrap();
        assert_eq!(r.length, int(3));
        assert!(!r.cap_binding);
    }

    #[test]
    fn zero_delta_is_postman() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(exact_shortest_tour(&p3, &zero(), None).unwrap().length, int(4));
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(exact_shortest_tour(&k4, &zero(), None).unwrap().length, int(8));
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(exact_shortest_tour(&g, &zero(), None).unwrap().length, zero());
    }
}
