//! Closed tours of stopping points, niceness, and normalization.

use crate::graph::{Graph, Point};
use crate::kernels::euler::Multigraph;
use crate::rational::{one, zero, Rational};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TourError {
    #[error("a tour needs at least one stop")]
    Empty,
    #[error("tour is not closed (first and last stop differ)")]
    NotClosed,
    #[error("stop {0} is not a point of the graph")]
    ForeignPoint(usize),
    #[error("stops {0} and {1} coincide")]
    RepeatedStop(usize, usize),
    #[error("stops {0} and {1} do not share an edge")]
    NoCommonEdge(usize, usize),
    #[error("niceness needs at least three stops")]
    TooShortForNiceness,
    #[error("two consecutive stops lie inside an edge; normalize first")]
    InteriorPair,
}

/// A closed sequence `p_0 … p_z` with `p_0 = p_z`, or a single point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tour {
    stops: Vec<Point>,
}

impl Tour {
    pub fn new(g: &Graph, stops: Vec<Point>) -> Result<Tour, TourError> {
        if stops.is_empty() {
            return Err(TourError::Empty);
        }
        for (i, p) in stops.iter().enumerate() {
            if !g.contains(p) {
                return Err(TourError::ForeignPoint(i));
            }
        }
        if stops.len() > 1 {
            if stops.first() != stops.last() {
                return Err(TourError::NotClosed);
            }
            for i in 1..stops.len() {
                if stops[i - 1] == stops[i] {
                    return Err(TourError::RepeatedStop(i - 1, i));
                }
                if g.common_edge(&stops[i - 1], &stops[i]).is_none() {
                    return Err(TourError::NoCommonEdge(i - 1, i));
                }
            }
        }
        Ok(Tour { stops })
    }

    /// Builds a tour from a cyclic list (closing it automatically).
    pub fn from_cycle(g: &Graph, mut cyc: Vec<Point>) -> Result<Tour, TourError> {
        if cyc.len() > 1 {
            cyc.push(cyc[0].clone());
        }
        Tour::new(g, cyc)
    }

    pub fn single(p: Point) -> Tour {
        Tour { stops: vec![p] }
    }

    /// Stops including the closing repetition.
    pub fn stops(&self) -> &[Point] {
        &self.stops
    }

    /// Stops without the closing repetition (length `z`, or 1 for a single point).
    pub fn cycle(&self) -> &[Point] {
        if self.stops.len() == 1 {
            &self.stops
        } else {
            &self.stops[..self.stops.len() - 1]
        }
    }

    /// Discrete length `α = z`.
    pub fn alpha(&self) -> usize {
        self.stops.len() - 1
    }

    pub fn length(&self, g: &Graph) -> Rational {
        let mut s = zero();
        for w in self.stops.windows(2) {
            s += segment_length(g, &w[0], &w[1]);
        }
        s
    }

    /// Consecutive stop pairs `(p_{i-1}, p_i)`.
    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.stops.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Distinct stopping points in first-occurrence order.
    pub fn distinct_stops(&self) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for p in self.cycle() {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
        out
    }

    pub fn stops_at(&self, p: &Point) -> bool {
        self.stops.contains(p)
    }

    /// Whether `p` lies on some segment `P(p_{i-1}, p_i)`.
    pub fn passes(&self, g: &Graph, p: &Point) -> bool {
        if self.stops.contains(p) {
            return true;
        }
        let (u, v) = match p.edge() {
            Some(e) => e,
            None => return false,
        };
        let x = p.position_from(u, v);
        for (a, b) in self.segments() {
            if g.common_edge(a, b) == Some((u, v)) {
                let pa = a.position_from(u, v);
                let pb = b.position_from(u, v);
                let (lo, hi) = if pa <= pb { (pa, pb) } else { (pb, pa) };
                if lo <= x && x <= hi {
                    return true;
                }
            }
        }
        false
    }

    /// Distance from `p` to the passed set; attained at a stop when positive.
    pub fn distance_to(&self, g: &Graph, p: &Point) -> Rational {
        if self.passes(g, p) {
            return zero();
        }
        self.distance_to_stops(g, p)
    }

    /// Minimum distance from `p` to a stopping point.
    pub fn distance_to_stops(&self, g: &Graph, p: &Point) -> Rational {
        self.cycle()
            .iter()
            .map(|q| g.distance(p, q))
            .min()
            .expect("nonempty tour")
    }

    /// Replaces each peek `⟨u, p(u,v,λ), u⟩` by `⟨u, v, u⟩`; drops pass-through interior stops.
    pub fn extension(&self, g: &Graph) -> Result<Tour, TourError> {
        let cyc = self.cycle();
        let z = cyc.len();
        if z == 1 {
            return match &cyc[0] {
                Point::Vertex(_) => Ok(self.clone()),
                Point::Interior { u, v, .. } => Tour::from_cycle(g, vec![Point::Vertex(*u), Point::Vertex(*v)]),
            };
        }
        for i in 0..z {
            if !cyc[i].is_vertex() && !cyc[(i + 1) % z].is_vertex() {
                return Err(TourError::InteriorPair);
            }
        }
        let mut out: Vec<Point> = Vec::with_capacity(z);
        for i in 0..z {
            match &cyc[i] {
                Point::Vertex(_) => out.push(cyc[i].clone()),
                Point::Interior { u, v, .. } => {
                    let prev = &cyc[(i + z - 1) % z];
                    let next = &cyc[(i + 1) % z];
                    if prev == next {
                        let base = prev.as_vertex().expect("vertex neighbour");
                        out.push(Point::Vertex(if base == *u { *v } else { *u }));
                    }
                }
            }
        }
        Tour::from_cycle(g, out)
    }

    /// Niceness; undefined for fewer than three stops.
    pub fn is_nice(&self, _g: &Graph) -> Result<bool, TourError> {
        if self.alpha() < 3 {
            return Err(TourError::TooShortForNiceness);
        }
        let cyc = self.cycle();
        let z = cyc.len();
        let mut interior_count: HashMap<(usize, usize), usize> = HashMap::new();
        let mut traversals: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 0..z {
            let a = &cyc[i];
            let b = &cyc[(i + 1) % z];
            if !a.is_vertex() && !b.is_vertex() {
                return Ok(false);
            }
            if let (Some(x), Some(y)) = (a.as_vertex(), b.as_vertex()) {
                *traversals.entry((x.min(y), x.max(y))).or_default() += 1;
            }
            if let Some(e) = a.edge() {
                if cyc[(i + z - 1) % z] != cyc[(i + 1) % z] {
                    return Ok(false);
                }
                *interior_count.entry(e).or_default() += 1;
            }
        }
        for (e, c) in &interior_count {
            if *c > 1 || traversals.contains_key(e) {
                return Ok(false);
            }
        }
        Ok(traversals.values().all(|&c| c <= 2))
    }

    /// Nice, or at most two stops.
    pub fn is_normalized(&self, g: &Graph) -> bool {
        self.alpha() <= 2 || self.is_nice(g).unwrap_or(false)
    }
}

/// Length of the segment between consecutive stops (assumed on a common edge).
pub fn segment_length(g: &Graph, a: &Point, b: &Point) -> Rational {
    let (u, v) = g.common_edge(a, b).expect("consecutive stops share an edge");
    let x = a.position_from(u, v);
    let y = b.position_from(u, v);
    if x >= y { x - y } else { y - x }
}

/// Fixpoint of the five rewrite rules; the result is nice or has ≤ 2 stops.
pub fn make_nice(g: &Graph, t: &Tour) -> Tour {
    let mut cyc: Vec<Point> = t.cycle().to_vec();
    if t.alpha() == 0 {
        return t.clone();
    }
    while cyc.len() >= 3 {
        let next = rule_no2mp(&cyc)
            .or_else(|| rule_nointermediate(&cyc))
            .or_else(|| rule_atmost1(&cyc))
            .or_else(|| rule_atmost2(&cyc))
            .or_else(|| rule_edgetwice(&cyc));
        match next {
            Some(c) => {
                debug_assert!(c.len() < cyc.len());
                cyc = c;
            }
            None => break,
        }
    }
    if cyc.len() == 1 {
        return Tour::single(cyc.remove(0));
    }
    Tour::from_cycle(g, cyc).expect("rewrite rules keep tours valid")
}

fn keep_except(cyc: &[Point], drop: &[usize]) -> Vec<Point> {
    cyc.iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, p)| p.clone())
        .collect()
}

fn interior_pos_from(p: &Point, base: usize) -> Rational {
    let (u, v) = p.edge().expect("interior point");
    if base == u {
        p.position_from(u, v)
    } else {
        p.position_from(v, u)
    }
}

// Runs of ≥2 consecutive interior stops.
fn rule_no2mp(cyc: &[Point]) -> Option<Vec<Point>> {
    let z = cyc.len();
    if cyc.iter().all(|p| !p.is_vertex()) {
        let mut lo = 0;
        let mut hi = 0;
        let pos = |p: &Point| match p {
            Point::Interior { lambda, .. } => lambda.clone(),
            _ => unreachable!(),
        };
        for i in 1..z {
            if pos(&cyc[i]) < pos(&cyc[lo]) {
                lo = i;
            }
            if pos(&cyc[i]) > pos(&cyc[hi]) {
                hi = i;
            }
        }
        return Some(vec![cyc[lo].clone(), cyc[hi].clone()]);
    }
    for start in 0..z {
        if cyc[start].is_vertex() || !cyc[(start + z - 1) % z].is_vertex() {
            continue;
        }
        let mut run = vec![start];
        let mut j = (start + 1) % z;
        while !cyc[j].is_vertex() {
            run.push(j);
            j = (j + 1) % z;
        }
        if run.len() < 2 {
            continue;
        }
        let before = cyc[(start + z - 1) % z].as_vertex().unwrap();
        let after = cyc[j].as_vertex().unwrap();
        if before == after {
            let mut keep = run[0];
            for &i in &run[1..] {
                if interior_pos_from(&cyc[i], before) > interior_pos_from(&cyc[keep], before) {
                    keep = i;
                }
            }
            let drop: Vec<usize> = run.into_iter().filter(|&i| i != keep).collect();
            return Some(keep_except(cyc, &drop));
        }
        return Some(keep_except(cyc, &run));
    }
    None
}

// Interior stop between the two different endpoints of its edge.
fn rule_nointermediate(cyc: &[Point]) -> Option<Vec<Point>> {
    let z = cyc.len();
    (0..z)
        .find(|&i| !cyc[i].is_vertex() && cyc[(i + z - 1) % z] != cyc[(i + 1) % z])
        .map(|i| keep_except(cyc, &[i]))
}

fn drop_peek(z: usize, i: usize) -> [usize; 2] {
    [i, (i + 1) % z]
}

// Two interior stops on one edge.
fn rule_atmost1(cyc: &[Point]) -> Option<Vec<Point>> {
    let z = cyc.len();
    let mut first: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut pair = None;
    for i in 0..z {
        if let Some(e) = cyc[i].edge() {
            if let Some(&j) = first.get(&e) {
                pair = Some((j, i));
                break;
            }
            first.insert(e, i);
        }
    }
    let (i, j) = pair?;
    let bi = cyc[(i + z - 1) % z].as_vertex().expect("peek base");
    let bj = cyc[(j + z - 1) % z].as_vertex().expect("peek base");
    if bi == bj {
        let li = interior_pos_from(&cyc[i], bi);
        let lj = interior_pos_from(&cyc[j], bi);
        let victim = if li < lj { i } else { j };
        return Some(keep_except(cyc, &drop_peek(z, victim)));
    }
    let (u, v) = (bi, bj);
    let l1 = interior_pos_from(&cyc[i], u);
    let l2 = interior_pos_from(&cyc[j], u);
    let mut out = cyc.to_vec();
    out[i] = if l1 > l2 {
        Point::Vertex(v)
    } else {
        Point::on_edge(u, v, one() - (l2 - l1))
    };
    Some(keep_except(&out, &drop_peek(z, j)))
}

fn traversed_edges(cyc: &[Point]) -> Vec<((usize, usize), usize)> {
    let z = cyc.len();
    let mut out: Vec<((usize, usize), usize)> = Vec::new();
    for i in 0..z {
        if let (Some(a), Some(b)) = (cyc[i].as_vertex(), cyc[(i + 1) % z].as_vertex()) {
            let e = (a.min(b), a.max(b));
            match out.iter_mut().find(|(f, _)| *f == e) {
                Some((_, c)) => *c += 1,
                None => out.push((e, 1)),
            }
        }
    }
    out
}

// Peek into an edge the tour also traverses.
fn rule_atmost2(cyc: &[Point]) -> Option<Vec<Point>> {
    let z = cyc.len();
    let trav = traversed_edges(cyc);
    (0..z)
        .find(|&i| cyc[i].edge().is_some_and(|e| trav.iter().any(|(f, _)| *f == e)))
        .map(|i| keep_except(cyc, &drop_peek(z, i)))
}

// Edge traversed three or more times: drop two traversals, re-route by Euler.
fn rule_edgetwice(cyc: &[Point]) -> Option<Vec<Point>> {
    let z = cyc.len();
    let trav = traversed_edges(cyc);
    let (e, _) = *trav.iter().find(|(_, c)| *c >= 3)?;
    let mut ids: Vec<Point> = Vec::new();
    let id = |p: &Point, ids: &mut Vec<Point>| -> usize {
        match ids.iter().position(|q| q == p) {
            Some(k) => k,
            None => {
                ids.push(p.clone());
                ids.len() - 1
            }
        }
    };
    let mut pairs = Vec::with_capacity(z);
    for i in 0..z {
        let a = id(&cyc[i], &mut ids);
        let b = id(&cyc[(i + 1) % z], &mut ids);
        pairs.push((a, b));
    }
    let ea = id(&Point::Vertex(e.0), &mut ids);
    let eb = id(&Point::Vertex(e.1), &mut ids);
    let mut removed = 0;
    let mut m = Multigraph::new(ids.len());
    for &(a, b) in &pairs {
        if removed < 2 && ((a == ea && b == eb) || (a == eb && b == ea)) {
            removed += 1;
            continue;
        }
        m.add_edge(a, b);
    }
    let walk = m.euler_tour(0).expect("remaining multigraph is connected and even");
    let mut out: Vec<Point> = walk.into_iter().map(|k| ids[k].clone()).collect();
    out.pop();
    Some(out)
}
