//! The auxiliary graph Γ(G,δ) for δ > 1 and tours built from its dominating sets.
//!
//! Γ has one vertex per candidate point (a clique) and one per edge segment
//! cut out by the points at distance exactly δ from some candidate. A candidate
//! is adjacent to a segment when it is strictly closer than δ to one of the
//! segment's ends. Candidate sets that dominate Γ are exactly the stop sets of
//! δ-tours.

use crate::discrete::candidate_points;
use crate::graph::{Graph, Point};
use crate::kernels::trees::tree_tour;
use crate::kernels::tsp::kruskal;
use crate::rational::{common_denominator, from_units, int, one, rat, to_units, Rational};
use crate::tour::Tour;
use std::collections::HashMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LargeDeltaError {
    #[error("this construction needs delta > 1")]
    DeltaTooSmall,
    #[error("stop {0} is not a candidate point")]
    NotACandidate(Point),
    #[error("denominators too large for the integer construction")]
    Overflow,
}

/// One segment vertex `x_I`: edge index and end positions from the lower endpoint, in units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSegment {
    pub edge: usize,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Clone, Debug)]
pub struct GammaGraph {
    pub delta: Rational,
    /// Positions and distances are integers in units of `1/scale`.
    pub scale: i64,
    pub candidates: Vec<Point>,
    pub segments: Vec<GammaSegment>,
    /// Candidates adjacent to each segment, ascending.
    pub segment_adj: Vec<Vec<usize>>,
    /// Distance from each candidate to each vertex, in units.
    cand_vdist: Vec<Vec<i64>>,
    /// Host edge and position of each candidate (`None` for vertices).
    cand_on: Vec<Option<(usize, i64)>>,
    index: HashMap<Point, usize>,
    n: usize,
}

impl GammaGraph {
    pub fn vertex_count(&self) -> usize {
        self.candidates.len() + self.segments.len()
    }

    pub fn edge_count(&self) -> usize {
        let k = self.candidates.len();
        k * (k.saturating_sub(1)) / 2 + self.segment_adj.iter().map(Vec::len).sum::<usize>()
    }

    pub fn candidate_index(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// End points of segment `i`.
    pub fn segment_ends(&self, g: &Graph, i: usize) -> (Point, Point) {
        let s = &self.segments[i];
        let (u, v) = g.edges()[s.edge];
        (Point::on_edge(u, v, from_units(s.lo, self.scale)), Point::on_edge(u, v, from_units(s.hi, self.scale)))
    }

    /// Weight of a Γ edge in the weighted variant: `d(p,p')` inside the clique, `n³` to segments.
    pub fn weight_between_candidates(&self, g: &Graph, a: usize, b: usize) -> Rational {
        g.distance(&self.candidates[a], &self.candidates[b])
    }

    pub fn segment_weight(&self) -> Rational {
        int((self.n as i64).pow(3))
    }

    /// Distance in units from candidate `c` to the point at position `x` on edge `k`.
    pub fn unit_distance(&self, g: &Graph, c: usize, k: usize, x: i64) -> i64 {
        gamma_dist(g, self.scale, &self.cand_vdist[c], self.cand_on[c], k, x)
    }

    /// Whether the candidate set (as indices) dominates Γ.
    pub fn dominates(&self, chosen: &[usize]) -> bool {
        if chosen.is_empty() {
            return false;
        }
        let mut mark = vec![false; self.candidates.len()];
        for &c in chosen {
            mark[c] = true;
        }
        self.segment_adj.iter().all(|adj| adj.iter().any(|&c| mark[c]))
    }
}

fn gamma_dist(g: &Graph, d: i64, vdist: &[i64], on: Option<(usize, i64)>, k: usize, x: i64) -> i64 {
    let (u, v) = g.edges()[k];
    if let Some((e, pos)) = on {
        if e == k {
            return (pos - x).abs();
        }
    }
    (vdist[u] + x).min(vdist[v] + d - x)
}

struct Prepared {
    scale: i64,
    delta_u: i64,
    candidates: Vec<Point>,
    vdist: Vec<Vec<i64>>,
    on: Vec<Option<(usize, i64)>>,
}

fn prepare(g: &Graph, delta: &Rational) -> Result<Prepared, LargeDeltaError> {
    if *delta <= one() {
        return Err(LargeDeltaError::DeltaTooSmall);
    }
    let cs = candidate_points(g, delta).map_err(|_| LargeDeltaError::DeltaTooSmall)?;
    let mut vals: Vec<&Rational> = cs.positions.iter().collect();
    vals.push(delta);
    let scale = common_denominator(vals).ok_or(LargeDeltaError::Overflow)?;
    let delta_u = to_units(delta, scale).ok_or(LargeDeltaError::Overflow)?;
    let lim = i64::MAX / 16 / (g.n() as i64 + 2);
    if scale > lim || delta_u > lim {
        return Err(LargeDeltaError::Overflow);
    }
    let mut vdist = Vec::with_capacity(cs.points.len());
    let mut on = Vec::with_capacity(cs.points.len());
    for p in &cs.points {
        let anchors: Vec<(usize, i64)> = p.anchors().into_iter().map(|(a, off)| (a, to_units(&off, scale).unwrap())).collect();
        vdist.push(
            (0..g.n()).map(|w| anchors.iter().map(|&(a, off)| off + g.hops(a, w) as i64 * scale).min().unwrap()).collect(),
        );
        on.push(p.edge().map(|(u, v)| (g.edge_index(u, v).unwrap(), to_units(&p.position_from(u, v), scale).unwrap())));
    }
    Ok(Prepared { scale, delta_u, candidates: cs.points, vdist, on })
}

/// Per edge, the sorted positions (units, from the lower endpoint) of vertices and of
/// points at distance exactly δ from some candidate.
fn exact_positions(g: &Graph, pr: &Prepared) -> Vec<Vec<i64>> {
    let d = pr.scale;
    let mut per_edge: Vec<Vec<i64>> = vec![vec![0, d]; g.m()];
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        for c in 0..pr.candidates.len() {
            let vd = &pr.vdist[c];
            for x in [pr.delta_u - vd[u], d - (pr.delta_u - vd[v])] {
                if x > 0 && x < d && gamma_dist(g, d, vd, pr.on[c], k, x) == pr.delta_u {
                    per_edge[k].push(x);
                }
            }
        }
        per_edge[k].sort_unstable();
        per_edge[k].dedup();
    }
    per_edge
}

/// Vertices plus every edge point at distance exactly δ from a candidate.
pub fn exact_distance_points(g: &Graph, delta: &Rational) -> Result<Vec<Point>, LargeDeltaError> {
    let pr = prepare(g, delta)?;
    let mut out: Vec<Point> = (0..g.n()).map(Point::Vertex).collect();
    for (k, xs) in exact_positions(g, &pr).into_iter().enumerate() {
        let (u, v) = g.edges()[k];
        for x in xs {
            if x > 0 && x < pr.scale {
                out.push(Point::on_edge(u, v, from_units(x, pr.scale)));
            }
        }
    }
    Ok(out)
}

pub fn build_gamma(g: &Graph, delta: &Rational) -> Result<GammaGraph, LargeDeltaError> {
    let pr = prepare(g, delta)?;
    let mut segments = Vec::new();
    let mut segment_adj = Vec::new();
    for (k, xs) in exact_positions(g, &pr).into_iter().enumerate() {
        for w in xs.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let adj: Vec<usize> = (0..pr.candidates.len())
                .filter(|&c| {
                    gamma_dist(g, pr.scale, &pr.vdist[c], pr.on[c], k, lo) < pr.delta_u
                        || gamma_dist(g, pr.scale, &pr.vdist[c], pr.on[c], k, hi) < pr.delta_u
                })
                .collect();
            segments.push(GammaSegment { edge: k, lo, hi });
            segment_adj.push(adj);
        }
    }
    let index = pr.candidates.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    Ok(GammaGraph {
        delta: delta.clone(),
        scale: pr.scale,
        candidates: pr.candidates,
        segments,
        segment_adj,
        cand_vdist: pr.vdist,
        cand_on: pr.on,
        index,
        n: g.n(),
    })
}

/// Whether the stop set of `t` dominates Γ. Every stop must be a candidate.
pub fn domination_equivalence_check(t: &Tour, gamma: &GammaGraph) -> Result<bool, LargeDeltaError> {
    let mut idx = Vec::new();
    for p in t.distinct_stops() {
        idx.push(gamma.candidate_index(&p).ok_or(LargeDeltaError::NotACandidate(p.clone()))?);
    }
    Ok(gamma.dominates(&idx))
}

/// Greedy by largest number of newly dominated Γ vertices (ties: lowest index,
/// candidates before segments); chosen segments are then swapped for their
/// lowest adjacent candidate. Returns candidate indices, ascending.
pub fn greedy_dominating_set(gamma: &GammaGraph) -> Vec<usize> {
    let k = gamma.candidates.len();
    let s = gamma.segments.len();
    let mut cand_segs: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, adj) in gamma.segment_adj.iter().enumerate() {
        for &c in adj {
            cand_segs[c].push(i);
        }
    }
    let mut cand_dom = vec![false; k];
    let mut seg_dom = vec![false; s];
    let mut any_cand_dom = false;
    let mut picks: Vec<(bool, usize)> = Vec::new(); // (is_segment, index)
    loop {
        let left = seg_dom.iter().filter(|&&x| !x).count() + cand_dom.iter().filter(|&&x| !x).count();
        if left == 0 {
            break;
        }
        let mut best: Option<(usize, bool, usize)> = None;
        for c in 0..k {
            let gain_c = if any_cand_dom { 0 } else { cand_dom.iter().filter(|&&x| !x).count() };
            let gain = gain_c + cand_segs[c].iter().filter(|&&i| !seg_dom[i]).count();
            if best.is_none_or(|(b, _, _)| gain > b) {
                best = Some((gain, false, c));
            }
        }
        for i in 0..s {
            let gain = usize::from(!seg_dom[i]) + gamma.segment_adj[i].iter().filter(|&&c| !cand_dom[c]).count();
            if best.is_none_or(|(b, _, _)| gain > b) {
                best = Some((gain, true, i));
            }
        }
        let (_, is_seg, i) = best.expect("Γ has vertices");
        if is_seg {
            seg_dom[i] = true;
            for &c in &gamma.segment_adj[i] {
                cand_dom[c] = true;
            }
        } else {
            any_cand_dom = true;
            cand_dom.iter_mut().for_each(|x| *x = true);
            for &j in &cand_segs[i] {
                seg_dom[j] = true;
            }
        }
        picks.push((is_seg, i));
    }
    let mut out: Vec<usize> = picks
        .into_iter()
        .map(|(is_seg, i)| if is_seg { gamma.segment_adj[i][0] } else { i })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Drops chosen candidates (latest first) while the rest still dominates.
fn prune_redundant(gamma: &GammaGraph, chosen: &mut Vec<usize>, order: &[usize]) {
    for &c in order.iter().rev() {
        if chosen.len() <= 1 {
            break;
        }
        let rest: Vec<usize> = chosen.iter().copied().filter(|&x| x != c).collect();
        if gamma.dominates(&rest) {
            *chosen = rest;
        }
    }
}

#[derive(Clone, Debug)]
pub struct LargeDeltaTour {
    pub tour: Tour,
    /// The dominating candidate set the tour stops at.
    pub domset: Vec<Point>,
    pub gamma_vertices: usize,
    /// Weight of the dominating tree (input-δ mode) or of the connection tree.
    pub tree_weight: Rational,
}

/// Greedy dominating set joined by a spanning tree of the "within 2δ" graph.
pub fn fixed_delta_tour(g: &Graph, delta: &Rational) -> Result<LargeDeltaTour, LargeDeltaError> {
    let gamma = build_gamma(g, delta)?;
    let mut y = greedy_dominating_set(&gamma);
    let order = y.clone();
    prune_redundant(&gamma, &mut y, &order);
    let pts: Vec<Point> = y.iter().map(|&i| gamma.candidates[i].clone()).collect();
    let two_delta = int(2) * delta;
    let mut cand: Vec<(Rational, usize, usize)> = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let w = g.distance(&pts[i], &pts[j]);
            if w <= two_delta {
                cand.push((w, i, j));
            }
        }
    }
    cand.sort();
    let (tree, weight) = kruskal(pts.len(), cand.into_iter().map(|(w, i, j)| (i, j, w)));
    assert_eq!(tree.len() + 1, pts.len(), "connection graph of a dominating set is connected");
    let tour = tree_tour(g, &pts, &tree);
    Ok(LargeDeltaTour { tour, domset: pts, gamma_vertices: gamma.vertex_count(), tree_weight: weight })
}

/// Dominating tree on candidates grown by gain per unit of distance, then a
/// minimum spanning tree on the chosen points; the tour walks it twice.
pub fn input_delta_tour(g: &Graph, delta: &Rational) -> Result<LargeDeltaTour, LargeDeltaError> {
    let gamma = build_gamma(g, delta)?;
    let k = gamma.candidates.len();
    let mut cand_segs: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, adj) in gamma.segment_adj.iter().enumerate() {
        for &c in adj {
            cand_segs[c].push(i);
        }
    }
    let mut seg_dom = vec![false; gamma.segments.len()];
    let mut chosen: Vec<usize> = Vec::new();
    // distance (units) from each candidate to the chosen set
    let mut reach: Vec<Option<i64>> = vec![None; k];
    let unit_dist = |a: usize, b: usize| to_units(&g.distance(&gamma.candidates[a], &gamma.candidates[b]), gamma.scale).unwrap();
    while chosen.is_empty() || seg_dom.iter().any(|&x| !x) {
        // maximize gain / reach; the first pick maximizes gain alone
        let mut best: Option<(usize, i64, usize)> = None;
        for c in 0..k {
            if chosen.contains(&c) {
                continue;
            }
            let gain = cand_segs[c].iter().filter(|&&i| !seg_dom[i]).count();
            let r = reach[c].unwrap_or(1).max(1);
            let better = match best {
                None => true,
                Some((bg, br, _)) => (gain as i128) * (br as i128) > (bg as i128) * (r as i128),
            };
            if better {
                best = Some((gain, r, c));
            }
        }
        let (_, _, c) = best.expect("an undominated segment has an adjacent candidate");
        chosen.push(c);
        for &i in &cand_segs[c] {
            seg_dom[i] = true;
        }
        for (o, r) in reach.iter_mut().enumerate() {
            let d = unit_dist(o, c);
            if r.is_none_or(|x| d < x) {
                *r = Some(d);
            }
        }
    }
    let order = chosen.clone();
    chosen.sort_unstable();
    prune_redundant(&gamma, &mut chosen, &order);
    let pts: Vec<Point> = chosen.iter().map(|&i| gamma.candidates[i].clone()).collect();
    let w: Vec<Vec<Rational>> = pts.iter().map(|p| pts.iter().map(|q| g.distance(p, q)).collect()).collect();
    let (tree, weight) = crate::kernels::tsp::mst(&w);
    let tour = tree_tour(g, &pts, &tree);
    Ok(LargeDeltaTour { tour, domset: pts, gamma_vertices: gamma.vertex_count(), tree_weight: weight })
}

/// `4δ|Y|`, the length guarantee of the connection step.
pub fn connection_bound(delta: &Rational, y: usize) -> Rational {
    int(4) * delta * rat(y as i64, 1)
}
