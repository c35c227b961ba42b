//! Cut LP over edge variables `z ∈ [0,2]^E` with `z(C(F)) ≥ 2` for every vertex
//! set `F` such that both `F` and its complement induce an edge.

use super::maxflow::FlowNetwork;
use super::simplex::DualSimplex;
use crate::graph::{Graph, Point};
use crate::kernels::trees::connect_points_tour;
use crate::kernels::tsp::{christofides, WeightedGraph};
use crate::rational::{common_denominator, int, to_units, zero, Rational};
use crate::tour::{make_nice, Tour};
use std::collections::BTreeSet;

/// Edges with exactly one endpoint in `f` (given as a membership mask).
pub fn cut_edges(g: &Graph, f: &[bool]) -> Vec<usize> {
    g.edges().iter().enumerate().filter(|(_, &(u, v))| f[u] != f[v]).map(|(k, _)| k).collect()
}

fn induces_edge(g: &Graph, f: &[bool], side: bool) -> bool {
    g.edges().iter().any(|&(u, v)| f[u] == side && f[v] == side)
}

/// Every member of the constraint family, as sorted vertex lists containing vertex 0
/// (each set and its complement give the same constraint). Exponential; small graphs only.
pub fn enumerate_family(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    assert!(n <= 20, "family enumeration is for small graphs");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let f: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        if induces_edge(g, &f, true) && induces_edge(g, &f, false) {
            out.push((0..n).filter(|&v| f[v]).collect());
        }
    }
    out
}

/// Violated constraints for `z`, one per anchor pair that finds one, deduplicated.
/// Each set is normalized to contain vertex 0.
pub fn separation_oracle(g: &Graph, z: &[Rational]) -> Vec<Vec<usize>> {
    assert_eq!(z.len(), g.m());
    assert!(z.iter().all(|x| *x >= zero() && *x <= int(2)), "z must lie in [0,2]");
    let scale = common_denominator(z.iter()).expect("denominators fit in i64");
    let cap: Vec<i128> = z.iter().map(|x| to_units(x, scale).unwrap() as i128).collect();
    let two = 2 * scale as i128;
    let n = g.n();
    let (s, t) = (n, n + 1);
    let big = two * 4 + 1;
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        for &(c, d) in &g.edges()[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let mut net = FlowNetwork::new(n + 2);
            for (k, &(u, v)) in g.edges().iter().enumerate() {
                if cap[k] > 0 {
                    net.add_undirected(u, v, cap[k]);
                }
            }
            for x in [a, b] {
                net.add_directed(s, x, big);
            }
            for y in [c, d] {
                net.add_directed(y, t, big);
            }
            let (val, side) = net.min_cut(s, t);
            if val < two {
                let zero_in = side[0];
                let f: Vec<usize> = (0..n).filter(|&v| side[v] == zero_in).collect();
                found.insert(f);
            }
        }
    }
    found.into_iter().collect()
}

#[derive(Clone, Debug)]
pub struct TourLp {
    pub value: Rational,
    pub z: Vec<Rational>,
    /// Cut constraints generated, each as a vertex set containing vertex 0.
    pub cuts: Vec<Vec<usize>>,
    pub rounds: usize,
}

/// Exact optimum by lazy constraint generation.
pub fn solve_tour_lp(g: &Graph) -> TourLp {
    let m = g.m();
    let mut lp = DualSimplex::new(&vec![int(1); m]);
    for k in 0..m {
        lp.add_row(&[(k, int(-1))], &int(-2));
    }
    let mut cuts: Vec<Vec<usize>> = Vec::new();
    let mut rounds = 0;
    loop {
        lp.solve().expect("z = 2 everywhere is feasible");
        let z = lp.solution();
        let viol = separation_oracle(g, &z);
        if viol.is_empty() {
            return TourLp { value: lp.objective(), z, cuts, rounds };
        }
        rounds += 1;
        for f in viol {
            let mut mask = vec![false; g.n()];
            for &v in &f {
                mask[v] = true;
            }
            let row: Vec<(usize, Rational)> = cut_edges(g, &mask).into_iter().map(|k| (k, int(1))).collect();
            lp.add_row(&row, &int(2));
            cuts.push(f);
        }
    }
}

/// Lower bound on the length of every 1-tour.
pub fn one_tour_lower_bound(g: &Graph) -> Rational {
    solve_tour_lp(g).value
}

/// Drops vertices whose neighbours are all in the cover, lowest degree first.
fn prune_cover(g: &Graph, cover: &mut [bool]) {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    for v in order {
        if cover[v] && g.neighbors(v).iter().all(|&w| cover[w]) {
            // keep at least one vertex
            if cover.iter().filter(|&&c| c).count() > 1 {
                cover[v] = false;
            }
        }
    }
}

/// A few vertex covers to choose from: matching-based and greedy by degree, both pruned.
pub fn candidate_covers(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut push = |c: Vec<bool>| {
        let l: Vec<usize> = (0..n).filter(|&v| c[v]).collect();
        if !out.contains(&l) {
            out.push(l);
        }
    };
    // endpoints of a maximal matching
    let mut cover = vec![false; n];
    for &(u, v) in g.edges() {
        if !cover[u] && !cover[v] {
            cover[u] = true;
            cover[v] = true;
        }
    }
    prune_cover(g, &mut cover);
    push(cover);
    // highest remaining degree first
    let mut cover = vec![false; n];
    let mut open: Vec<bool> = vec![true; g.m()];
    while open.iter().any(|&o| o) {
        let v = (0..n)
            .max_by_key(|&v| {
                let d = g.edges().iter().enumerate().filter(|(k, &(a, b))| open[*k] && (a == v || b == v)).count();
                (d, std::cmp::Reverse(v))
            })
            .unwrap();
        cover[v] = true;
        for (k, &(a, b)) in g.edges().iter().enumerate() {
            if a == v || b == v {
                open[k] = false;
            }
        }
    }
    prune_cover(g, &mut cover);
    push(cover);
    // everything, pruned
    let mut cover = vec![true; n];
    prune_cover(g, &mut cover);
    push(cover);
    out
}

/// Closed walk through the cover vertices: the shorter of a doubled spanning tree
/// and a Christofides order, both over shortest paths.
fn cover_walk(g: &Graph, cover: &[usize]) -> Tour {
    let pts: Vec<Point> = cover.iter().map(|&v| Point::Vertex(v)).collect();
    let a = connect_points_tour(g, &pts);
    if cover.len() < 3 {
        return a;
    }
    let mut wg = WeightedGraph::new(cover.len());
    for i in 0..cover.len() {
        for j in i + 1..cover.len() {
            wg.add_edge(i, j, int(g.hops(cover[i], cover[j]) as i64));
        }
    }
    let order = christofides(&wg.metric_closure()).expect("even matching instance");
    let mut stops = vec![Point::Vertex(cover[order[0]])];
    for w in order.windows(2) {
        for x in g.shortest_path(cover[w[0]], cover[w[1]]).into_iter().skip(1) {
            stops.push(Point::Vertex(x));
        }
    }
    let b = Tour::new(g, stops).expect("walk along shortest paths");
    if b.length(g) < a.length(g) {
        b
    } else {
        a
    }
}

/// Integral tour whose vertex stops form a vertex cover. No constant-factor guarantee.
pub fn vertex_cover_tour(g: &Graph) -> Tour {
    if g.m() == 0 {
        return Tour::single(Point::Vertex(0));
    }
    let mut best: Option<(Rational, Tour)> = None;
    for c in candidate_covers(g) {
        let t = cover_walk(g, &c);
        let l = t.length(g);
        if best.as_ref().is_none_or(|(bl, _)| l < *bl) {
            best = Some((l, t));
        }
    }
    best.unwrap().1
}

/// The vertex cover tour after normalization.
pub fn normalized_vertex_cover_tour(g: &Graph) -> Tour {
    make_nice(g, &vertex_cover_tour(g))
}
