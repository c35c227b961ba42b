//! Random instances and independent oracles shared by the integration tests.
#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use deltatour::discrete::candidate_points;
use deltatour::generators::{gnp_connected, random_tree};
use deltatour::graph::{Graph, Point};
use deltatour::rational::{int, rat, zero, Rational};
use deltatour::tour::Tour;
use rand::Rng;
use std::collections::HashMap;

/// A connected graph on `1..=max_n` vertices: a tree or a G(n,p) sample.
pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    if rng.gen_bool(0.3) {
        random_tree(n, rng).unwrap()
    } else {
        let p = rng.gen_range(0.25..0.9);
        gnp_connected(n, p, rng).unwrap()
    }
}

fn random_position<R: Rng>(rng: &mut R) -> Rational {
    let q = [2i64, 3, 4, 5, 6, 8, 12][rng.gen_range(0..7)];
    rat(rng.gen_range(1..q), q)
}

/// Random closed walk with stops at vertices and at rational interior points.
pub fn random_tour<R: Rng>(g: &Graph, rng: &mut R, max_steps: usize) -> Tour {
    let start = Point::Vertex(rng.gen_range(0..g.n()));
    if g.m() == 0 {
        return Tour::single(start);
    }
    let steps = rng.gen_range(0..=max_steps);
    if steps == 0 && rng.gen_bool(0.5) {
        let (u, v) = g.edges()[rng.gen_range(0..g.m())];
        return Tour::single(Point::on_edge(u, v, random_position(rng)));
    }
    let mut stops = vec![start.clone()];
    for _ in 0..steps {
        let cur = stops.last().unwrap().clone();
        let next = match &cur {
            Point::Vertex(u) => {
                let nb = g.neighbors(*u);
                let w = nb[rng.gen_range(0..nb.len())];
                if rng.gen_bool(0.5) {
                    Point::Vertex(w)
                } else {
                    Point::on_edge(*u, w, random_position(rng))
                }
            }
            Point::Interior { u, v, .. } => match rng.gen_range(0..3) {
                0 => Point::Vertex(*u),
                1 => Point::Vertex(*v),
                _ => Point::on_edge(*u, *v, random_position(rng)),
            },
        };
        if next != cur {
            stops.push(next);
        }
    }
    let last = stops.last().unwrap().clone();
    stops.extend(g.shortest_walk(&last, &start).into_iter().skip(1));
    if stops.len() == 1 {
        return Tour::single(start);
    }
    Tour::new(g, stops).expect("random walk is a tour")
}

/// Random closed walk whose stops are all candidate points for `delta`.
pub fn random_candidate_tour<R: Rng>(g: &Graph, delta: &Rational, rng: &mut R, max_picks: usize) -> Tour {
    let cands = candidate_points(g, delta).unwrap().points;
    let k = rng.gen_range(1..=max_picks);
    let picks: Vec<Point> = (0..k).map(|_| cands[rng.gen_range(0..cands.len())].clone()).collect();
    let mut stops = vec![picks[0].clone()];
    for p in picks.iter().skip(1).chain(std::iter::once(&picks[0])) {
        let last = stops.last().unwrap().clone();
        for q in g.shortest_walk(&last, p).into_iter().skip(1) {
            stops.push(q);
        }
    }
    if stops.len() == 1 {
        return Tour::single(stops.pop().unwrap());
    }
    Tour::new(g, stops).expect("walk between candidates")
}

/// Minimum perfect matching cost by memoized recursion over bitmasks.
pub fn matching_oracle(w: &[Vec<Rational>]) -> Rational {
    fn go(mask: u32, w: &[Vec<Rational>], memo: &mut HashMap<u32, Rational>) -> Rational {
        let n = w.len();
        if mask == (1u32 << n) - 1 {
            return zero();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let i = (0..n).find(|&i| mask >> i & 1 == 0).unwrap();
        let mut best: Option<Rational> = None;
        for j in i + 1..n {
            if mask >> j & 1 == 0 {
                let c = &w[i][j] + go(mask | 1 << i | 1 << j, w, memo);
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
        let b = best.unwrap();
        memo.insert(mask, b.clone());
        b
    }
    go(0, w, &mut HashMap::new())
}

/// Symmetric matrix with zero diagonal and random rational entries.
pub fn random_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Rational>> {
    let mut w = vec![vec![zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = rat(rng.gen_range(0..60), rng.gen_range(1..7));
            w[i][j] = x.clone();
            w[j][i] = x;
        }
    }
    w
}

/// Shortest-path closure of random weights: a metric.
pub fn random_metric<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Rational>> {
    let mut w = random_weights(rng, n);
    for i in 0..n {
        for j in 0..n {
            if i != j && w[i][j] == zero() {
                w[i][j] = int(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let c = &w[i][k] + &w[k][j];
                if c < w[i][j] {
                    w[i][j] = c;
                }
            }
        }
    }
    w
}

/// Exact TSP by trying every order (n ≤ 9).
pub fn tsp_oracle(w: &[Vec<Rational>]) -> Rational {
    let n = w.len();
    if n <= 1 {
        return zero();
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best: Option<Rational> = None;
    permute(&mut rest, 0, &mut |p| {
        let mut c = &w[0][p[0]] + &w[p[p.len() - 1]][0];
        for k in 1..p.len() {
            c += &w[p[k - 1]][p[k]];
        }
        if best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
    });
    best.unwrap()
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}
