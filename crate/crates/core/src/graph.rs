//! Graphs, points on edges, and the continuous metric.

use crate::rational::{int, one, zero, Rational};
use num_traits::{One, Zero};
use std::collections::{HashMap, VecDeque};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("position {0} outside [0,1]")]
    PositionOutOfRange(String),
}

/// Simple connected undirected graph with unit edge lengths.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    index: HashMap<(usize, usize), usize>,
    dist: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds a graph on `0..n`. Edges may be given in either orientation.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut index = HashMap::new();
        for &(a, b) in edge_list {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if index.contains_key(&e) {
                return Err(GraphError::ParallelEdge(e.0, e.1));
            }
            index.insert(e, usize::MAX);
            edges.push(e);
        }
        edges.sort();
        for (i, e) in edges.iter().enumerate() {
            index.insert(*e, i);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort();
        }
        let mut dist = Vec::with_capacity(n);
        for s in 0..n {
            let d = bfs(&adj, s);
            if d.contains(&u32::MAX) {
                return Err(GraphError::Disconnected);
            }
            dist.push(d);
        }
        Ok(Graph { n, edges, adj, index, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u,v)` with `u<v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.index.contains_key(&(a.min(b), a.max(b)))
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a.min(b), a.max(b))).copied()
    }

    /// Hop distance.
    pub fn hops(&self, a: usize, b: usize) -> u32 {
        self.dist[a][b]
    }

    pub fn vertex_distance(&self, a: usize, b: usize) -> Rational {
        int(self.dist[a][b] as i64)
    }

    /// All-pairs hop distances as rationals.
    pub fn vertex_distances(&self) -> Vec<Vec<Rational>> {
        self.dist
            .iter()
            .map(|row| row.iter().map(|&d| int(d as i64)).collect())
            .collect()
    }

    /// Shortest vertex path from `a` to `b`, preferring low ids at each step.
    pub fn shortest_path(&self, a: usize, b: usize) -> Vec<usize> {
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            let want = self.dist[cur][b] - 1;
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| self.dist[w][b] == want)
                .expect("connected graph has a descending neighbour");
            path.push(cur);
        }
        path
    }

    /// Canonical point `p(u,v,λ)`.
    pub fn point(&self, u: usize, v: usize, lambda: &Rational) -> Result<Point, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v));
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        if *lambda < zero() || *lambda > one() {
            return Err(GraphError::PositionOutOfRange(lambda.to_string()));
        }
        Ok(Point::on_edge(u, v, lambda.clone()))
    }

    pub fn vertex(&self, v: usize) -> Result<Point, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v));
        }
        Ok(Point::Vertex(v))
    }

    /// Checks that a point refers to this graph.
    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Vertex(v) => *v < self.n,
            Point::Interior { u, v, lambda } => {
                self.has_edge(*u, *v) && u < v && *lambda > zero() && *lambda < one()
            }
        }
    }

    /// `d(p,q)` in the continuous graph.
    pub fn distance(&self, p: &Point, q: &Point) -> Rational {
        if let (Point::Interior { u: a, v: b, lambda: x }, Point::Interior { u: c, v: d, lambda: y }) = (p, q) {
            if a == c && b == d {
                // the direct value is never beaten by leaving the edge
                return if x >= y { x - y } else { y - x };
            }
        }
        let mut best: Option<Rational> = None;
        for (a, da) in p.anchors() {
            for (b, db) in q.anchors() {
                let cand = &da + &db + int(self.dist[a][b] as i64);
                if best.as_ref().is_none_or(|bv| cand < *bv) {
                    best = Some(cand);
                }
            }
        }
        best.expect("points have anchors")
    }

    /// The edge on which both points lie, if any.
    pub fn common_edge(&self, p: &Point, q: &Point) -> Option<(usize, usize)> {
        match (p, q) {
            (Point::Vertex(a), Point::Vertex(b)) => {
                if self.has_edge(*a, *b) {
                    Some((*a.min(b), *a.max(b)))
                } else {
                    None
                }
            }
            (Point::Vertex(a), Point::Interior { u, v, .. }) | (Point::Interior { u, v, .. }, Point::Vertex(a)) => {
                if a == u || a == v {
                    Some((*u, *v))
                } else {
                    None
                }
            }
            (Point::Interior { u, v, .. }, Point::Interior { u: c, v: d, .. }) => {
                if u == c && v == d {
                    Some((*u, *v))
                } else {
                    None
                }
            }
        }
    }

    /// Shortest walk from `p` to `q` as a list of stops (both ends included).
    pub fn shortest_walk(&self, p: &Point, q: &Point) -> Vec<Point> {
        if p == q {
            return vec![p.clone()];
        }
        if self.common_edge(p, q).is_some() {
            return vec![p.clone(), q.clone()];
        }
        let mut best: Option<(Rational, usize, usize)> = None;
        for (a, da) in p.anchors() {
            for (b, db) in q.anchors() {
                let cand = &da + &db + int(self.dist[a][b] as i64);
                if best.as_ref().is_none_or(|(bv, _, _)| cand < *bv) {
                    best = Some((cand, a, b));
                }
            }
        }
        let (_, a, b) = best.expect("anchors");
        let mut out = vec![p.clone()];
        for w in self.shortest_path(a, b) {
            let pw = Point::Vertex(w);
            if out.last() != Some(&pw) {
                out.push(pw);
            }
        }
        if out.last() != Some(q) {
            out.push(q.clone());
        }
        out
    }

    /// Leaves (degree one).
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<u32> {
    let mut d = vec![u32::MAX; adj.len()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if d[y] == u32::MAX {
                d[y] = d[x] + 1;
                q.push_back(y);
            }
        }
    }
    d
}

/// A point of the continuous graph. Interior points keep `u<v` and `0<λ<1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Vertex(usize),
    Interior { u: usize, v: usize, lambda: Rational },
}

impl Point {
    /// `p(u,v,λ)` without a graph check. Caller guarantees `λ∈[0,1]`.
    pub fn on_edge(u: usize, v: usize, lambda: Rational) -> Point {
        if lambda.is_zero() {
            return Point::Vertex(u);
        }
        if lambda.is_one() {
            return Point::Vertex(v);
        }
        if u < v {
            Point::Interior { u, v, lambda }
        } else {
            Point::Interior { u: v, v: u, lambda: one() - lambda }
        }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, Point::Vertex(_))
    }

    pub fn as_vertex(&self) -> Option<usize> {
        match self {
            Point::Vertex(v) => Some(*v),
            _ => None,
        }
    }

    /// Endpoints with their offsets: the ways out of this point.
    pub fn anchors(&self) -> Vec<(usize, Rational)> {
        match self {
            Point::Vertex(v) => vec![(*v, zero())],
            Point::Interior { u, v, lambda } => vec![(*u, lambda.clone()), (*v, one() - lambda)],
        }
    }

    /// Whether the point lies on edge `{a,b}` (vertices lie on their incident edges).
    pub fn lies_on(&self, a: usize, b: usize) -> bool {
        match self {
            Point::Vertex(v) => *v == a || *v == b,
            Point::Interior { u, v, .. } => (*u == a && *v == b) || (*u == b && *v == a),
        }
    }

    /// Position measured from `a` on edge `{a,b}`. Caller checks `lies_on`.
    pub fn position_from(&self, a: usize, b: usize) -> Rational {
        match self {
            Point::Vertex(v) => {
                if *v == a {
                    zero()
                } else {
                    debug_assert_eq!(*v, b);
                    one()
                }
            }
            Point::Interior { u, lambda, .. } => {
                if *u == a {
                    lambda.clone()
                } else {
                    one() - lambda
                }
            }
        }
    }

    /// The edge hosting an interior point.
    pub fn edge(&self) -> Option<(usize, usize)> {
        match self {
            Point::Interior { u, v, .. } => Some((*u, *v)),
            _ => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Vertex(v) => write!(f, "{v}"),
            Point::Interior { u, v, lambda } => write!(f, "p({u},{v},{lambda})"),
        }
    }
}
