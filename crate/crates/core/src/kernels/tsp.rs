//! Weighted graphs, spanning trees, and TSP on metric closures.

use super::euler::Multigraph;
use super::matching::{min_weight_perfect_matching, MatchingError};
use crate::rational::{common_denominator, to_units, zero, Rational};

/// Undirected weighted graph on `0..n`.
#[derive(Clone, Debug, Default)]
pub struct WeightedGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, Rational)>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> WeightedGraph {
        WeightedGraph { n, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, a: usize, b: usize, w: Rational) {
        assert!(a < self.n && b < self.n && a != b);
        assert!(w >= zero(), "weights are nonnegative");
        self.edges.push((a, b, w));
    }

    /// Shortest-path distances (`None` = unreachable) and next-hop table.
    pub fn closure(&self) -> (Vec<Vec<Option<Rational>>>, Vec<Vec<usize>>) {
        let n = self.n;
        let mut d: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
        let mut next = vec![vec![usize::MAX; n]; n];
        for i in 0..n {
            d[i][i] = Some(zero());
            next[i][i] = i;
        }
        for (a, b, w) in &self.edges {
            let (a, b) = (*a, *b);
            if d[a][b].as_ref().is_none_or(|x| w < x) {
                d[a][b] = Some(w.clone());
                d[b][a] = Some(w.clone());
                next[a][b] = b;
                next[b][a] = a;
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = match &d[i][k] {
                    Some(x) => x.clone(),
                    None => continue,
                };
                for j in 0..n {
                    if let Some(dkj) = &d[k][j] {
                        let c = &dik + dkj;
                        if d[i][j].as_ref().is_none_or(|x| c < *x) {
                            d[i][j] = Some(c);
                            next[i][j] = next[i][k];
                        }
                    }
                }
            }
        }
        (d, next)
    }

    /// Metric closure as a full matrix; panics if disconnected.
    pub fn metric_closure(&self) -> Vec<Vec<Rational>> {
        self.closure()
            .0
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.expect("connected weighted graph")).collect())
            .collect()
    }

    /// Vertex path realizing the closure distance.
    pub fn path(next: &[Vec<usize>], a: usize, b: usize) -> Vec<usize> {
        let mut out = vec![a];
        let mut cur = a;
        while cur != b {
            cur = next[cur][b];
            assert!(cur != usize::MAX, "unreachable");
            out.push(cur);
        }
        out
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TspError {
    #[error("exact TSP limited to {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("weights too large for exact integer scaling")]
    Overflow,
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// Minimum spanning tree of a complete matrix; ties broken by `(w, i, j)`.
pub fn mst(w: &[Vec<Rational>]) -> (Vec<(usize, usize)>, Rational) {
    let n = w.len();
    let mut cand: Vec<(&Rational, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            cand.push((&w[i][j], i, j));
        }
    }
    cand.sort();
    kruskal(n, cand.into_iter().map(|(x, i, j)| (i, j, x.clone())))
}

/// Kruskal over pre-sorted candidate edges.
pub fn kruskal(n: usize, sorted: impl IntoIterator<Item = (usize, usize, Rational)>) -> (Vec<(usize, usize)>, Rational) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let mut out = Vec::new();
    let mut total = zero();
    for (i, j, x) in sorted {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a] = b;
            out.push((i, j));
            total += x;
        }
    }
    (out, total)
}

/// Length of the closed tour `order` (first vertex repeated at the end).
pub fn tour_cost(w: &[Vec<Rational>], order: &[usize]) -> Rational {
    order.windows(2).map(|p| w[p[0]][p[1]].clone()).fold(zero(), |a, b| a + b)
}

pub const HELD_KARP_LIMIT: usize = 16;

/// Exact TSP by subset DP over integer-scaled weights. Returns the closed order and its cost.
pub fn held_karp(w: &[Vec<Rational>]) -> Result<(Vec<usize>, Rational), TspError> {
    let n = w.len();
    if n > HELD_KARP_LIMIT {
        return Err(TspError::TooLarge { n, limit: HELD_KARP_LIMIT });
    }
    if n <= 1 {
        return Ok((vec![0; n], zero()));
    }
    if n == 2 {
        return Ok((vec![0, 1, 0], &w[0][1] + &w[1][0]));
    }
    let scale = common_denominator(w.iter().flatten()).ok_or(TspError::Overflow)?;
    let iw: Vec<Vec<i64>> = w
        .iter()
        .map(|r| r.iter().map(|x| to_units(x, scale).ok_or(TspError::Overflow)).collect())
        .collect::<Result<_, _>>()?;
    // vertex 0 is the fixed start; subsets over 1..n
    let m = n - 1;
    let size = 1usize << m;
    const INF: i64 = i64::MAX / 4;
    let mut dp = vec![INF; size * m];
    let mut par = vec![u8::MAX; size * m];
    for j in 0..m {
        dp[(1 << j) * m + j] = iw[0][j + 1];
    }
    for s in 1..size {
        for j in 0..m {
            if s & (1 << j) == 0 {
                continue;
            }
            let cur = dp[s * m + j];
            if cur >= INF {
                continue;
            }
            let mut rest = !s & (size - 1);
            while rest != 0 {
                let k = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let t = s | (1 << k);
                let c = cur + iw[j + 1][k + 1];
                if c < dp[t * m + k] {
                    dp[t * m + k] = c;
                    par[t * m + k] = j as u8;
                }
            }
        }
    }
    let full = size - 1;
    let (mut bj, mut bc) = (0, INF);
    for j in 0..m {
        let c = dp[full * m + j] + iw[j + 1][0];
        if c < bc {
            bc = c;
            bj = j;
        }
    }
    let mut order = vec![0];
    let mut s = full;
    let mut j = bj;
    loop {
        order.push(j + 1);
        let p = par[s * m + j];
        s &= !(1 << j);
        if p == u8::MAX {
            break;
        }
        j = p as usize;
    }
    order.push(0);
    order.reverse();
    let cost = tour_cost(w, &order);
    debug_assert_eq!(to_units(&cost, scale), Some(bc));
    Ok((order, cost))
}

/// Christofides on a complete metric matrix. Returns the closed order.
pub fn christofides(w: &[Vec<Rational>]) -> Result<Vec<usize>, TspError> {
    let n = w.len();
    if n <= 1 {
        return Ok(vec![0; n]);
    }
    if n == 2 {
        return Ok(vec![0, 1, 0]);
    }
    // 1. spanning tree
    let (tree, _) = mst(w);
    let mut deg = vec![0usize; n];
    for &(a, b) in &tree {
        deg[a] += 1;
        deg[b] += 1;
    }
    // 2. match odd-degree vertices
    let odd: Vec<usize> = (0..n).filter(|&v| deg[v] % 2 == 1).collect();
    let sub: Vec<Vec<Rational>> = odd.iter().map(|&a| odd.iter().map(|&b| w[a][b].clone()).collect()).collect();
    let (pairs, _) = min_weight_perfect_matching(&sub)?;
    // 3. Euler tour of tree + matching
    let mut mg = Multigraph::new(n);
    for &(a, b) in &tree {
        mg.add_edge(a, b);
    }
    for (i, j) in pairs {
        mg.add_edge(odd[i], odd[j]);
    }
    let walk = mg.euler_tour(0).expect("tree plus matching is Eulerian");
    // 4. shortcut repeated vertices
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n + 1);
    for v in walk {
        if !seen[v] {
            seen[v] = true;
            order.push(v);
        }
    }
    order.push(order[0]);
    Ok(order)
}
