//! Instance families. Randomized ones take a caller-supplied RNG.

use crate::graph::Graph;
use rand::Rng;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GenError {
    #[error("{family} needs n >= {min}")]
    TooFew { family: &'static str, min: usize },
    #[error("edge probability must lie in (0,1]")]
    BadProbability,
    #[error("enumeration of all connected graphs is limited to n <= {0}")]
    TooLarge(usize),
}

pub const ENUMERATION_LIMIT: usize = 6;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("generated graphs are simple and connected")
}

pub fn path(n: usize) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::TooFew { family: "path", min: 1 });
    }
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(build(n, &e))
}

pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::TooFew { family: "cycle", min: 3 });
    }
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(build(n, &e))
}

/// Center 0 with `n−1` leaves.
pub fn star(n: usize) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::TooFew { family: "star", min: 1 });
    }
    let e: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Ok(build(n, &e))
}

pub fn complete(n: usize) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::TooFew { family: "complete", min: 1 });
    }
    let mut e = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            e.push((a, b));
        }
    }
    Ok(build(n, &e))
}

/// Uniformly random labeled tree via a Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::TooFew { family: "tree", min: 1 });
    }
    if n <= 2 {
        return path(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut deg = vec![1usize; n];
    for &x in &seq {
        deg[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &seq {
        let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
        edges.push((leaf, x));
        deg[leaf] -= 1;
        deg[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Ok(build(n, &edges))
}

/// G(n,p) resampled until connected.
pub fn gnp_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::TooFew { family: "gnp-connected", min: 1 });
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(GenError::BadProbability);
    }
    loop {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    e.push((a, b));
                }
            }
        }
        if let Ok(g) = Graph::new(n, &e) {
            return Ok(g);
        }
    }
}

/// One representative per isomorphism class of connected graphs on `n` vertices,
/// each in its lexicographically smallest labeling.
pub fn all_connected(n: usize) -> Result<Vec<Graph>, GenError> {
    if n == 0 {
        return Err(GenError::TooFew { family: "all-connected-n", min: 1 });
    }
    if n > ENUMERATION_LIMIT {
        return Err(GenError::TooLarge(ENUMERATION_LIMIT));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut bit = vec![vec![0usize; n]; n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        bit[a][b] = i;
        bit[b][a] = i;
    }
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if edges.len() + 1 < n || !connected(n, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| edges.iter().fold(0u32, |acc, &(a, b)| acc | 1 << bit[p[a]][p[b]]))
            .min()
            .unwrap();
        seen.insert(canon);
    }
    Ok(seen
        .into_iter()
        .map(|mask| {
            let e: Vec<_> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            build(n, &e)
        })
        .collect())
}

/// Connected graphs on 1..=max_n vertices, smallest first.
pub fn all_connected_up_to(max_n: usize) -> Result<Vec<Graph>, GenError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(all_connected(n)?);
    }
    Ok(out)
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut parts = n;
    for &(a, b) in edges {
        let (x, y) = (find(&mut parent, a), find(&mut parent, b));
        if x != y {
            parent[x] = y;
            parts -= 1;
        }
    }
    parts == 1
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap(n, &mut cur, &mut out);
    out
}

fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, a, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap(k - 1, a, out);
}
