//! Hierholzer's algorithm on small multigraphs.

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EulerError {
    #[error("vertex {0} has odd degree")]
    OddDegree(usize),
    #[error("edges do not form a single connected component")]
    Disconnected,
}

/// Undirected multigraph on `0..n` used to assemble closed walks.
#[derive(Clone, Debug, Default)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize) -> Multigraph {
        Multigraph { n, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n, "edge endpoint out of range");
        self.edges.push((a, b));
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Closed walk from `start` using every edge once. With no edges the walk is `[start]`.
    pub fn euler_tour(&self, start: usize) -> Result<Vec<usize>, EulerError> {
        let mut inc: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(i);
            if a != b {
                inc[b].push(i);
            } else {
                inc[a].push(i);
            }
        }
        for (v, l) in inc.iter().enumerate() {
            if l.len() % 2 == 1 {
                return Err(EulerError::OddDegree(v));
            }
        }
        if self.edges.is_empty() {
            return Ok(vec![start]);
        }
        if inc[start].is_empty() {
            return Err(EulerError::Disconnected);
        }
        let mut used = vec![false; self.edges.len()];
        let mut ptr = vec![0usize; self.n];
        let mut stack = vec![start];
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        while let Some(&v) = stack.last() {
            let mut advanced = false;
            while ptr[v] < inc[v].len() {
                let e = inc[v][ptr[v]];
                ptr[v] += 1;
                if used[e] {
                    continue;
                }
                used[e] = true;
                let (a, b) = self.edges[e];
                stack.push(if a == v { b } else { a });
                advanced = true;
                break;
            }
            if !advanced {
                out.push(stack.pop().unwrap());
            }
        }
        if used.iter().any(|u| !u) {
            return Err(EulerError::Disconnected);
        }
        out.reverse();
        Ok(out)
    }
}

/// Closed walk around a tree given by `edges`, visiting children in list order
/// (equivalent to an Euler tour of the doubled tree).
pub fn doubled_tree_walk(n: usize, edges: &[(usize, usize)], root: usize) -> Vec<usize> {
    let mut m = Multigraph::new(n);
    for &(a, b) in edges {
        m.add_edge(a, b);
        m.add_edge(a, b);
    }
    m.euler_tour(root).expect("doubled tree is Eulerian and connected")
}
