//! Edmonds–Karp maximum flow on small integer-capacity networks.

use std::collections::VecDeque;

pub struct FlowNetwork {
    n: usize,
    cap: Vec<Vec<i128>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> FlowNetwork {
        FlowNetwork { n, cap: vec![vec![0; n]; n] }
    }

    pub fn add_undirected(&mut self, a: usize, b: usize, c: i128) {
        self.cap[a][b] += c;
        self.cap[b][a] += c;
    }

    pub fn add_directed(&mut self, a: usize, b: usize, c: i128) {
        self.cap[a][b] += c;
    }

    /// Maximum `s`–`t` flow and the source side of a minimum cut.
    pub fn min_cut(mut self, s: usize, t: usize) -> (i128, Vec<bool>) {
        let mut flow = 0i128;
        loop {
            let mut prev = vec![usize::MAX; self.n];
            prev[s] = s;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for y in 0..self.n {
                    if prev[y] == usize::MAX && self.cap[x][y] > 0 {
                        prev[y] = x;
                        q.push_back(y);
                    }
                }
            }
            if prev[t] == usize::MAX {
                let side = prev.iter().map(|&p| p != usize::MAX).collect();
                return (flow, side);
            }
            let mut push = i128::MAX;
            let mut y = t;
            while y != s {
                let x = prev[y];
                push = push.min(self.cap[x][y]);
                y = x;
            }
            let mut y = t;
            while y != s {
                let x = prev[y];
                self.cap[x][y] -= push;
                self.cap[y][x] += push;
                y = x;
            }
            flow += push;
        }
    }
}
