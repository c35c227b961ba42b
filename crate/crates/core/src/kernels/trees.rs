//! Tree-doubling tours: spanning trees of the graph and of point sets.

use super::euler::doubled_tree_walk;
use super::tsp::mst;
use crate::graph::{Graph, Point};
use crate::tour::Tour;
use std::collections::VecDeque;

/// BFS spanning tree from vertex 0, neighbours in increasing order.
pub fn bfs_tree(g: &Graph) -> Vec<(usize, usize)> {
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    let mut q = VecDeque::from([0]);
    let mut tree = Vec::new();
    while let Some(x) = q.pop_front() {
        for &y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                tree.push((x, y));
                q.push_back(y);
            }
        }
    }
    tree
}

/// Doubled spanning tree walked from vertex 0; length `2n−2`.
pub fn spanning_double_tour(g: &Graph) -> Tour {
    if g.n() == 1 {
        return Tour::single(Point::Vertex(0));
    }
    let walk = doubled_tree_walk(g.n(), &bfs_tree(g), 0);
    Tour::new(g, walk.into_iter().map(Point::Vertex).collect()).expect("tree walk is a tour")
}

/// Walks the tree on `points` (edges index into `points`) twice around and
/// expands each hop into a shortest walk. Stops at every listed point.
pub fn tree_tour(g: &Graph, points: &[Point], tree: &[(usize, usize)]) -> Tour {
    assert!(!points.is_empty(), "need at least one point");
    if points.len() == 1 {
        return Tour::single(points[0].clone());
    }
    let order = doubled_tree_walk(points.len(), tree, 0);
    let mut stops: Vec<Point> = vec![points[order[0]].clone()];
    for w in order.windows(2) {
        for p in g.shortest_walk(&points[w[0]], &points[w[1]]).into_iter().skip(1) {
            if stops.last() != Some(&p) {
                stops.push(p);
            }
        }
    }
    Tour::new(g, stops).expect("expanded tree walk is a tour")
}

/// Tour through all `points` along a minimum spanning tree of their metric closure.
pub fn connect_points_tour(g: &Graph, points: &[Point]) -> Tour {
    let w: Vec<Vec<_>> = points.iter().map(|p| points.iter().map(|q| g.distance(p, q)).collect()).collect();
    let (tree, _) = mst(&w);
    tree_tour(g, points, &tree)
}
