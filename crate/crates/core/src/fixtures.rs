//! Hand-built instances with known shortest tours.

use crate::graph::{Graph, Point};
use crate::rational::{half, rat};
use crate::tour::Tour;

/// Triangle `c1 c2 c3` with spokes `c_i a_i`, inside the 15-cycle
/// `a1 v1 x1 y1 z1 a2 … z3 a1`. Ids: `c_i = i−1`, then `a_i v_i x_i y_i z_i` in blocks of five.
pub fn ring_graph() -> Graph {
    let block = |i: usize| 3 + 5 * i;
    let mut e = vec![(0, 1), (1, 2), (0, 2)];
    for i in 0..3 {
        e.push((i, block(i)));
    }
    for k in 0..15 {
        e.push((3 + k, 3 + (k + 1) % 15));
    }
    Graph::new(18, &e).expect("fixture graph")
}

/// The outer cycle plus a half-edge U-turn toward each triangle vertex. Length 18, a 1-tour.
pub fn ring_tour(g: &Graph) -> Tour {
    let mut stops = Vec::new();
    for k in 0..15 {
        let v = 3 + k;
        stops.push(Point::Vertex(v));
        if k % 5 == 0 {
            let c = k / 5;
            stops.push(Point::on_edge(v, c, half()));
            stops.push(Point::Vertex(v));
        }
    }
    stops.push(Point::Vertex(3));
    Tour::new(g, stops).expect("fixture tour")
}

/// `u v x` path into the triangle `x y z`. Ids `u=0 v=1 x=2 y=3 z=4`.
pub fn lollipop_graph() -> Graph {
    Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)]).expect("fixture graph")
}

/// Back and forth between the points at distance 1/3 and 1/6 from `x` on edge `vx`.
/// Length 1/3; shortest at δ = 5/3.
pub fn lollipop_tour(g: &Graph) -> Tour {
    let a = Point::on_edge(2, 1, rat(1, 3));
    let b = Point::on_edge(2, 1, rat(1, 6));
    Tour::new(g, vec![a.clone(), b, a]).expect("fixture tour")
}
