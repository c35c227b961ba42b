//! Chinese Postman tours through a T-join on the odd-degree vertices.

use super::euler::Multigraph;
use super::matching::min_weight_perfect_matching;
use crate::graph::{Graph, Point};
use crate::rational::int;
use crate::tour::Tour;

/// Multiplicity of each edge (indexed like `g.edges()`) in a minimum postman walk.
pub fn postman_multiplicities(g: &Graph) -> Vec<u32> {
    let mut mult = vec![1u32; g.m()];
    let odd: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) % 2 == 1).collect();
    if odd.is_empty() {
        return mult;
    }
    let w: Vec<Vec<_>> = odd.iter().map(|&a| odd.iter().map(|&b| int(g.hops(a, b) as i64)).collect()).collect();
    let (pairs, _) = min_weight_perfect_matching(&w).expect("odd-degree vertices come in pairs");
    for (i, j) in pairs {
        for step in g.shortest_path(odd[i], odd[j]).windows(2) {
            mult[g.edge_index(step[0], step[1]).unwrap()] += 1;
        }
    }
    // a duplicated path may run over an edge twice more; parity is all that matters
    for m in mult.iter_mut() {
        if *m > 2 {
            *m -= 2;
        }
    }
    mult
}

/// Shortest closed walk traversing every edge, as an integral tour from vertex 0.
pub fn chinese_postman_tour(g: &Graph) -> Tour {
    if g.m() == 0 {
        return Tour::single(Point::Vertex(0));
    }
    let mult = postman_multiplicities(g);
    let mut mg = Multigraph::new(g.n());
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        for _ in 0..mult[k] {
            mg.add_edge(a, b);
        }
    }
    let walk = mg.euler_tour(0).expect("T-join makes every degree even");
    Tour::new(g, walk.into_iter().map(Point::Vertex).collect()).expect("Euler walk is a tour")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(chinese_postman_tour(&k3).length(&k3), int(3));
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(chinese_postman_tour(&p3).length(&p3), int(4));
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(chinese_postman_tour(&k4).length(&k4), int(8));
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!(chinese_postman_tour(&k1).alpha(), 0);
    }
}
