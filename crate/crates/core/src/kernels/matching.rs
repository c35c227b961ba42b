//! Minimum-weight perfect matching on complete graphs with rational weights.

use super::blossom::max_weight_matching;
use crate::rational::{common_denominator, to_units, zero, Rational};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("odd number of vertices ({0})")]
    OddVertexCount(usize),
    #[error("weights too large for exact integer scaling")]
    Overflow,
}

/// Below this size the subset dynamic program is used.
pub const DP_LIMIT: usize = 12;

/// Pairs `(i,j)` with `i<j`, sorted, and the total weight.
pub type Matching = (Vec<(usize, usize)>, Rational);

/// Dispatches to the exact DP for small inputs and to blossom otherwise.
pub fn min_weight_perfect_matching(w: &[Vec<Rational>]) -> Result<Matching, MatchingError> {
    if w.len() < DP_LIMIT {
        matching_dp(w)
    } else {
        matching_blossom(w)
    }
}

/// Exact subset DP, `O(2^n · n)`.
pub fn matching_dp(w: &[Vec<Rational>]) -> Result<Matching, MatchingError> {
    let n = w.len();
    if n % 2 == 1 {
        return Err(MatchingError::OddVertexCount(n));
    }
    if n == 0 {
        return Ok((Vec::new(), zero()));
    }
    assert!(n <= 24, "DP matching is for small inputs");
    let full = (1usize << n) - 1;
    let mut best: Vec<Option<Rational>> = vec![None; 1 << n];
    let mut choice = vec![0usize; 1 << n];
    best[0] = Some(zero());
    for mask in 1..=full {
        if (mask.count_ones() as usize) % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut bm: Option<Rational> = None;
        let mut bj = 0;
        let mut r = rest;
        while r != 0 {
            let j = r.trailing_zeros() as usize;
            r &= r - 1;
            if let Some(sub) = &best[rest & !(1 << j)] {
                let c = sub + &w[i][j];
                if bm.as_ref().is_none_or(|b| c < *b) {
                    bm = Some(c);
                    bj = j;
                }
            }
        }
        best[mask] = bm;
        choice[mask] = bj;
    }
    let mut pairs = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let j = choice[mask];
        pairs.push((i, j));
        mask &= !(1 << i) & !(1 << j);
    }
    pairs.sort();
    Ok((pairs, best[full].clone().unwrap()))
}

/// Blossom on `C − w` with maximum cardinality.
pub fn matching_blossom(w: &[Vec<Rational>]) -> Result<Matching, MatchingError> {
    let n = w.len();
    if n % 2 == 1 {
        return Err(MatchingError::OddVertexCount(n));
    }
    if n == 0 {
        return Ok((Vec::new(), zero()));
    }
    let all: Vec<&Rational> = w.iter().flatten().collect();
    let scale = common_denominator(all.iter().copied()).ok_or(MatchingError::Overflow)?;
    let mut iw = vec![vec![0i128; n]; n];
    let mut maxw = 0i128;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                iw[i][j] = to_units(&w[i][j], scale).ok_or(MatchingError::Overflow)? as i128;
                maxw = maxw.max(iw[i][j]);
            }
        }
    }
    let c = maxw + 1;
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, c - iw[i][j]));
        }
    }
    let mate = max_weight_matching(n, &edges, true);
    let mut pairs = Vec::new();
    let mut total = zero();
    for (i, m) in mate.iter().enumerate() {
        let j = m.expect("complete graph of even order has a perfect matching");
        if i < j {
            pairs.push((i, j));
            total += &w[i][j];
        }
    }
    Ok((pairs, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn mat(n: usize, f: impl Fn(usize, usize) -> Rational) -> Vec<Vec<Rational>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { zero() } else { f(i.min(j), i.max(j)) }).collect()).collect()
    }

    #[test]
    fn two_vertices() {
        let w = mat(2, |_, _| int(5));
        assert_eq!(matching_dp(&w).unwrap(), (vec![(0, 1)], int(5)));
        assert_eq!(matching_blossom(&w).unwrap(), (vec![(0, 1)], int(5)));
    }

    #[test]
    fn unique_optimum_of_four() {
        // (0,3)+(1,2) = 1+1/2 is the unique cheapest pairing
        let w = mat(4, |i, j| match (i, j) {
            (0, 3) => int(1),
            (1, 2) => rat(1, 2),
            _ => int(3),
        });
        let exp = (vec![(0, 3), (1, 2)], rat(3, 2));
        assert_eq!(matching_dp(&w).unwrap(), exp);
        assert_eq!(matching_blossom(&w).unwrap(), exp);
    }

    #[test]
    fn k4_unit() {
        let w = mat(4, |_, _| int(1));
        assert_eq!(min_weight_perfect_matching(&w).unwrap().1, int(2));
    }

    #[test]
    fn odd_rejected() {
        let w = mat(3, |_, _| int(1));
        assert_eq!(matching_dp(&w), Err(MatchingError::OddVertexCount(3)));
        assert_eq!(matching_blossom(&w), Err(MatchingError::OddVertexCount(3)));
    }
}
