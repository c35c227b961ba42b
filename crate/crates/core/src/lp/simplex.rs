//! Dual simplex over exact rationals for `min c·z` with `z ≥ 0`, `c ≥ 0`, and
//! rows of the form `a·z ≥ b`. Rows can be appended after a solve and the
//! next solve restarts from the previous basis.

use crate::rational::{zero, Rational};
use num_traits::{Signed, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SimplexError {
    #[error("the linear program is infeasible")]
    Infeasible,
}

/// Dictionary `x_B = β + Σ α_j x_j` over the nonbasic variables.
#[derive(Clone, Debug)]
pub struct DualSimplex {
    nvars: usize,
    /// Variable id of each nonbasic column.
    nonbasic: Vec<usize>,
    /// Variable id of each row's basic variable.
    basic: Vec<usize>,
    beta: Vec<Rational>,
    alpha: Vec<Vec<Rational>>,
    obj_const: Rational,
    /// Reduced costs, one per nonbasic column; kept nonnegative.
    reduced: Vec<Rational>,
    next_id: usize,
    pivots: usize,
}

impl DualSimplex {
    /// `c` must be nonnegative so that the all-zero start is dual feasible.
    pub fn new(c: &[Rational]) -> DualSimplex {
        assert!(c.iter().all(|x| !x.is_negative()), "costs must be nonnegative");
        let n = c.len();
        DualSimplex {
            nvars: n,
            nonbasic: (0..n).collect(),
            basic: Vec::new(),
            beta: Vec::new(),
            alpha: Vec::new(),
            obj_const: zero(),
            reduced: c.to_vec(),
            next_id: n,
            pivots: 0,
        }
    }

    /// Adds `Σ a_j z_j ≥ b` through a fresh surplus variable.
    pub fn add_row(&mut self, a: &[(usize, Rational)], b: &Rational) {
        let cols = self.nonbasic.len();
        let mut beta = -b.clone();
        let mut row = vec![zero(); cols];
        for (j, coef) in a {
            assert!(*j < self.nvars);
            if let Some(p) = self.nonbasic.iter().position(|x| x == j) {
                row[p] += coef;
            } else {
                let r = self.basic.iter().position(|x| x == j).expect("variable is basic or nonbasic");
                beta += coef * &self.beta[r];
                for (q, v) in self.alpha[r].iter().enumerate() {
                    if !v.is_zero() {
                        row[q] += coef * v;
                    }
                }
            }
        }
        self.basic.push(self.next_id);
        self.next_id += 1;
        self.beta.push(beta);
        self.alpha.push(row);
    }

    pub fn solve(&mut self) -> Result<(), SimplexError> {
        loop {
            // leaving row: infeasible basic variable with the lowest id
            let r = match (0..self.basic.len()).filter(|&r| self.beta[r].is_negative()).min_by_key(|&r| self.basic[r]) {
                Some(r) => r,
                None => return Ok(()),
            };
            // entering column: minimum ratio d_j / α_rj over α_rj > 0, ties by lowest id
            let mut best: Option<(Rational, usize, usize)> = None;
            for (q, a) in self.alpha[r].iter().enumerate() {
                if a.is_positive() {
                    let ratio = &self.reduced[q] / a;
                    let id = self.nonbasic[q];
                    let better = match &best {
                        None => true,
                        Some((br, _, bid)) => ratio < *br || (ratio == *br && id < *bid),
                    };
                    if better {
                        best = Some((ratio, q, id));
                    }
                }
            }
            let (_, q, _) = best.ok_or(SimplexError::Infeasible)?;
            self.pivot(r, q);
        }
    }

    fn pivot(&mut self, r: usize, q: usize) {
        self.pivots += 1;
        let a = self.alpha[r][q].clone();
        // x_q = (x_B − β_r − Σ_{k≠q} α_rk x_k) / α_rq
        let mut prow: Vec<Rational> = self.alpha[r].iter().map(|v| -v / &a).collect();
        prow[q] = Rational::from_integer(1.into()) / &a;
        let pbeta = -&self.beta[r] / &a;
        for i in 0..self.basic.len() {
            if i == r {
                continue;
            }
            let f = self.alpha[i][q].clone();
            if f.is_zero() {
                continue;
            }
            self.beta[i] += &f * &pbeta;
            for k in 0..prow.len() {
                if k == q {
                    self.alpha[i][k] = &f * &prow[k];
                } else if !prow[k].is_zero() {
                    let add = &f * &prow[k];
                    self.alpha[i][k] += add;
                }
            }
        }
        let f = self.reduced[q].clone();
        if !f.is_zero() {
            self.obj_const += &f * &pbeta;
            for k in 0..prow.len() {
                if k == q {
                    self.reduced[k] = &f * &prow[k];
                } else if !prow[k].is_zero() {
                    let add = &f * &prow[k];
                    self.reduced[k] += add;
                }
            }
        }
        self.alpha[r] = prow;
        self.beta[r] = pbeta;
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[q]);
    }

    pub fn objective(&self) -> Rational {
        self.obj_const.clone()
    }

    /// Values of the structural variables.
    pub fn solution(&self) -> Vec<Rational> {
        let mut z = vec![zero(); self.nvars];
        for (r, &b) in self.basic.iter().enumerate() {
            if b < self.nvars {
                z[b] = self.beta[r].clone();
            }
        }
        z
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn two_variable_cover() {
        // min x + y, x + 2y ≥ 2, 3x + y ≥ 3  → x = 4/5, y = 3/5
        let mut s = DualSimplex::new(&[int(1), int(1)]);
        s.add_row(&[(0, int(1)), (1, int(2))], &int(2));
        s.add_row(&[(0, int(3)), (1, int(1))], &int(3));
        s.solve().unwrap();
        assert_eq!(s.objective(), rat(7, 5));
        assert_eq!(s.solution(), vec![rat(4, 5), rat(3, 5)]);
    }

    #[test]
    fn warm_start_and_upper_bounds() {
        // min x + y with x ≤ 2 written as −x ≥ −2
        let mut s = DualSimplex::new(&[int(1), int(1)]);
        s.add_row(&[(0, int(-1))], &int(-2));
        s.add_row(&[(0, int(1)), (1, int(1))], &int(3));
        s.solve().unwrap();
        assert_eq!(s.objective(), int(3));
        s.add_row(&[(1, int(1))], &int(2));
        s.solve().unwrap();
        assert_eq!(s.objective(), int(3));
        assert!(s.solution()[1] >= int(2));
        s.add_row(&[(0, int(1))], &int(5));
        assert_eq!(s.solve(), Err(SimplexError::Infeasible));
    }
}
