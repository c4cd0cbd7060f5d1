//! Exact feasibility of `{x >= 0 : A x = b}` by a phase-one simplex method.
//!
//! Dense tableau over `BigRational`, one artificial variable per row, and
//! Bland's rule for both the entering and leaving variable, so the method
//! terminates without cycling.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

struct Tableau {
    /// `rows[i]` holds coefficients for all columns followed by the rhs.
    rows: Vec<Vec<BigRational>>,
    /// Phase-one reduced costs followed by minus the objective value.
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn new(a: &[Vec<BigRational>], b: &[BigRational]) -> Self {
        let m = a.len();
        let nvars = a.first().map_or(0, Vec::len);
        let ncols = nvars + m;
        let mut rows = Vec::with_capacity(m);
        for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
            // Flip rows with negative rhs so the artificial basis is feasible.
            let flip = rhs.is_negative();
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|v| if flip { -v.clone() } else { v.clone() })
                .collect();
            r.extend((0..m).map(|k| {
                if k == i {
                    BigRational::from_integer(1.into())
                } else {
                    BigRational::zero()
                }
            }));
            r.push(if flip { -rhs.clone() } else { rhs.clone() });
            rows.push(r);
        }
        // Minimizing the sum of artificials: reduced cost of column j is
        // minus the column sum over original rows; artificials start at 0.
        let mut cost = vec![BigRational::zero(); ncols + 1];
        for r in &rows {
            for j in 0..nvars {
                cost[j] -= &r[j];
            }
            cost[ncols] -= &r[ncols];
        }
        Tableau {
            rows,
            cost,
            basis: (nvars..ncols).collect(),
            ncols,
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs phase one to optimality; returns the optimal artificial sum.
    fn solve(&mut self) -> BigRational {
        loop {
            let Some(col) = (0..self.ncols).find(|&j| self.cost[j].is_negative()) else {
                return -self.cost[self.ncols].clone();
            };
            let mut best: Option<(usize, BigRational)> = None;
            for (i, r) in self.rows.iter().enumerate() {
                if !r[col].is_positive() {
                    continue;
                }
                let ratio = &r[self.ncols] / &r[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            // Phase one is bounded below by 0, so an entering column always
            // has a positive entry.
            let (row, _) = best.expect("phase-one objective is bounded");
            self.pivot(row, col);
        }
    }
}

/// Whether some `x >= 0` satisfies `A x = b` exactly.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    if a.is_empty() {
        return true;
    }
    Tableau::new(a, b).solve().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn simple_systems() {
        // x + y = 1
        assert!(feasible(&mat(&[&[1, 1]]), &[q(1)]));
        // x - y = -1 (flipped row)
        assert!(feasible(&mat(&[&[1, -1]]), &[q(-1)]));
        // x + y = -1 has no nonnegative solution
        assert!(!feasible(&mat(&[&[1, 1]]), &[q(-1)]));
        // x = 1, x = 2
        assert!(!feasible(&mat(&[&[1], &[1]]), &[q(1), q(2)]));
        // 2x = 1 needs a fractional solution
        assert!(feasible(&mat(&[&[2]]), &[q(1)]));
        assert!(feasible(&[], &[]));
    }

    #[test]
    fn redundant_rows_are_fine() {
        let a = mat(&[&[1, 1, 0], &[2, 2, 0], &[0, 1, 1]]);
        assert!(feasible(&a, &[q(1), q(2), q(3)]));
        assert!(!feasible(&a, &[q(1), q(3), q(3)]));
    }

    #[test]
    fn degenerate_pivots_terminate() {
        // A classic cycling-prone degenerate system, posed as feasibility.
        let a = mat(&[
            &[1, 0, 0, 1, -2, 10, -2],
            &[0, 1, 0, -1, 2, -10, 2],
            &[0, 0, 1, 0, 1, 0, 0],
        ]);
        assert!(feasible(&a, &[q(0), q(0), q(1)]));
    }
}
