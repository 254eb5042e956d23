//! Dense two-phase simplex over arbitrary-precision rationals.
//!
//! Solves `min c·x` subject to `A x = b`, `x >= 0`. Bland's rule on both
//! phases, so it terminates on degenerate transportation polytopes. Only
//! meant for small oracle problems; every pivot touches the whole tableau.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: BigRational, x: Vec<BigRational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows x (columns + 1); the last column is the right-hand side
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, row: usize) -> &BigRational {
        self.rows[row].last().expect("non-empty row")
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let factor = self.rows[row][col].clone();
        for entry in self.rows[row].iter_mut() {
            *entry /= &factor;
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let scale = other[col].clone();
            for (entry, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry -= &scale * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs of `cost` for the current basis.
    fn reduced_costs(&self, cost: &[BigRational]) -> Vec<BigRational> {
        let mut reduced = cost.to_vec();
        for (row, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, r) in reduced.iter_mut().enumerate() {
                let a = &self.rows[row][j];
                if !a.is_zero() {
                    *r -= cb * a;
                }
            }
        }
        reduced
    }

    /// Runs simplex iterations over columns `0..allowed`. Returns false on unboundedness.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> bool {
        loop {
            let reduced = self.reduced_costs(cost);
            let Some(entering) = (0..allowed).find(|&j| reduced[j].is_negative()) else {
                return true;
            };
            let mut leaving: Option<(usize, BigRational)> = None;
            for row in 0..self.rows.len() {
                let a = &self.rows[row][entering];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(row) / a;
                let better = match &leaving {
                    None => true,
                    Some((best_row, best)) => {
                        ratio < *best || (ratio == *best && self.basis[row] < self.basis[*best_row])
                    }
                };
                if better {
                    leaving = Some((row, ratio));
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, entering),
                None => return false,
            }
        }
    }
}

pub fn minimize(cost: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let vars = cost.len();
    let m = a.len();
    let width = vars + m + 1;

    // Phase I: one artificial per row, rows sign-normalized so b >= 0.
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut t = vec![BigRational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = if flip { -v.clone() } else { v.clone() };
        }
        t[vars + i] = BigRational::from_integer(BigInt::from(1));
        t[width - 1] = if flip { -rhs.clone() } else { rhs.clone() };
        rows.push(t);
    }
    let mut tableau = Tableau {
        rows,
        basis: (vars..vars + m).collect(),
    };
    let mut phase_one = vec![BigRational::zero(); width - 1];
    for c in phase_one.iter_mut().skip(vars) {
        *c = BigRational::from_integer(BigInt::from(1));
    }
    tableau.optimize(&phase_one, width - 1);
    let infeasibility: BigRational = tableau
        .basis
        .iter()
        .enumerate()
        .filter(|&(_, &col)| col >= vars)
        .map(|(row, _)| tableau.rhs(row).clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut row = 0;
    while row < tableau.rows.len() {
        if tableau.basis[row] >= vars {
            if let Some(col) = (0..vars).find(|&j| !tableau.rows[row][j].is_zero()) {
                tableau.pivot(row, col);
            } else {
                tableau.rows.remove(row);
                tableau.basis.remove(row);
                continue;
            }
        }
        row += 1;
    }

    let mut phase_two = cost.to_vec();
    phase_two.extend(std::iter::repeat_n(BigRational::zero(), m));
    if !tableau.optimize(&phase_two, vars) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); vars];
    for (row, &col) in tableau.basis.iter().enumerate() {
        x[col] = tableau.rhs(row).clone();
    }
    let value = x.iter().zip(cost).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_lp() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let cost = vec![q(-1, 1), q(-1, 1), q(0, 1), q(0, 1)];
        let a = vec![
            vec![q(1, 1), q(2, 1), q(1, 1), q(0, 1)],
            vec![q(3, 1), q(1, 1), q(0, 1), q(1, 1)],
        ];
        let b = vec![q(4, 1), q(6, 1)];
        match minimize(&cost, &a, &b) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, q(-14, 5));
                assert_eq!((x[0].clone(), x[1].clone()), (q(8, 5), q(6, 5)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let a = vec![vec![q(1, 1), q(1, 1)]];
        assert_eq!(minimize(&[q(1, 1), q(1, 1)], &a, &[q(-1, 1)]), LpOutcome::Infeasible);
        let a = vec![vec![q(1, 1), q(-1, 1)]];
        assert_eq!(minimize(&[q(0, 1), q(-1, 1)], &a, &[q(1, 1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        // 2x2 transportation problem: the four marginal rows have rank 3.
        let cost = vec![q(0, 1), q(1, 1), q(1, 1), q(0, 1)];
        let a = vec![
            vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1), q(1, 1)],
            vec![q(1, 1), q(0, 1), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(0, 1), q(1, 1)],
        ];
        let b = vec![q(1, 2), q(1, 2), q(1, 3), q(2, 3)];
        match minimize(&cost, &a, &b) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1, 6)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
