//! Exact linear programming over the rationals.
//!
//! A small two-phase simplex on dense tableaux in the standard form
//! `maximize c.x subject to A x = b, x >= 0`. Pivots follow Bland's rule
//! (smallest eligible index enters, ties in the ratio test broken by the
//! smallest basic index), which guarantees termination. Every number is an
//! exact [`Rational`], so feasibility and optimality answers are exact and
//! the returned points are genuine certificates.

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
}

/// Maximize `objective . x` subject to `constraints x = rhs`, `x >= 0`.
pub fn maximize(
    constraints: &QMatrix,
    rhs: &[Rational],
    objective: &[Rational],
) -> Result<LpOutcome> {
    let m = constraints.rows();
    let n = constraints.cols();
    if rhs.len() != m {
        return Err(Error::Dimension(format!(
            "{} constraint rows but {} right-hand sides",
            m,
            rhs.len()
        )));
    }
    if objective.len() != n {
        return Err(Error::Dimension(format!(
            "{} variables but {} objective coefficients",
            n,
            objective.len()
        )));
    }

    // Tableau over n original variables plus m artificials, rhs made
    // non-negative so the artificial basis is feasible for phase one.
    let total = n + m;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let negate = rhs[i].is_negative();
        let mut row = Vec::with_capacity(total + 1);
        for j in 0..n {
            let a = constraints[(i, j)].clone();
            row.push(if negate { -a } else { a });
        }
        for k in 0..m {
            row.push(if k == i {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        row.push(if negate { -&rhs[i] } else { rhs[i].clone() });
        rows.push(row);
    }
    let mut tab = Tableau {
        rows,
        basis: (n..total).collect(),
        ncols: total,
    };

    // Phase one: maximize minus the sum of artificials.
    let mut phase1 = vec![Rational::zero(); total];
    for c in phase1.iter_mut().skip(n) {
        *c = Rational::from_int(-1);
    }
    match tab.run(&phase1, total) {
        SimplexEnd::Unbounded => unreachable!("phase-one objective is bounded above by zero"),
        SimplexEnd::Optimal => {}
    }
    if !tab.objective_value(&phase1).is_zero() {
        return Ok(LpOutcome::Infeasible);
    }
    tab.evict_artificials(n);

    // Phase two on the original objective; artificial columns may no longer
    // enter the basis.
    let mut phase2 = objective.to_vec();
    phase2.resize(total, Rational::zero());
    match tab.run(&phase2, n) {
        SimplexEnd::Unbounded => Ok(LpOutcome::Unbounded),
        SimplexEnd::Optimal => {
            let mut point = vec![Rational::zero(); n];
            for (i, &b) in tab.basis.iter().enumerate() {
                if b < n {
                    point[b] = tab.rows[i][tab.ncols].clone();
                }
            }
            let value = objective.iter().zip(&point).map(|(c, x)| c * x).sum();
            Ok(LpOutcome::Optimal { value, point })
        }
    }
}

/// Feasibility of `constraints x = rhs, x >= 0`, with a certificate point.
pub fn feasible_point(constraints: &QMatrix, rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let zero = vec![Rational::zero(); constraints.cols()];
    match maximize(constraints, rhs, &zero)? {
        LpOutcome::Optimal { point, .. } => Ok(Some(point)),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

enum SimplexEnd {
    Optimal,
    Unbounded,
}

struct Tableau {
    /// `m` rows of length `ncols + 1`; the last entry is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    /// Bland-rule simplex for `maximize obj . x`; only columns `< enterable`
    /// may enter the basis.
    fn run(&mut self, obj: &[Rational], enterable: usize) -> SimplexEnd {
        loop {
            let entering = match self.entering_column(obj, enterable) {
                Some(j) => j,
                None => return SimplexEnd::Optimal,
            };
            let leaving = match self.leaving_row(entering) {
                Some(i) => i,
                None => return SimplexEnd::Unbounded,
            };
            self.pivot(leaving, entering);
        }
    }

    /// Smallest column index with strictly positive reduced cost.
    fn entering_column(&self, obj: &[Rational], enterable: usize) -> Option<usize> {
        for j in 0..enterable {
            if self.basis.contains(&j) {
                continue;
            }
            let mut reduced = obj[j].clone();
            for (i, &b) in self.basis.iter().enumerate() {
                if !obj[b].is_zero() && !self.rows[i][j].is_zero() {
                    reduced -= &(&obj[b] * &self.rows[i][j]);
                }
            }
            if reduced.is_positive() {
                return Some(j);
            }
        }
        None
    }

    /// Exact ratio test; ties broken by the smallest basic variable index.
    fn leaving_row(&self, entering: usize) -> Option<usize> {
        let mut best: Option<(Rational, usize)> = None;
        for i in 0..self.rows.len() {
            let coeff = &self.rows[i][entering];
            if !coeff.is_positive() {
                continue;
            }
            let ratio = &self.rows[i][self.ncols] / coeff;
            best = match best {
                None => Some((ratio, i)),
                Some((cur, row)) => {
                    if ratio < cur || (ratio == cur && self.basis[i] < self.basis[row]) {
                        Some((ratio, i))
                    } else {
                        Some((cur, row))
                    }
                }
            };
        }
        best.map(|(_, i)| i)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip().expect("non-zero pivot");
        for x in self.rows[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let factor = self.rows[r][col].clone();
            for j in 0..=self.ncols {
                let t = &self.rows[r][j] - &(&factor * &self.rows[row][j]);
                self.rows[r][j] = t;
            }
        }
        self.basis[row] = col;
    }

    fn objective_value(&self, obj: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &obj[b] * &self.rows[i][self.ncols])
            .sum()
    }

    /// After a zero-value phase one, drive remaining artificial variables out
    /// of the basis; rows that cannot pivot on an original column are
    /// redundant and dropped.
    fn evict_artificials(&mut self, n_original: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < n_original {
                i += 1;
                continue;
            }
            match (0..n_original).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
