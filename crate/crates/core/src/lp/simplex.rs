//! Two-phase tableau simplex over exact rationals with Bland's rule.

use super::{LpInstance, LpOutcome, LpSolution};
use crate::error::{Error, Result};
use crate::numerics::Rational;

/// Pivot budget per phase. Bland's rule cannot cycle, so reaching it means a bug.
pub const SIMPLEX_PIVOT_CAP: usize = 100_000;

/// Outcome plus the number of pivots used across both phases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexRun {
    pub outcome: LpOutcome,
    pub pivots: usize,
}

struct Tableau {
    /// `rows[r]` holds the coefficients of every column followed by the rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    columns: usize,
    pivots: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.columns]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (x, y) in other.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &factor * y;
                }
            }
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Maximises `cost · x` over columns `0..allowed` starting from the current
    /// feasible basis.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Result<PhaseEnd> {
        let start = self.pivots;
        loop {
            if self.pivots - start >= SIMPLEX_PIVOT_CAP {
                return Err(Error::RetryExhausted {
                    what: "simplex pivots".into(),
                    attempts: SIMPLEX_PIVOT_CAP,
                });
            }
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[r][j].is_zero() {
                        reduced = reduced - &cost[b] * &self.rows[r][j];
                    }
                }
                reduced.is_positive()
            });
            let Some(col) = entering else {
                return Ok(PhaseEnd::Optimal);
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leaving {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return Ok(PhaseEnd::Unbounded);
            };
            self.pivot(row, col);
        }
    }
}

/// Solves `max c·x` subject to `Ax = b`, `x ≥ 0`.
pub fn simplex_solve(lp: &LpInstance) -> Result<LpOutcome> {
    simplex_run(lp).map(|run| run.outcome)
}

pub fn simplex_run(lp: &LpInstance) -> Result<SimplexRun> {
    let n = lp.num_vars();
    let m = lp.num_rows();
    let columns = n + m;
    let rows = (0..m)
        .map(|r| {
            let flip = lp.rhs[r].is_negative();
            let sign = |x: &Rational| if flip { -x } else { x.clone() };
            let mut row: Vec<Rational> = lp.rows[r].iter().map(sign).collect();
            row.extend((0..m).map(|a| if a == r { Rational::one() } else { Rational::zero() }));
            row.push(sign(&lp.rhs[r]));
            row
        })
        .collect();
    let mut t = Tableau {
        rows,
        basis: (n..columns).collect(),
        columns,
        pivots: 0,
    };

    let phase1_cost: Vec<Rational> = (0..columns)
        .map(|j| if j < n { Rational::zero() } else { -Rational::one() })
        .collect();
    t.run(&phase1_cost, columns)?;
    let infeasibility: Rational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= n)
        .map(|(r, _)| t.rhs(r).clone())
        .sum();
    if infeasibility.is_positive() {
        return Ok(SimplexRun {
            outcome: LpOutcome::Infeasible,
            pivots: t.pivots,
        });
    }

    // Artificial columns still basic sit at zero; swap them out or drop the
    // redundant row.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => t.pivot(r, j),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut cost = lp.objective.clone();
    cost.resize(columns, Rational::zero());
    let outcome = match t.run(&cost, n)? {
        PhaseEnd::Unbounded => LpOutcome::Unbounded,
        PhaseEnd::Optimal => {
            let solution = t
                .basis
                .iter()
                .enumerate()
                .filter(|(r, _)| !t.rhs(*r).is_zero())
                .map(|(r, &b)| (b, t.rhs(r).clone()))
                .collect();
            let value = lp.objective_value(&solution);
            LpOutcome::Optimal(LpSolution { value, solution })
        }
    };
    Ok(SimplexRun {
        outcome,
        pivots: t.pivots,
    })
}
