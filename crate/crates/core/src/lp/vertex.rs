//! Basic-solution enumeration for programs with at most two equality rows.
//!
//! A basic feasible solution has support at most the number of rows, so
//! trying every support of size 0, 1 and 2 finds every vertex. Columns are
//! scaled to integers first, so each candidate costs a few big-integer
//! products.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{LpInstance, LpOutcome, LpSolution, SparseSolution};
use crate::error::{Error, Result};
use crate::numerics::Rational;

struct Scaled {
    /// `cols[j][r]`: integer column `j` equal to `s_j` times the original.
    cols: Vec<Vec<BigInt>>,
    scale: Vec<BigInt>,
    rhs: Vec<BigInt>,
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a Rational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn integerise(x: &Rational, by: &BigInt) -> BigInt {
    x.numer() * (by / x.denom())
}

fn scale(lp: &LpInstance) -> Scaled {
    let m = lp.num_rows();
    let row_scale: Vec<BigInt> = (0..m)
        .map(|r| lcm_of_denominators(std::iter::once(&lp.rhs[r])))
        .collect();
    let rhs = (0..m).map(|r| integerise(&lp.rhs[r], &row_scale[r])).collect();
    let mut cols = Vec::with_capacity(lp.num_vars());
    let mut scale = Vec::with_capacity(lp.num_vars());
    for j in 0..lp.num_vars() {
        let raw: Vec<Rational> = (0..m)
            .map(|r| &lp.rows[r][j] * Rational::from_bigint(row_scale[r].clone()))
            .collect();
        let s = lcm_of_denominators(raw.iter());
        cols.push(raw.iter().map(|x| integerise(x, &s)).collect());
        scale.push(s);
    }
    Scaled { cols, scale, rhs }
}

fn ratio(num: &BigInt, den: &BigInt) -> Rational {
    Rational::from_bigints(num.clone(), den.clone()).expect("nonzero determinant")
}

/// Every optimal basic feasible solution, in lexicographic support order.
/// An empty result means the program is infeasible.
///
/// Requires at most two rows and one row whose coefficients are all strictly
/// positive, which bounds the feasible region.
pub fn optimal_vertices(lp: &LpInstance) -> Result<Vec<LpSolution>> {
    let m = lp.num_rows();
    if m == 0 || m > 2 {
        return Err(Error::Usage(format!(
            "vertex enumeration handles one or two equality rows, got {m}"
        )));
    }
    if !lp.rows.iter().any(|row| row.iter().all(Rational::is_positive)) {
        return Err(Error::Usage(
            "vertex enumeration needs a row with all coefficients positive".into(),
        ));
    }
    let sc = scale(lp);
    let n = lp.num_vars();
    let solution_of = |entries: Vec<(usize, Rational)>| -> LpSolution {
        let solution: SparseSolution = entries.into_iter().collect();
        LpSolution {
            value: lp.objective_value(&solution),
            solution,
        }
    };

    let mut candidates: Vec<LpSolution> = Vec::new();
    if sc.rhs.iter().all(Zero::is_zero) {
        candidates.push(solution_of(Vec::new()));
    }
    for j in 0..n {
        let col = &sc.cols[j];
        let Some(r) = (0..m).find(|&r| !col[r].is_zero()) else {
            continue;
        };
        let proportional = (0..m).all(|q| &col[q] * &sc.rhs[r] == &col[r] * &sc.rhs[q]);
        let x = ratio(&sc.rhs[r], &col[r]);
        if proportional && x.is_positive() {
            candidates.push(solution_of(vec![(j, x * Rational::from_bigint(sc.scale[j].clone()))]));
        }
    }
    if m == 2 {
        let pairs: Vec<LpSolution> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let sc = &sc;
                let feasible = (i + 1..n).filter_map(move |j| {
                    let (a, b) = (&sc.cols[i], &sc.cols[j]);
                    let det = &a[0] * &b[1] - &a[1] * &b[0];
                    if det.is_zero() {
                        return None;
                    }
                    let ni = &sc.rhs[0] * &b[1] - &sc.rhs[1] * &b[0];
                    let nj = &a[0] * &sc.rhs[1] - &a[1] * &sc.rhs[0];
                    let positive = |x: &BigInt| !x.is_zero() && x.sign() == det.sign();
                    if !positive(&ni) || !positive(&nj) {
                        return None;
                    }
                    let xi = ratio(&ni, &det) * Rational::from_bigint(sc.scale[i].clone());
                    let xj = ratio(&nj, &det) * Rational::from_bigint(sc.scale[j].clone());
                    Some(vec![(i, xi), (j, xj)])
                });
                feasible.map(solution_of).collect::<Vec<_>>()
            })
            .collect();
        candidates.extend(pairs);
    }

    let Some(best) = candidates.iter().map(|s| s.value.clone()).max() else {
        return Ok(Vec::new());
    };
    let mut optimal: Vec<LpSolution> = candidates.into_iter().filter(|s| s.value == best).collect();
    optimal.sort_by(|a, b| a.support().cmp(&b.support()));
    Ok(optimal)
}

/// Optimum by exhaustive vertex search; ties resolve to the first support in
/// lexicographic order.
pub fn vertex_enumeration_solve(lp: &LpInstance) -> Result<LpOutcome> {
    Ok(match optimal_vertices(lp)?.into_iter().next() {
        Some(s) => LpOutcome::Optimal(s),
        None => LpOutcome::Infeasible,
    })
}
