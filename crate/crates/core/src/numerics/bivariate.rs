use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntPolynomial, Rational};
use crate::error::Error;

/// Sparse polynomial in two variables with integer coefficients.
///
/// The key `(i, j)` carries the coefficient of `λ₁^i λ₂^j`; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c.into());
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut xs: Vec<Rational> = vec![Rational::one()];
        let mut ys: Vec<Rational> = vec![Rational::one()];
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            while xs.len() <= i as usize {
                let next = xs.last().unwrap() * x;
                xs.push(next);
            }
            while ys.len() <= j as usize {
                let next = ys.last().unwrap() * y;
                ys.push(next);
            }
            acc = acc + Rational::from_bigint(c.clone()) * &xs[i as usize] * &ys[j as usize];
        }
        acc
    }

    /// Formal partial derivative in variable 1 (`λ₁`) or 2 (`λ₂`).
    pub fn partial(&self, variable: usize) -> Result<Self, Error> {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            match variable {
                1 if i > 0 => out.add_term(i - 1, j, c * BigInt::from(i)),
                2 if j > 0 => out.add_term(i, j - 1, c * BigInt::from(j)),
                1 | 2 => {}
                _ => {
                    return Err(Error::Usage(format!(
                        "variable index must be 1 or 2, got {variable}"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// `P(λ, λ)` as a univariate polynomial.
    pub fn diagonal(&self) -> IntPolynomial {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (&(i, j), c) in &self.terms {
            let k = (i + j) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c;
        }
        IntPolynomial::from_coeffs(coeffs)
    }

    /// `P(λ₂, λ₁)`.
    pub fn swapped(&self) -> Self {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// Rows of coefficients by power of `λ₁`, `;`-separated; each row lists the
    /// coefficients of `λ₂^0, λ₂^1, …` comma-separated.
    pub fn to_coeff_rows(&self) -> String {
        let Some(max_i) = self.terms.keys().map(|&(i, _)| i).max() else {
            return "0".into();
        };
        (0..=max_i)
            .map(|i| {
                let row: Vec<BigInt> = {
                    let max_j = self
                        .terms
                        .keys()
                        .filter(|&&(a, _)| a == i)
                        .map(|&(_, j)| j)
                        .max();
                    match max_j {
                        None => vec![BigInt::zero()],
                        Some(m) => (0..=m).map(|j| self.coeff(i, j)).collect(),
                    }
                };
                row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl Add<&BivariatePolynomial> for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Mul<&BivariatePolynomial> for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Graded order reads better than the map's lexicographic one.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(&(i, j), _)| (i + j, j));
        for (n, (&(i, j), c)) in terms.into_iter().enumerate() {
            let neg = c.sign() == num_bigint::Sign::Minus;
            if neg {
                write!(f, "-")?;
            } else if n > 0 {
                write!(f, "+")?;
            }
            let mag = num_traits::Signed::abs(c);
            if (i, j) == (0, 0) || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for (var, e) in [("λ₁", i), ("λ₂", j)] {
                match e {
                    0 => {}
                    1 => write!(f, "{var}")?,
                    _ => write!(f, "{var}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> BivariatePolynomial {
        let mut p = BivariatePolynomial::one();
        p.add_term(1, 0, 2.into());
        p.add_term(0, 1, 2.into());
        p.add_term(2, 0, 1.into());
        p.add_term(0, 2, 1.into());
        p
    }

    #[test]
    fn partials() {
        let xy = BivariatePolynomial::monomial(1, 1, 1);
        assert_eq!(xy.partial(1).unwrap(), BivariatePolynomial::monomial(1, 0, 1));
        assert_eq!(xy.partial(2).unwrap(), BivariatePolynomial::monomial(1, 1, 0));
        assert!(matches!(xy.partial(3), Err(Error::Usage(_))));
        assert!(BivariatePolynomial::one().partial(1).unwrap().is_zero());
    }

    #[test]
    fn evaluation_and_collapse() {
        let p = k2();
        assert_eq!(p.eval(&Rational::one(), &Rational::one()), Rational::integer(7));
        assert_eq!(p.eval(&Rational::one(), &Rational::integer(2)), Rational::integer(12));
        assert_eq!(p.diagonal(), IntPolynomial::from_i64s(&[1, 4, 2]));
        assert_eq!(p.swapped(), p);
        assert_eq!(p.to_string(), "1+2λ₁+2λ₂+λ₁^2+λ₂^2");
        assert_eq!(p.to_coeff_rows(), "1,2,1;2;1");
    }

    #[test]
    fn product_diagonal_commutes() {
        let p = k2();
        let q = &BivariatePolynomial::monomial(3, 1, 2) + &BivariatePolynomial::one();
        assert_eq!((&p * &q).diagonal(), &p.diagonal() * &q.diagonal());
    }
}
