use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::Error;

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[k]` is the coefficient of `λ^k`. The highest stored coefficient is
/// never zero; the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c · λ^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `λ^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Multiply by `λ^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner over the integer numerator with a running power of the
        // denominator keeps all intermediates integral until the final divide.
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        if self.coeffs.is_empty() {
            return Rational::zero();
        }
        // acc = Σ c_k p^k q^{deg-k}
        let deg = self.coeffs.len() - 1;
        Rational::from_bigints(acc, num_traits::pow(q.clone(), deg)).expect("q > 0")
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Comma-separated coefficients, lowest degree first; `0` for the zero
    /// polynomial.
    pub fn to_coeff_list(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    fn add_assign_ref(&mut self, rhs: &IntPolynomial) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        let trimmed = std::mem::take(&mut self.coeffs);
        *self = Self::from_coeffs(trimmed);
    }
}

/// `(1+λ)^k` with exact binomial coefficients.
pub fn binomial_power(k: usize) -> IntPolynomial {
    let mut coeffs = Vec::with_capacity(k + 1);
    let mut c = BigInt::one();
    coeffs.push(c.clone());
    for i in 0..k {
        c = c * BigInt::from(k - i) / BigInt::from(i + 1);
        coeffs.push(c.clone());
    }
    IntPolynomial::from_coeffs(coeffs)
}

impl Add<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(mut self, rhs: IntPolynomial) -> IntPolynomial {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Mul<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

fn superscript(mut k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = Vec::new();
    loop {
        out.push(DIGITS[k % 10]);
        k /= 10;
        if k == 0 {
            break;
        }
    }
    out.iter().rev().collect()
}

impl fmt::Display for IntPolynomial {
    /// Human form, e.g. `1+8λ+12λ²+8λ³+2λ⁴`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mag = c.abs();
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ{}", superscript(k))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_coeff_list())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses the comma-separated coefficient list form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim().parse::<BigInt>().map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("bad coefficient {t:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn multiplication() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1]), p(&[1, 2, 1]));
        assert_eq!(&p(&[3, 0, 5]) * &IntPolynomial::zero(), IntPolynomial::zero());
        assert_eq!(&p(&[1, 4, 2]) * &IntPolynomial::one(), p(&[1, 4, 2]));
        assert_eq!((&p(&[1, 1]) * &p(&[2, 3])).degree(), Some(2));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_power(0), IntPolynomial::one());
        assert_eq!(binomial_power(3), p(&[1, 3, 3, 1]));
        assert_eq!(binomial_power(2).eval(&Rational::one()), Rational::integer(4));
        assert_eq!(binomial_power(10).coeff(5), BigInt::from(252));
    }

    #[test]
    fn derivatives() {
        // 2(1+λ)^3 - 1
        let k3 = &binomial_power(3).scale(&BigInt::from(2)) - &IntPolynomial::one();
        assert_eq!(k3.derivative(), p(&[6, 12, 6]));
        assert_eq!(p(&[7]).derivative(), IntPolynomial::zero());
        assert_eq!(p(&[1, 8, 16, 8, 2]).derivative(), p(&[8, 32, 24, 8]));
    }

    #[test]
    fn evaluation() {
        let k3 = &binomial_power(3).scale(&BigInt::from(2)) - &IntPolynomial::one();
        assert_eq!(k3.eval(&Rational::one()), Rational::integer(15));
        assert_eq!(p(&[9, 4, 1]).eval(&Rational::zero()), Rational::integer(9));
        assert_eq!(p(&[1, 8, 16, 8, 2]).eval(&Rational::one()), Rational::integer(35));
        assert_eq!(p(&[1, 1]).eval(&Rational::new(1, 3)), Rational::new(4, 3));
        assert_eq!(p(&[0, 0, 1]).eval(&Rational::new(-2, 3)), Rational::new(4, 9));
        assert_eq!(IntPolynomial::zero().eval(&Rational::new(5, 2)), Rational::zero());
        assert_eq!(p(&[1, 8, 16, 8, 2]).eval_int(&BigInt::from(1)), BigInt::from(35));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[1, 8, 12, 8, 2]).to_string(), "1+8λ+12λ²+8λ³+2λ⁴");
        assert_eq!(p(&[0, 1, -3]).to_string(), "λ-3λ²");
        assert_eq!(p(&[1, 8, 12]).to_coeff_list(), "1,8,12");
        assert_eq!("1, 8,12,0".parse::<IntPolynomial>().unwrap(), p(&[1, 8, 12]));
        assert_eq!("0".parse::<IntPolynomial>().unwrap(), IntPolynomial::zero());
        assert!("1,x".parse::<IntPolynomial>().is_err());
    }

    fn small_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|c| IntPolynomial::from_i64s(&c))
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..12).prop_map(|(a, b)| Rational::new(a, b))
    }

    proptest! {
        #[test]
        fn distributive(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }

        #[test]
        fn eval_is_multiplicative(a in small_poly(), b in small_poly(), x in small_rational()) {
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }

        #[test]
        fn product_rule(a in small_poly(), b in small_poly()) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn coeff_list_round_trip(a in small_poly()) {
            prop_assert_eq!(a.to_coeff_list().parse::<IntPolynomial>().unwrap(), a);
        }
    }
}
