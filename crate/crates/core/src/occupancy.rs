//! Exact occupancy fractions.

use crate::error::{check_cap, Error, Result};
use crate::graphs::Graph;
use crate::numerics::{binomial_power, BivariatePolynomial, IntPolynomial, Rational};
use crate::partition::{wr_partition, wr_partition_bivariate, EXACT_VERTEX_CAP};

/// Activities `(λ₁, λ₂)` for colours 1 and 2, both strictly positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActivityPair {
    lambda1: Rational,
    lambda2: Rational,
}

impl ActivityPair {
    pub fn new(lambda1: Rational, lambda2: Rational) -> Result<Self> {
        require_positive(&lambda1, "λ₁")?;
        require_positive(&lambda2, "λ₂")?;
        Ok(ActivityPair { lambda1, lambda2 })
    }

    pub fn symmetric(lambda: Rational) -> Result<Self> {
        Self::new(lambda.clone(), lambda)
    }

    pub fn lambda1(&self) -> &Rational {
        &self.lambda1
    }

    pub fn lambda2(&self) -> &Rational {
        &self.lambda2
    }

    pub fn swapped(&self) -> Self {
        ActivityPair {
            lambda1: self.lambda2.clone(),
            lambda2: self.lambda1.clone(),
        }
    }
}

impl std::fmt::Display for ActivityPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.lambda1, self.lambda2)
    }
}

pub(crate) fn require_positive(x: &Rational, name: &str) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {x}")))
    }
}

/// `λ P′(λ) / (n P(λ))` for a precomputed partition polynomial.
pub fn occupancy_from_polynomial(p: &IntPolynomial, n: usize, lambda: &Rational) -> Rational {
    lambda * p.derivative().eval(lambda) / (Rational::integer(n as i64) * p.eval(lambda))
}

/// Expected fraction of coloured vertices, `α_G(λ)`.
pub fn occupancy_fraction(g: &Graph, lambda: &Rational) -> Result<Rational> {
    require_positive(lambda, "λ")?;
    check_cap("vertex count for exact occupancy", g.n(), EXACT_VERTEX_CAP)?;
    Ok(occupancy_from_polynomial(&wr_partition(g)?, g.n(), lambda))
}

/// `α_K = 2λ(1+λ)^d / (2(1+λ)^{d+1} − 1)`, the occupancy fraction of `K_{d+1}`.
pub fn alpha_k(d: usize, lambda: &Rational) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    require_positive(lambda, "λ")?;
    let base = Rational::one() + lambda;
    let pow_d = base.pow(d as i32);
    let two = Rational::integer(2);
    Ok(&two * lambda * &pow_d / (&two * &pow_d * &base - Rational::one()))
}

/// Per-colour occupancy `(α¹, α²)` from a precomputed bivariate polynomial.
pub fn occupancy_by_colour_from(
    p: &BivariatePolynomial,
    n: usize,
    act: &ActivityPair,
) -> (Rational, Rational) {
    let (x, y) = (act.lambda1(), act.lambda2());
    let value = p.eval(x, y) * Rational::integer(n as i64);
    let d1 = p.partial(1).expect("valid index").eval(x, y);
    let d2 = p.partial(2).expect("valid index").eval(x, y);
    (x * d1 / &value, y * d2 / &value)
}

/// Expected fractions of vertices coloured 1 and coloured 2.
pub fn occupancy_by_colour(g: &Graph, act: &ActivityPair) -> Result<(Rational, Rational)> {
    Ok(occupancy_by_colour_from(&wr_partition_bivariate(g)?, g.n(), act))
}

/// `(λ₂α¹ + λ₁α²) / (λ₁ + λ₂)`.
pub fn weighted_from_colours(alpha1: &Rational, alpha2: &Rational, act: &ActivityPair) -> Rational {
    (act.lambda2() * alpha1 + act.lambda1() * alpha2) / (act.lambda1() + act.lambda2())
}

pub fn weighted_occupancy(g: &Graph, act: &ActivityPair) -> Result<Rational> {
    let (a1, a2) = occupancy_by_colour(g, act)?;
    Ok(weighted_from_colours(&a1, &a2, act))
}

/// `dF/dx` for `F(x) = (1/n) log P(λ₁ − λ₂ + x, x)`, computed two ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeEnergyDerivative {
    /// Formal derivative of the polynomial restricted to the path.
    pub direct: Rational,
    /// `[x α¹ + (λ₁−λ₂+x) α²] / (x (λ₁−λ₂+x))` at the path point.
    pub via_occupancy: Rational,
}

/// Coefficients (lowest first) of `x ↦ P(c + x, x)`.
fn restrict_to_path(p: &BivariatePolynomial, shift: &Rational) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    let mut add = |k: usize, v: Rational| {
        if out.len() <= k {
            out.resize(k + 1, Rational::zero());
        }
        out[k] = &out[k] + v;
    };
    for ((i, j), c) in p.terms() {
        // (c + x)^i = Σ_m C(i,m) shift^{i-m} x^m
        for (m, binom) in binomial_power(i as usize).coeffs().iter().enumerate() {
            let coeff = Rational::from_bigint(c * binom) * shift.pow((i as usize - m) as i32);
            add(m + j as usize, coeff);
        }
    }
    out
}

fn eval_dense(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

pub fn free_energy_derivative_from(
    p: &BivariatePolynomial,
    n: usize,
    lambda1: &Rational,
    lambda2: &Rational,
    x: &Rational,
) -> Result<FreeEnergyDerivative> {
    require_positive(lambda2, "λ₂")?;
    require_positive(x, "x")?;
    if lambda1 < lambda2 {
        return Err(Error::Domain(format!("need λ₁ ≥ λ₂, got {lambda1} < {lambda2}")));
    }
    if x > lambda2 {
        return Err(Error::Domain(format!("need x ≤ λ₂, got {x} > {lambda2}")));
    }
    let shift = lambda1 - lambda2;
    let q = restrict_to_path(p, &shift);
    let dq: Vec<Rational> = q
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::integer(k as i64))
        .collect();
    let direct = eval_dense(&dq, x) / (Rational::integer(n as i64) * eval_dense(&q, x));

    let first = &shift + x;
    let act = ActivityPair::new(first.clone(), x.clone())?;
    let (a1, a2) = occupancy_by_colour_from(p, n, &act);
    let via_occupancy = (x * a1 + &first * a2) / (x * &first);

    if direct != via_occupancy {
        return Err(Error::Inconsistent(format!(
            "free-energy derivative routes disagree: {direct} vs {via_occupancy}"
        )));
    }
    Ok(FreeEnergyDerivative {
        direct,
        via_occupancy,
    })
}

pub fn free_energy_derivative(
    g: &Graph,
    lambda1: &Rational,
    lambda2: &Rational,
    x: &Rational,
) -> Result<FreeEnergyDerivative> {
    free_energy_derivative_from(&wr_partition_bivariate(g)?, g.n(), lambda1, lambda2, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn single_activity_values() {
        let one = Rational::one();
        assert_eq!(occupancy_fraction(&make_complete(3).unwrap(), &one).unwrap(), r(8, 15));
        assert_eq!(occupancy_fraction(&make_cycle(4).unwrap(), &one).unwrap(), r(18, 35));
        assert_eq!(occupancy_fraction(&make_cycle(5).unwrap(), &one).unwrap(), r(42, 83));
        assert!(matches!(
            occupancy_fraction(&make_cycle(5).unwrap(), &Rational::zero()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn clique_closed_form() {
        assert_eq!(alpha_k(1, &Rational::one()).unwrap(), r(4, 7));
        assert_eq!(alpha_k(3, &Rational::one()).unwrap(), r(16, 31));
        assert!(alpha_k(2, &r(-1, 2)).is_err());
        assert!(alpha_k(0, &Rational::one()).is_err());
        for d in 1..=6 {
            for lam in [r(1, 3), r(5, 2), r(7, 11)] {
                assert_eq!(
                    alpha_k(d, &lam).unwrap(),
                    occupancy_fraction(&make_complete(d + 1).unwrap(), &lam).unwrap()
                );
            }
        }
    }

    #[test]
    fn clique_closed_form_increasing() {
        for d in 1..=6 {
            let grid: Vec<Rational> = (1..40).map(|k| r(k, 8)).collect();
            for w in grid.windows(2) {
                assert!(alpha_k(d, &w[0]).unwrap() < alpha_k(d, &w[1]).unwrap());
            }
        }
    }

    #[test]
    fn k2_two_activities() {
        // brute force over the 7 valid colourings of K2: P(1,2) = 12
        let k2 = make_complete(2).unwrap();
        let act = ActivityPair::new(r(1, 1), r(2, 1)).unwrap();
        let (a1, a2) = occupancy_by_colour(&k2, &act).unwrap();
        assert_eq!((a1.clone(), a2.clone()), (r(1, 6), r(1, 2)));
        assert_eq!(weighted_occupancy(&k2, &act).unwrap(), r(5, 18));
        assert_eq!(occupancy_by_colour(&k2, &act.swapped()).unwrap(), (a2, a1));
        assert_eq!(
            weighted_occupancy(&k2, &act.swapped()).unwrap(),
            weighted_occupancy(&k2, &act).unwrap()
        );
    }

    #[test]
    fn symmetric_collapse() {
        for g in [make_petersen(), make_cycle(6).unwrap()] {
            let lam = r(3, 4);
            let act = ActivityPair::symmetric(lam.clone()).unwrap();
            let alpha = occupancy_fraction(&g, &lam).unwrap();
            let (a1, a2) = occupancy_by_colour(&g, &act).unwrap();
            assert_eq!(&a1 + &a2, alpha);
            assert_eq!(a1, &alpha / Rational::integer(2));
            assert_eq!(weighted_occupancy(&g, &act).unwrap(), &alpha / Rational::integer(2));
        }
    }

    #[test]
    fn occupancy_of_unions() {
        let c5 = make_cycle(5).unwrap();
        let two = disjoint_union(&c5, &c5);
        let lam = r(2, 3);
        assert_eq!(occupancy_fraction(&c5, &lam).unwrap(), occupancy_fraction(&two, &lam).unwrap());
    }

    #[test]
    fn free_energy_routes() {
        let k2 = make_complete(2).unwrap();
        let fe = free_energy_derivative(&k2, &r(2, 1), &r(1, 1), &r(1, 1)).unwrap();
        assert_eq!(fe.direct, fe.via_occupancy);
        // diagonal: dF/dx = α_G(x)/x
        let c5 = make_cycle(5).unwrap();
        let lam = r(3, 2);
        let fe = free_energy_derivative(&c5, &lam, &lam, &lam).unwrap();
        assert_eq!(fe.direct, occupancy_fraction(&c5, &lam).unwrap() / &lam);
        // per-vertex normalisation
        let k3 = make_complete(3).unwrap();
        let two = disjoint_union(&k3, &k3);
        let a = free_energy_derivative(&k3, &r(5, 2), &r(1, 3), &r(1, 4)).unwrap();
        let b = free_energy_derivative(&two, &r(5, 2), &r(1, 3), &r(1, 4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn free_energy_domain() {
        let k2 = make_complete(2).unwrap();
        assert!(free_energy_derivative(&k2, &r(1, 1), &r(2, 1), &r(1, 1)).is_err());
        assert!(free_energy_derivative(&k2, &r(3, 1), &r(2, 1), &r(5, 2)).is_err());
        assert!(free_energy_derivative(&k2, &r(3, 1), &r(2, 1), &r(0, 1)).is_err());
    }

    #[test]
    fn activity_validation() {
        assert!(ActivityPair::new(r(0, 1), r(1, 1)).is_err());
        assert!(ActivityPair::new(r(1, 1), r(-1, 3)).is_err());
    }
}
