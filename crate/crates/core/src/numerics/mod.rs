//! Exact scalar and polynomial arithmetic.
//!
//! Everything downstream works over [`Rational`] values and integer-coefficient
//! polynomials; nothing in the exact pipeline touches floating point.

mod bivariate;
mod poly;
mod rational;

pub use bivariate::BivariatePolynomial;
pub use num_bigint::BigInt;
pub use poly::{binomial_power, IntPolynomial};
pub use rational::Rational;
