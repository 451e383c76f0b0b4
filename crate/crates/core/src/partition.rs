//! Widom–Rowlinson partition polynomials.
//!
//! A valid colouring gives each vertex 0, 1 or 2 with no edge joining a 1 to a
//! 2. Grouping colourings by their coloured set `S`, every component of `G[S]`
//! must be monochromatic, so
//!
//! ```text
//! P_G(λ)      = Σ_{S ⊆ V} 2^{c(G[S])} λ^{|S|}
//! P_G(λ₁, λ₂) = Σ_{S ⊆ V} Π_{K component of G[S]} (λ₁^{|K|} + λ₂^{|K|})
//! ```
//!
//! which is what [`wr_partition`] and [`wr_partition_bivariate`] sum. The
//! `_brute` variants walk all `3^n` assignments instead and serve as oracles.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{check_cap, Result};
use crate::graphs::Graph;
use crate::numerics::{BivariatePolynomial, IntPolynomial, Rational};

/// Vertex cap for the subset-sum route.
pub const EXACT_VERTEX_CAP: usize = 24;
/// Vertex cap for the `3^n` oracle.
pub const BRUTE_VERTEX_CAP: usize = 12;

const CHUNK_BITS: usize = 12;

/// Per-vertex colour in `{0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Colouring(pub Vec<u8>);

impl Colouring {
    pub fn uncoloured(n: usize) -> Self {
        Colouring(vec![0; n])
    }

    /// No edge joins a 1-vertex to a 2-vertex.
    pub fn is_valid(&self, g: &Graph) -> bool {
        self.0.len() == g.n()
            && self.0.iter().all(|&c| c <= 2)
            && g.edges().all(|(u, v)| self.0[u] * self.0[v] != 2)
    }

    pub fn count(&self, colour: u8) -> usize {
        self.0.iter().filter(|&&c| c == colour).count()
    }

    pub fn coloured(&self) -> usize {
        self.0.iter().filter(|&&c| c != 0).count()
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbour_mask(v)).collect()
}

fn subset_chunks(n: usize) -> (u64, u64) {
    let total = 1u64 << n;
    let chunk = 1u64 << CHUNK_BITS.min(n);
    (total / chunk, chunk)
}

/// `counts[k][c]` = number of `k`-subsets whose induced graph has `c`
/// components.
fn size_component_histogram(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.n();
    let nbr = masks(g);
    let (chunks, chunk) = subset_chunks(n);
    let zero = || vec![vec![0u64; n + 1]; n + 1];
    (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut h = zero();
            for s in ci * chunk..(ci + 1) * chunk {
                let c = crate::graphs::component_count_mask(|v| nbr[v], s);
                h[s.count_ones() as usize][c] += 1;
            }
            h
        })
        .reduce(zero, |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(&b) {
                for (x, y) in ra.iter_mut().zip(rb) {
                    *x += y;
                }
            }
            a
        })
}

/// Exact `P_G(λ)` via the subset-component identity.
pub fn wr_partition(g: &Graph) -> Result<IntPolynomial> {
    check_cap("vertex count for exact partition function", g.n(), EXACT_VERTEX_CAP)?;
    let hist = size_component_histogram(g);
    let coeffs = hist
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(c, &count)| BigInt::from(count) << c)
                .sum::<BigInt>()
        })
        .collect();
    Ok(IntPolynomial::from_coeffs(coeffs))
}

/// Sizes of the components of `G[set]`, sorted descending and packed 5 bits
/// per part (a zero nibble terminates).
fn component_profile(nbr: &[u64], set: u64) -> u128 {
    let mut sizes = [0u8; EXACT_VERTEX_CAP];
    let mut parts = 0;
    let mut remaining = set;
    while remaining != 0 {
        let mut frontier = remaining & remaining.wrapping_neg();
        remaining &= !frontier;
        let mut size = 0u8;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            size += 1;
            let fresh = nbr[v] & remaining;
            remaining &= !fresh;
            frontier |= fresh;
        }
        sizes[parts] = size;
        parts += 1;
    }
    let sizes = &mut sizes[..parts];
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, &s)| acc | (u128::from(s) << (5 * i)))
}

fn unpack_profile(mut packed: u128) -> Vec<u32> {
    let mut out = Vec::new();
    while packed != 0 {
        out.push((packed & 31) as u32);
        packed >>= 5;
    }
    out
}

/// Exact `P_G(λ₁, λ₂)` via the component-profile identity.
pub fn wr_partition_bivariate(g: &Graph) -> Result<BivariatePolynomial> {
    check_cap("vertex count for exact partition function", g.n(), EXACT_VERTEX_CAP)?;
    let nbr = masks(g);
    let (chunks, chunk) = subset_chunks(g.n());
    let profiles: BTreeMap<u128, u64> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut m: HashMap<u128, u64> = HashMap::new();
            for s in ci * chunk..(ci + 1) * chunk {
                *m.entry(component_profile(&nbr, s)).or_default() += 1;
            }
            m.into_iter().collect::<BTreeMap<_, _>>()
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });

    let mut factor_cache: HashMap<u32, BivariatePolynomial> = HashMap::new();
    let mut total = BivariatePolynomial::zero();
    for (packed, count) in profiles {
        let mut term = BivariatePolynomial::monomial(count, 0, 0);
        for size in unpack_profile(packed) {
            let f = factor_cache.entry(size).or_insert_with(|| {
                &BivariatePolynomial::monomial(1, size, 0) + &BivariatePolynomial::monomial(1, 0, size)
            });
            term = &term * f;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Visits every valid colouring of `g` by walking all `3^n` assignments.
fn for_each_valid_colouring(g: &Graph, mut f: impl FnMut(&[u8])) {
    let n = g.n();
    let edges: Vec<_> = g.edges().collect();
    let mut colours = vec![0u8; n];
    loop {
        if edges.iter().all(|&(u, v)| colours[u] * colours[v] != 2) {
            f(&colours);
        }
        // base-3 increment
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            colours[i] += 1;
            if colours[i] < 3 {
                break;
            }
            colours[i] = 0;
            i += 1;
        }
    }
}

/// `P_G(λ)` by direct enumeration of all `3^n` maps `V → {0,1,2}`.
pub fn wr_partition_brute(g: &Graph) -> Result<IntPolynomial> {
    check_cap("vertex count for brute-force partition function", g.n(), BRUTE_VERTEX_CAP)?;
    let mut counts = vec![0u64; g.n() + 1];
    for_each_valid_colouring(g, |c| {
        counts[c.iter().filter(|&&x| x != 0).count()] += 1;
    });
    Ok(IntPolynomial::from_coeffs(counts.into_iter().map(BigInt::from).collect()))
}

/// `P_G(λ₁, λ₂)` by direct enumeration.
pub fn wr_partition_bivariate_brute(g: &Graph) -> Result<BivariatePolynomial> {
    check_cap("vertex count for brute-force partition function", g.n(), BRUTE_VERTEX_CAP)?;
    let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for_each_valid_colouring(g, |c| {
        let ones = c.iter().filter(|&&x| x == 1).count() as u32;
        let twos = c.iter().filter(|&&x| x == 2).count() as u32;
        *counts.entry((ones, twos)).or_default() += 1;
    });
    let mut p = BivariatePolynomial::zero();
    for ((i, j), c) in counts {
        p.add_term(i, j, BigInt::from(c));
    }
    Ok(p)
}

/// `hom(G, H_WR) = P_G(1)`.
pub fn hom_count_wr(g: &Graph) -> Result<BigInt> {
    Ok(wr_partition(g)?.eval_int(&BigInt::one()))
}

/// Closed form `2(1+λ)^{d+1} − 1` for `K_{d+1}`.
pub fn complete_graph_partition(d: usize) -> IntPolynomial {
    &crate::numerics::binomial_power(d + 1).scale(&BigInt::from(2)) - &IntPolynomial::one()
}

/// Closed form `(1+λ₁)^{d+1} + (1+λ₂)^{d+1} − 1` for `K_{d+1}`.
pub fn complete_graph_partition_bivariate(d: usize) -> BivariatePolynomial {
    let mut p = BivariatePolynomial::monomial(-1, 0, 0);
    for (k, c) in crate::numerics::binomial_power(d + 1).coeffs().iter().enumerate() {
        p.add_term(k as u32, 0, c.clone());
        p.add_term(0, k as u32, c.clone());
    }
    p
}

/// `P_G(λ)` at a rational point.
pub fn evaluate_partition(g: &Graph, lambda: &Rational) -> Result<Rational> {
    Ok(wr_partition(g)?.eval(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn small_values() {
        assert_eq!(wr_partition(&make_complete(2).unwrap()).unwrap(), p(&[1, 4, 2]));
        assert_eq!(wr_partition(&make_cycle(4).unwrap()).unwrap(), p(&[1, 8, 16, 8, 2]));
        assert_eq!(wr_partition(&Graph::new(1)).unwrap(), p(&[1, 2]));
        assert_eq!(wr_partition_brute(&make_complete(3).unwrap()).unwrap(), p(&[1, 6, 6, 2]));
        assert_eq!(wr_partition_brute(&Graph::new(2)).unwrap(), &p(&[1, 2]) * &p(&[1, 2]));
        assert_eq!(
            wr_partition_brute(&make_cycle(5).unwrap()).unwrap(),
            p(&[1, 10, 30, 30, 10, 2])
        );
    }

    #[test]
    fn hom_counts() {
        assert_eq!(hom_count_wr(&make_complete(2).unwrap()).unwrap(), BigInt::from(7));
        assert_eq!(hom_count_wr(&make_complete(4).unwrap()).unwrap(), BigInt::from(31));
        assert_eq!(hom_count_wr(&make_cycle(4).unwrap()).unwrap(), BigInt::from(35));
    }

    #[test]
    fn bivariate_k2() {
        let b = wr_partition_bivariate(&make_complete(2).unwrap()).unwrap();
        let mut expect = BivariatePolynomial::one();
        expect.add_term(1, 0, 2.into());
        expect.add_term(0, 1, 2.into());
        expect.add_term(2, 0, 1.into());
        expect.add_term(0, 2, 1.into());
        assert_eq!(b, expect);
        assert_eq!(b.eval(&Rational::one(), &Rational::one()), Rational::integer(7));
    }

    #[test]
    fn closed_forms_for_cliques() {
        for d in 1..=8 {
            let k = make_complete(d + 1).unwrap();
            assert_eq!(wr_partition(&k).unwrap(), complete_graph_partition(d));
            assert_eq!(
                wr_partition_bivariate(&k).unwrap(),
                complete_graph_partition_bivariate(d)
            );
        }
    }

    #[test]
    fn oracle_agreement_on_small_graphs() {
        let graphs = [
            make_petersen(),
            make_prism(4).unwrap(),
            make_complete_bipartite(3, 3).unwrap(),
            make_path(6).unwrap(),
            disjoint_union(&make_cycle(3).unwrap(), &make_path(2).unwrap()),
            make_random_regular(10, 4, 3).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(wr_partition(g).unwrap(), wr_partition_brute(g).unwrap(), "{g:?}");
            let b = wr_partition_bivariate(g).unwrap();
            assert_eq!(b, wr_partition_bivariate_brute(g).unwrap());
            assert_eq!(b.diagonal(), wr_partition(g).unwrap());
            assert_eq!(b.swapped(), b);
        }
    }

    #[test]
    fn multiplicative_over_unions() {
        let a = make_cycle(5).unwrap();
        let b = make_complete_bipartite(2, 3).unwrap();
        assert_eq!(
            wr_partition(&disjoint_union(&a, &b)).unwrap(),
            &wr_partition(&a).unwrap() * &wr_partition(&b).unwrap()
        );
    }

    #[test]
    fn low_order_coefficients() {
        for g in [make_petersen(), make_random_regular(16, 3, 2).unwrap()] {
            let poly = wr_partition(&g).unwrap();
            assert_eq!(poly.coeff(0), BigInt::from(1));
            assert_eq!(poly.coeff(1), BigInt::from(2 * g.n()));
        }
    }

    #[test]
    fn caps() {
        assert!(wr_partition(&Graph::new(25)).is_err());
        assert!(wr_partition_brute(&Graph::new(13)).is_err());
    }

    #[test]
    fn colouring_validity() {
        let k2 = make_complete(2).unwrap();
        assert!(Colouring(vec![1, 1]).is_valid(&k2));
        assert!(Colouring(vec![0, 2]).is_valid(&k2));
        assert!(!Colouring(vec![1, 2]).is_valid(&k2));
        assert!(Colouring(vec![1, 2]).is_valid(&Graph::new(2)));
        assert!(!Colouring(vec![3, 0]).is_valid(&k2));
        assert_eq!(Colouring(vec![1, 0, 2, 1]).count(1), 2);
    }
}
