//! Comparisons of regular graphs against `K_{d+1}`: occupancy fraction,
//! partition function and homomorphism count, plus the two-activity scan.
//!
//! Comparisons with exponent `n/(d+1)` are made after raising both sides to
//! the power `d+1`, so everything stays in exact rationals.

pub mod catalog;

use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::numerics::{BivariatePolynomial, IntPolynomial, Rational};
use crate::occupancy::{
    alpha_k, occupancy_by_colour_from, occupancy_from_polynomial, require_positive,
    weighted_from_colours, ActivityPair,
};
use crate::partition::{
    complete_graph_partition, complete_graph_partition_bivariate, wr_partition,
    wr_partition_bivariate,
};

pub use catalog::{builtin_graph, catalog, CatalogGraph, CATALOG_NAMES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Less,
    Equal,
    Greater,
}

impl Relation {
    pub fn of(lhs: &Rational, rhs: &Rational) -> Self {
        match lhs.cmp(rhs) {
            std::cmp::Ordering::Less => Relation::Less,
            std::cmp::Ordering::Equal => Relation::Equal,
            std::cmp::Ordering::Greater => Relation::Greater,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Less => "<",
            Relation::Equal => "=",
            Relation::Greater => ">",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Occupancy,
    Partition,
    Hom,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Occupancy => "occupancy",
            BoundKind::Partition => "partition",
            BoundKind::Hom => "hom",
        })
    }
}

/// One graph-versus-clique comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub graph: String,
    pub n: usize,
    pub d: usize,
    pub kind: BoundKind,
    pub activity: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
    /// The graph is a disjoint union of `K_{d+1}`.
    pub equality_expected: bool,
}

impl BoundReport {
    /// Strict unless equality is expected, equal exactly when it is.
    pub fn matches_theorem(&self) -> bool {
        match self.relation {
            Relation::Less => !self.equality_expected,
            Relation::Equal => self.equality_expected,
            Relation::Greater => false,
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} d={} {} λ={} {} {} {} equality_expected={}",
            self.graph,
            self.n,
            self.d,
            self.kind,
            self.activity,
            self.lhs,
            self.relation,
            self.rhs,
            self.equality_expected
        )
    }
}

fn require_regular(g: &Graph, d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    match g.irregular_vertex(d) {
        Some(v) => Err(Error::Domain(format!(
            "graph is not {d}-regular: vertex {v} has degree {}",
            g.degree(v)
        ))),
        None if g.n() == 0 => Err(Error::Domain("graph has no vertices".into())),
        None => Ok(()),
    }
}

/// A catalog graph with its partition polynomial computed once, so that
/// checks over an activity grid only evaluate it.
#[derive(Clone, Debug)]
pub struct PreparedGraph {
    pub name: String,
    pub d: usize,
    pub n: usize,
    pub polynomial: IntPolynomial,
    pub equality_expected: bool,
}

impl PreparedGraph {
    pub fn new(name: &str, g: &Graph, d: usize) -> Result<Self> {
        require_regular(g, d)?;
        Ok(PreparedGraph {
            name: name.to_string(),
            d,
            n: g.n(),
            polynomial: wr_partition(g)?,
            equality_expected: g.is_union_of_complete(d + 1),
        })
    }

    fn report(&self, kind: BoundKind, activity: String, lhs: Rational, rhs: Rational) -> BoundReport {
        BoundReport {
            graph: self.name.clone(),
            n: self.n,
            d: self.d,
            kind,
            activity,
            relation: Relation::of(&lhs, &rhs),
            lhs,
            rhs,
            equality_expected: self.equality_expected,
        }
    }

    pub fn occupancy(&self, lambda: &Rational) -> Result<BoundReport> {
        require_positive(lambda, "λ")?;
        let lhs = occupancy_from_polynomial(&self.polynomial, self.n, lambda);
        Ok(self.report(BoundKind::Occupancy, lambda.to_string(), lhs, alpha_k(self.d, lambda)?))
    }

    /// `P_G(λ)^{d+1}` against `P_{K_{d+1}}(λ)^n`.
    pub fn partition(&self, lambda: &Rational) -> Result<BoundReport> {
        require_positive(lambda, "λ")?;
        let lhs = self.polynomial.eval(lambda).pow(self.d as i32 + 1);
        let rhs = complete_graph_partition(self.d).eval(lambda).pow(self.n as i32);
        Ok(self.report(BoundKind::Partition, lambda.to_string(), lhs, rhs))
    }

    /// `hom(G)^{d+1}` against `hom(K_{d+1})^n`, in integers.
    pub fn hom(&self) -> BoundReport {
        let one = num_bigint::BigInt::from(1);
        let lhs = num_traits::pow(self.polynomial.eval_int(&one), self.d + 1);
        let rhs = num_traits::pow(complete_graph_partition(self.d).eval_int(&one), self.n);
        self.report(BoundKind::Hom, "1".into(), lhs.into(), rhs.into())
    }
}

pub fn verify_occupancy_bound(name: &str, g: &Graph, d: usize, lambda: &Rational) -> Result<BoundReport> {
    PreparedGraph::new(name, g, d)?.occupancy(lambda)
}

pub fn verify_partition_bound(name: &str, g: &Graph, d: usize, lambda: &Rational) -> Result<BoundReport> {
    PreparedGraph::new(name, g, d)?.partition(lambda)
}

pub fn verify_hom_bound(name: &str, g: &Graph, d: usize) -> Result<BoundReport> {
    Ok(PreparedGraph::new(name, g, d)?.hom())
}

/// Every occupancy, partition and hom report for a catalog over a grid of
/// activities, in catalog order.
pub fn verify_catalog(graphs: &[CatalogGraph], lambdas: &[Rational]) -> Result<Vec<BoundReport>> {
    let per_graph: Vec<Vec<BoundReport>> = graphs
        .par_iter()
        .map(|cg| {
            let p = PreparedGraph::new(&cg.name, &cg.graph, cg.d)?;
            let mut out = Vec::with_capacity(2 * lambdas.len() + 1);
            for lam in lambdas {
                out.push(p.occupancy(lam)?);
            }
            for lam in lambdas {
                out.push(p.partition(lam)?);
            }
            out.push(p.hom());
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_graph.into_iter().flatten().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScanCheck {
    /// `P_G(λ₁,λ₂)^{d+1}` against `P_{K_{d+1}}(λ₁,λ₂)^n`.
    Partition,
    /// Weighted occupancy `ᾱ_G` against `ᾱ_{K_{d+1}}`.
    WeightedOccupancy,
}

impl fmt::Display for ScanCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanCheck::Partition => "partition",
            ScanCheck::WeightedOccupancy => "weighted-occupancy",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub graph: String,
    pub n: usize,
    pub d: usize,
    pub activity: ActivityPair,
    pub check: ScanCheck,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
    pub equality_expected: bool,
}

impl ScanRow {
    pub fn is_violation(&self) -> bool {
        self.relation == Relation::Greater
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn violations(&self) -> Vec<&ScanRow> {
        self.rows.iter().filter(|r| r.is_violation()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("graph,n,d,lambda1,lambda2,check,lhs,rhs,relation,equality_expected\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.graph,
                r.n,
                r.d,
                r.activity.lambda1(),
                r.activity.lambda2(),
                r.check,
                r.lhs,
                r.rhs,
                r.relation,
                r.equality_expected
            );
        }
        out
    }
}

fn weighted_for(p: &BivariatePolynomial, n: usize, act: &ActivityPair) -> Rational {
    let (a1, a2) = occupancy_by_colour_from(p, n, act);
    weighted_from_colours(&a1, &a2, act)
}

/// Exact two-activity comparisons of every catalog graph against its clique.
/// A `>` row is a counterexample to the corresponding conjecture.
pub fn conjecture_scan(graphs: &[CatalogGraph], grid: &[ActivityPair]) -> Result<ScanReport> {
    let per_graph: Vec<Vec<ScanRow>> = graphs
        .par_iter()
        .map(|cg| {
            require_regular(&cg.graph, cg.d)?;
            let (d, n) = (cg.d, cg.graph.n());
            let p = wr_partition_bivariate(&cg.graph)?;
            let k = complete_graph_partition_bivariate(d);
            let equality_expected = cg.graph.is_union_of_complete(d + 1);
            let row = |act: &ActivityPair, check, lhs: Rational, rhs: Rational| ScanRow {
                graph: cg.name.clone(),
                n,
                d,
                activity: act.clone(),
                check,
                relation: Relation::of(&lhs, &rhs),
                lhs,
                rhs,
                equality_expected,
            };
            let mut out = Vec::with_capacity(2 * grid.len());
            for act in grid {
                let (l1, l2) = (act.lambda1(), act.lambda2());
                out.push(row(
                    act,
                    ScanCheck::Partition,
                    p.eval(l1, l2).pow(d as i32 + 1),
                    k.eval(l1, l2).pow(n as i32),
                ));
                out.push(row(
                    act,
                    ScanCheck::WeightedOccupancy,
                    weighted_for(&p, n, act),
                    weighted_for(&k, d + 1, act),
                ));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(ScanReport {
        rows: per_graph.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{disjoint_union, make_complete, make_complete_bipartite, make_cycle, make_petersen, make_path};

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn occupancy_examples() {
        let one = Rational::one();
        let c5 = verify_occupancy_bound("C5", &make_cycle(5).unwrap(), 2, &one).unwrap();
        assert_eq!((c5.lhs.clone(), c5.rhs.clone()), (r(42, 83), r(8, 15)));
        assert_eq!(c5.relation, Relation::Less);
        assert!(c5.matches_theorem());
        let k3 = make_complete(3).unwrap();
        let kk = verify_occupancy_bound("2K3", &disjoint_union(&k3, &k3), 2, &one).unwrap();
        assert_eq!(kk.relation, Relation::Equal);
        assert!(kk.equality_expected && kk.matches_theorem());
        let pet = verify_occupancy_bound("Petersen", &make_petersen(), 3, &one).unwrap();
        assert_eq!(pet.rhs, r(16, 31));
        assert_eq!(pet.relation, Relation::Less);
    }

    #[test]
    fn irregular_input_names_vertex() {
        let err = verify_occupancy_bound("P3", &make_path(3).unwrap(), 2, &Rational::one()).unwrap_err();
        match err {
            Error::Domain(msg) => assert!(msg.contains("vertex 0"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn partition_examples() {
        let one = Rational::one();
        let c4 = verify_partition_bound("C4", &make_cycle(4).unwrap(), 2, &one).unwrap();
        assert_eq!(c4.lhs, Rational::integer(42875));
        assert_eq!(c4.rhs, Rational::integer(50625));
        let k4 = make_complete(4).unwrap();
        let kk = verify_partition_bound("2K4", &disjoint_union(&k4, &k4), 3, &one).unwrap();
        assert_eq!(kk.relation, Relation::Equal);
        assert_eq!(kk.lhs, Rational::integer(31).pow(8));
        let k33 = verify_partition_bound("K3,3", &make_complete_bipartite(3, 3).unwrap(), 3, &one).unwrap();
        assert_eq!(k33.relation, Relation::Less);
    }

    #[test]
    fn hom_examples() {
        let k2 = verify_hom_bound("K2", &make_complete(2).unwrap(), 1).unwrap();
        assert_eq!((k2.lhs.clone(), k2.rhs.clone()), (Rational::integer(49), Rational::integer(49)));
        assert_eq!(k2.relation, Relation::Equal);
        let c6 = verify_hom_bound("C6", &make_cycle(6).unwrap(), 2).unwrap();
        let brute = crate::partition::wr_partition_brute(&make_cycle(6).unwrap()).unwrap();
        let hom = brute.eval_int(&1.into());
        assert_eq!(c6.lhs, Rational::from_bigint(num_traits::pow(hom, 3)));
        assert_eq!(c6.rhs, Rational::integer(15).pow(6));
        assert_eq!(c6.relation, Relation::Less);
        let pet = verify_hom_bound("Petersen", &make_petersen(), 3).unwrap();
        assert_eq!(pet.rhs, Rational::integer(31).pow(10));
        assert_eq!(pet.relation, Relation::Less);
    }

    #[test]
    fn hom_matches_partition_at_one() {
        for cg in catalog::catalog_d2().iter().take(6) {
            let h = verify_hom_bound(&cg.name, &cg.graph, 2).unwrap();
            let p = verify_partition_bound(&cg.name, &cg.graph, 2, &Rational::one()).unwrap();
            assert_eq!((h.lhs, h.rhs, h.relation), (p.lhs, p.rhs, p.relation));
        }
    }

    #[test]
    fn doubling_keeps_relation() {
        for cg in catalog::catalog_d3().iter().take(5) {
            let doubled = disjoint_union(&cg.graph, &cg.graph);
            for lam in [r(1, 2), r(3, 1)] {
                let a = verify_occupancy_bound("g", &cg.graph, 3, &lam).unwrap();
                let b = verify_occupancy_bound("gg", &doubled, 3, &lam).unwrap();
                assert_eq!(a.relation, b.relation);
                assert_eq!(a.lhs, b.lhs);
            }
        }
    }

    #[test]
    fn scan_small() {
        let k3 = make_complete(3).unwrap();
        let graphs = vec![
            CatalogGraph::new("2K3", disjoint_union(&k3, &k3), 2),
            CatalogGraph::new("C5", make_cycle(5).unwrap(), 2),
        ];
        let grid = vec![
            ActivityPair::new(r(2, 1), r(1, 1)).unwrap(),
            ActivityPair::symmetric(r(1, 3)).unwrap(),
        ];
        let rep = conjecture_scan(&graphs, &grid).unwrap();
        assert_eq!(rep.rows.len(), 8);
        assert!(rep.violations().is_empty());
        for row in rep.rows.iter().filter(|r| r.graph == "2K3") {
            assert_eq!(row.relation, Relation::Equal);
        }
        for row in rep.rows.iter().filter(|r| r.graph == "C5") {
            assert_eq!(row.relation, Relation::Less);
        }
        // on the diagonal the weighted check is the symmetric occupancy bound
        let diag = rep
            .rows
            .iter()
            .find(|r| r.graph == "C5" && r.check == ScanCheck::WeightedOccupancy && r.activity.lambda1() == r.activity.lambda2())
            .unwrap();
        let sym = verify_occupancy_bound("C5", &make_cycle(5).unwrap(), 2, &r(1, 3)).unwrap();
        assert_eq!(diag.lhs, sym.lhs.clone() / Rational::integer(2));
        assert_eq!(diag.rhs, sym.rhs / Rational::integer(2));
        let csv = rep.to_csv();
        assert!(csv.starts_with("graph,n,d,lambda1,lambda2,check,lhs,rhs,relation,equality_expected\n"));
        assert_eq!(csv.lines().count(), 9);
    }
}
