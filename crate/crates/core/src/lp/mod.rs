//! The local-configuration linear program, its exact solution, and the dual
//! certificate showing its optimum is `α_{K_{d+1}}`.
//!
//! Primal: maximise `Σ q(C) α^v(C)` over distributions `q` on configurations
//! subject to `Σ q(C) (α^v(C) − α^u(C)) = 0`. Dual: `Λ_p + Λ_c (α^v − α^u) ≥ α^v`
//! for every configuration, minimising `Λ_p`.

mod simplex;
mod vertex;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::config::{ConfigEntry, ConfigSpace, ConfigStats, Configuration, NamedCase};
use crate::error::{Error, Result};
use crate::graphs::CanonicalKey;
use crate::numerics::{IntPolynomial, Rational};
use crate::occupancy::{alpha_k, require_positive};

pub use simplex::{simplex_run, simplex_solve, SimplexRun, SIMPLEX_PIVOT_CAP};
pub use vertex::{optimal_vertices, vertex_enumeration_solve};

/// Variable index to value; zero entries are omitted.
pub type SparseSolution = BTreeMap<usize, Rational>;

/// `max c·x` subject to `Ax = b`, `x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpInstance {
    pub variables: Vec<String>,
    pub objective: Vec<Rational>,
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

impl LpInstance {
    pub fn new(
        variables: Vec<String>,
        objective: Vec<Rational>,
        rows: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
    ) -> Result<Self> {
        let n = variables.len();
        if objective.len() != n || rows.iter().any(|r| r.len() != n) || rows.len() != rhs.len() {
            return Err(Error::Usage("LP dimensions do not match".into()));
        }
        Ok(LpInstance {
            variables,
            objective,
            rows,
            rhs,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn objective_value(&self, x: &SparseSolution) -> Rational {
        x.iter().map(|(&j, v)| &self.objective[j] * v).sum()
    }

    pub fn is_feasible(&self, x: &SparseSolution) -> bool {
        x.values().all(|v| !v.is_negative())
            && self
                .rows
                .iter()
                .zip(&self.rhs)
                .all(|(row, b)| x.iter().map(|(&j, v)| &row[j] * v).sum::<Rational>() == *b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub solution: SparseSolution,
}

impl LpSolution {
    pub fn support(&self) -> Vec<usize> {
        self.solution.keys().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

/// The primal program for one `(d, λ)`, one variable per configuration class.
#[derive(Clone, Debug)]
pub struct PrimalProgram {
    pub d: usize,
    pub lambda: Rational,
    pub keys: Vec<CanonicalKey>,
    pub descriptions: Vec<String>,
    pub alpha_v: Vec<Rational>,
    pub alpha_u: Vec<Rational>,
    pub lp: LpInstance,
}

impl PrimalProgram {
    /// Descriptions of the configurations in `support`.
    pub fn describe_support(&self, support: &[usize]) -> Vec<String> {
        support.iter().map(|&j| self.descriptions[j].clone()).collect()
    }
}

pub fn build_primal(d: usize, lambda: &Rational) -> Result<PrimalProgram> {
    require_positive(lambda, "λ")?;
    build_primal_from(&ConfigSpace::enumerate(d)?, lambda)
}

pub fn build_primal_from(space: &ConfigSpace, lambda: &Rational) -> Result<PrimalProgram> {
    require_positive(lambda, "λ")?;
    let alphas: Vec<(Rational, Rational)> = space
        .entries()
        .par_iter()
        .map(|e| Ok((e.stats.alpha_v(lambda)?, e.stats.alpha_u(lambda)?)))
        .collect::<Result<_>>()?;
    let (alpha_v, alpha_u): (Vec<_>, Vec<_>) = alphas.into_iter().unzip();
    let keys: Vec<CanonicalKey> = space.entries().iter().map(|e| e.key).collect();
    let balance = alpha_v.iter().zip(&alpha_u).map(|(v, u)| v - u).collect();
    let lp = LpInstance::new(
        keys.iter().map(|k| k.to_string()).collect(),
        alpha_v.clone(),
        vec![vec![Rational::one(); keys.len()], balance],
        vec![Rational::one(), Rational::zero()],
    )?;
    Ok(PrimalProgram {
        d: space.d(),
        lambda: lambda.clone(),
        descriptions: space.entries().iter().map(|e| e.config.describe()).collect(),
        keys,
        alpha_v,
        alpha_u,
        lp,
    })
}

/// Dual multipliers `(Λ_p, Λ_c)` for one `(d, λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate {
    pub d: usize,
    pub activity: Rational,
    pub lambda_p: Rational,
    pub lambda_c: Rational,
}

/// Both closed forms of `Λ_c`: `1 − (α_K/2λ)(1+2λ)` and
/// `(α_K/2λ)((1+λ)^d − 1)/(1+λ)^d`.
pub fn lambda_c_forms(d: usize, lambda: &Rational) -> Result<(Rational, Rational)> {
    let a = alpha_k(d, lambda)?;
    let two_lambda = Rational::integer(2) * lambda;
    let half = &a / &two_lambda;
    let first = Rational::one() - &half * (Rational::one() + &two_lambda);
    let pow_d = (Rational::one() + lambda).pow(d as i32);
    let second = &half * (&pow_d - Rational::one()) / &pow_d;
    Ok((first, second))
}

/// `Λ_p = α_K`, and `Λ_c` chosen so the empty-list constraint is tight.
pub fn dual_certificate(d: usize, lambda: &Rational) -> Result<DualCertificate> {
    let (first, second) = lambda_c_forms(d, lambda)?;
    if first != second {
        return Err(Error::Inconsistent(format!(
            "closed forms of Λ_c disagree at d={d}, λ={lambda}: {first} vs {second}"
        )));
    }
    Ok(DualCertificate {
        d,
        activity: lambda.clone(),
        lambda_p: alpha_k(d, lambda)?,
        lambda_c: first,
    })
}

impl DualCertificate {
    /// `Λ_p + Λ_c(α^v − α^u) − α^v`.
    pub fn slack(&self, alpha_v: &Rational, alpha_u: &Rational) -> Rational {
        &self.lambda_p + &self.lambda_c * (alpha_v - alpha_u) - alpha_v
    }

    /// Objective of the dual, `Λ_p`.
    pub fn value(&self) -> &Rational {
        &self.lambda_p
    }
}

/// `d(1+λ)^d (2P0 − P12) − ((1+λ)^d − 1)(P0′ + λP12′)`: the dual constraint
/// with denominators cleared. Nonnegative iff the constraint holds.
pub fn rearranged_margin(stats: &ConfigStats, lambda: &Rational) -> Rational {
    let pow_d = (Rational::one() + lambda).pow(stats.d as i32);
    let gap = stats.gap_polynomial().eval(lambda);
    let q = stats.p0.derivative().eval(lambda) + lambda * stats.p12.derivative().eval(lambda);
    Rational::integer(stats.d as i64) * &pow_d * gap - (pow_d - Rational::one()) * q
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualRow {
    pub key: CanonicalKey,
    pub description: String,
    pub case: Option<NamedCase>,
    pub a1: usize,
    pub a2: usize,
    pub alpha_v: Rational,
    pub alpha_u: Rational,
    pub slack: Rational,
    pub rearranged: Rational,
    /// `lists_all_equal ∧ ¬has_dichromatic`.
    pub predicate: bool,
}

impl DualRow {
    pub fn tight(&self) -> bool {
        self.slack.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualReport {
    pub certificate: DualCertificate,
    pub rows: Vec<DualRow>,
    pub violations: Vec<CanonicalKey>,
    /// Sorted canonical keys with zero slack.
    pub tight_set: Vec<CanonicalKey>,
    /// Configurations where the direct slack and the rearranged margin
    /// differ in sign.
    pub route_mismatches: Vec<CanonicalKey>,
}

impl DualReport {
    pub fn tight_cases(&self) -> BTreeSet<Option<NamedCase>> {
        self.rows.iter().filter(|r| r.tight()).map(|r| r.case).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,a1,a2,alpha_v,alpha_u,slack,tight\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.key,
                r.a1,
                r.a2,
                r.alpha_v,
                r.alpha_u,
                r.slack,
                r.tight()
            );
        }
        out
    }
}

fn dual_row(cert: &DualCertificate, e: &ConfigEntry) -> Result<DualRow> {
    let lambda = &cert.activity;
    let alpha_v = e.stats.alpha_v(lambda)?;
    let alpha_u = e.stats.alpha_u(lambda)?;
    Ok(DualRow {
        key: e.key,
        description: e.config.describe(),
        case: e.config.named_case(),
        a1: e.stats.a1,
        a2: e.stats.a2,
        slack: cert.slack(&alpha_v, &alpha_u),
        rearranged: rearranged_margin(&e.stats, lambda),
        alpha_v,
        alpha_u,
        predicate: e.stats.equality_predicate(),
    })
}

/// Checks every dual constraint exactly, by the direct slack and by the
/// rearranged inequality.
pub fn verify_dual_feasibility(cert: &DualCertificate) -> Result<DualReport> {
    verify_dual_feasibility_on(cert, &ConfigSpace::enumerate(cert.d)?)
}

pub fn verify_dual_feasibility_on(cert: &DualCertificate, space: &ConfigSpace) -> Result<DualReport> {
    if space.d() != cert.d {
        return Err(Error::Usage(format!(
            "certificate is for d={} but configurations are for d={}",
            cert.d,
            space.d()
        )));
    }
    let rows: Vec<DualRow> = space
        .entries()
        .par_iter()
        .map(|e| dual_row(cert, e))
        .collect::<Result<_>>()?;
    let select = |f: &dyn Fn(&DualRow) -> bool| rows.iter().filter(|r| f(r)).map(|r| r.key).collect();
    Ok(DualReport {
        certificate: cert.clone(),
        violations: select(&|r| r.slack.is_negative()),
        tight_set: select(&|r| r.tight()),
        route_mismatches: select(&|r| r.slack.signum() != r.rearranged.signum()),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub tight: bool,
}

impl ClaimCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        ClaimCheck {
            holds: lhs <= rhs,
            tight: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim_p12: ClaimCheck,
    pub claim_p0: ClaimCheck,
    /// The predicate both tight flags must equal.
    pub predicate: bool,
}

impl ClaimReport {
    pub fn consistent(&self) -> bool {
        self.claim_p12.holds
            && self.claim_p0.holds
            && self.claim_p12.tight == self.predicate
            && self.claim_p0.tight == self.predicate
    }
}

/// `λP12′/(2P0 − P12) ≤ dλ(1+λ)^{d−1}/((1+λ)^d − 1)` and
/// `P0′/(2P0 − P12) ≤ d(1+λ)^{d−1}/((1+λ)^d − 1)`.
pub fn verify_claims(c: &Configuration, lambda: &Rational) -> Result<ClaimReport> {
    require_positive(lambda, "λ")?;
    let stats = crate::config::local_partition_functions(c)?;
    claims_from_stats(&stats, lambda)
}

pub fn claims_from_stats(stats: &ConfigStats, lambda: &Rational) -> Result<ClaimReport> {
    let gap = stats.gap_polynomial().eval(lambda);
    if gap.is_zero() {
        return Err(Error::Domain(
            "claims are undefined when every list is empty".into(),
        ));
    }
    let d = stats.d;
    let base = Rational::one() + lambda;
    let bound = Rational::integer(d as i64) * base.pow(d as i32 - 1) / (base.pow(d as i32) - Rational::one());
    let p12 = ClaimCheck::new(
        lambda * stats.p12.derivative().eval(lambda) / &gap,
        lambda * &bound,
    );
    let p0 = ClaimCheck::new(stats.p0.derivative().eval(lambda) / &gap, bound);
    Ok(ClaimReport {
        claim_p12: p12,
        claim_p0: p0,
        predicate: stats.equality_predicate(),
    })
}

/// `E_C[X_i | X_i > 0]` computed two ways, against the `K_d` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalExpectation {
    pub lhs: Rational,
    /// Same quantity via the decomposition over `S = χ⁻¹(other colour)`.
    pub lhs_decomposed: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub tight: bool,
    /// `i` available at every vertex and no dichromatic colouring.
    pub predicate: bool,
}

pub fn conditional_expectation_check(
    c: &Configuration,
    colour: u8,
    lambda: &Rational,
) -> Result<ConditionalExpectation> {
    require_positive(lambda, "λ")?;
    if colour != 1 && colour != 2 {
        return Err(Error::Usage(format!("colour must be 1 or 2, got {colour}")));
    }
    let d = c.d();
    if c.available(colour) == 0 {
        return Err(Error::Domain(format!("colour {colour} is in no list")));
    }
    let other = 3 - colour;

    let mut weight = vec![0u64; d + 1];
    let mut first_moment = vec![0u64; d + 1];
    let mut has_dichromatic = false;
    c.for_each_colouring(|col| {
        let xi = col.iter().filter(|&&x| x == colour).count();
        let coloured = col.iter().filter(|&&x| x != 0).count();
        if xi > 0 {
            weight[coloured] += 1;
            first_moment[coloured] += xi as u64;
            if coloured > xi {
                has_dichromatic = true;
            }
        }
    });
    let poly = |v: &[u64]| IntPolynomial::from_coeffs(v.iter().map(|&x| x.into()).collect());
    let lhs = poly(&first_moment).eval(lambda) / poly(&weight).eval(lambda);

    let h = c.graph();
    let lists = c.lists();
    let others: Vec<usize> = (0..d).filter(|&u| lists[u].allows(other)).collect();
    let base = Rational::one() + lambda;
    let mut num = Rational::zero();
    let mut den = Rational::zero();
    for mask in 0u64..1 << others.len() {
        let s: Vec<usize> = (0..others.len()).filter(|b| mask >> b & 1 == 1).map(|b| others[b]).collect();
        let a_s = (0..d)
            .filter(|&u| lists[u].allows(colour) && !s.contains(&u) && s.iter().all(|&w| !h.has_edge(u, w)))
            .count();
        if a_s == 0 {
            continue;
        }
        let weight_s = lambda.pow(s.len() as i32);
        num = num + &weight_s * Rational::integer(a_s as i64) * lambda * base.pow(a_s as i32 - 1);
        den = den + &weight_s * (base.pow(a_s as i32) - Rational::one());
    }
    let lhs_decomposed = num / den;
    if lhs != lhs_decomposed {
        return Err(Error::Inconsistent(format!(
            "conditional expectation routes disagree on {}: {lhs} vs {lhs_decomposed}",
            c.describe()
        )));
    }
    let rhs = lambda * Rational::integer(d as i64) * base.pow(d as i32 - 1)
        / (base.pow(d as i32) - Rational::one());
    Ok(ConditionalExpectation {
        holds: lhs <= rhs,
        tight: lhs == rhs,
        predicate: c.available(colour) == d && !has_dichromatic,
        lhs,
        lhs_decomposed,
        rhs,
    })
}

/// `a(1+λ)^{a−1} / ((1+λ)^a − 1)`.
pub fn single_colour_ratio(a: usize, lambda: &Rational) -> Rational {
    let base = Rational::one() + lambda;
    Rational::integer(a as i64) * base.pow(a as i32 - 1) / (base.pow(a as i32) - Rational::one())
}

/// Strict increase of [`single_colour_ratio`] over `a = 1..=d`.
pub fn monotone_lhs_check(d: usize, lambda: &Rational) -> Result<bool> {
    require_positive(lambda, "λ")?;
    let values: Vec<Rational> = (1..=d).map(|a| single_colour_ratio(a, lambda)).collect();
    Ok(values.windows(2).all(|w| w[0] < w[1]))
}

#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub d: usize,
    pub lambda: Rational,
    pub value: Rational,
    pub tight_set: Vec<CanonicalKey>,
    pub tight_cases: BTreeSet<Option<NamedCase>>,
    /// Every tight configuration has equal lists and no dichromatic colouring.
    pub tight_satisfy_predicate: bool,
    /// `α^u < α^v` on every tight configuration other than the clique.
    pub strict_balance_off_clique: bool,
    pub simplex_support: Vec<CanonicalKey>,
    /// Supports of all optimal basic solutions.
    pub vertex_supports: Vec<Vec<CanonicalKey>>,
    pub clique: CanonicalKey,
}

impl UniquenessReport {
    /// Point mass on the clique neighbourhood is the only optimum.
    pub fn unique_clique_optimum(&self) -> bool {
        self.simplex_support == [self.clique] && self.vertex_supports == [vec![self.clique]]
    }

    pub fn passes(&self) -> bool {
        self.tight_satisfy_predicate
            && self.strict_balance_off_clique
            && self.unique_clique_optimum()
            && !self.tight_cases.contains(&None)
    }
}

pub fn uniqueness_check(d: usize, lambda: &Rational) -> Result<UniquenessReport> {
    uniqueness_check_on(&ConfigSpace::enumerate(d)?, lambda)
}

pub fn uniqueness_check_on(space: &ConfigSpace, lambda: &Rational) -> Result<UniquenessReport> {
    let d = space.d();
    let cert = dual_certificate(d, lambda)?;
    let report = verify_dual_feasibility_on(&cert, space)?;
    let tight: Vec<&DualRow> = report.rows.iter().filter(|r| r.tight()).collect();
    let program = build_primal_from(space, lambda)?;
    let simplex = simplex_solve(&program.lp)?;
    let simplex = simplex
        .optimal()
        .ok_or_else(|| Error::Inconsistent(format!("primal program not solved: {simplex:?}")))?;
    let vertices = optimal_vertices(&program.lp)?;
    if vertices.iter().any(|v| v.value != simplex.value) {
        return Err(Error::Inconsistent("solvers disagree on the optimum".into()));
    }
    let keys = |s: &LpSolution| s.support().into_iter().map(|j| program.keys[j]).collect::<Vec<_>>();
    Ok(UniquenessReport {
        d,
        lambda: lambda.clone(),
        value: simplex.value.clone(),
        tight_set: report.tight_set.clone(),
        tight_cases: report.tight_cases(),
        tight_satisfy_predicate: tight.iter().all(|r| r.predicate),
        strict_balance_off_clique: tight
            .iter()
            .filter(|r| r.case != Some(NamedCase::Clique))
            .all(|r| r.alpha_u < r.alpha_v),
        simplex_support: keys(simplex),
        vertex_supports: vertices.iter().map(keys).collect(),
        clique: space.entries()[space.clique_index()].key,
    })
}
