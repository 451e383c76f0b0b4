//! Local configurations around a vertex of a `d`-regular graph.
//!
//! A [`Configuration`] is a graph `H` on the `d` neighbours of a vertex `v`
//! together with a list `L_u ⊆ {1, 2}` per neighbour: the colours `u` may take
//! given whatever the rest of the graph is doing. Every local quantity needed by
//! the linear program is a function of `(H, L)` alone.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{check_cap, Error, Result};
use crate::graphs::{
    automorphisms, canonical_edge_code, canonical_labelled_form, edge_code, label_code,
    parse_edge_list, permuted_label_code, serialize_edge_list, CanonicalKey, Graph,
};
use crate::numerics::{binomial_power, IntPolynomial, Rational};
use crate::occupancy::require_positive;

/// Largest neighbourhood size for which local partition functions are computed.
pub const MAX_LOCAL_DEGREE: usize = 8;
/// Largest `d` for which the whole configuration space is enumerated.
pub const MAX_ENUMERATION_DEGREE: usize = 6;

/// Subset of `{1, 2}`: bit 0 is colour 1, bit 1 is colour 2.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColourList(u8);

impl ColourList {
    pub const EMPTY: ColourList = ColourList(0);
    pub const ONE: ColourList = ColourList(1);
    pub const TWO: ColourList = ColourList(2);
    pub const BOTH: ColourList = ColourList(3);
    pub const ALL: [ColourList; 4] = [Self::EMPTY, Self::ONE, Self::TWO, Self::BOTH];

    pub fn from_tag(tag: u8) -> Self {
        ColourList(tag & 3)
    }

    pub fn tag(self) -> u8 {
        self.0
    }

    /// Whether colour `1` or `2` is allowed; colour 0 is always allowed.
    pub fn allows(self, colour: u8) -> bool {
        match colour {
            0 => true,
            1 | 2 => self.0 & colour != 0,
            _ => false,
        }
    }
}

impl fmt::Display for ColourList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "-",
            1 => "1",
            2 => "2",
            _ => "12",
        })
    }
}

impl fmt::Debug for ColourList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for ColourList {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "-" => Ok(Self::EMPTY),
            "1" => Ok(Self::ONE),
            "2" => Ok(Self::TWO),
            "12" => Ok(Self::BOTH),
            _ => Err(Error::Parse {
                line: 1,
                msg: format!("colour list must be one of - 1 2 12, got {s:?}"),
            }),
        }
    }
}

/// A neighbourhood graph `H` on `d` vertices with per-vertex colour lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    h: Graph,
    lists: Vec<ColourList>,
}

/// The boundary cases that can carry dual-tight mass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NamedCase {
    /// Every list empty.
    Empty,
    /// Every list equal to `{i}`.
    Mono(u8),
    /// `H = K_d` with every list `{1, 2}`: the neighbourhood seen in `K_{d+1}`.
    Clique,
}

impl fmt::Display for NamedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedCase::Empty => write!(f, "C0"),
            NamedCase::Mono(i) => write!(f, "C1({i})"),
            NamedCase::Clique => write!(f, "CK"),
        }
    }
}

impl Configuration {
    pub fn new(h: Graph, lists: Vec<ColourList>) -> Result<Self> {
        if h.n() != lists.len() {
            return Err(Error::Usage(format!(
                "configuration graph has {} vertices but {} lists",
                h.n(),
                lists.len()
            )));
        }
        Ok(Configuration { h, lists })
    }

    /// Same list on every vertex.
    pub fn uniform(h: Graph, list: ColourList) -> Self {
        let lists = vec![list; h.n()];
        Configuration { h, lists }
    }

    /// The neighbourhood of a vertex of `K_{d+1}`.
    pub fn clique(d: usize) -> Result<Self> {
        Ok(Self::uniform(crate::graphs::make_complete(d)?, ColourList::BOTH))
    }

    pub fn d(&self) -> usize {
        self.h.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.h
    }

    pub fn lists(&self) -> &[ColourList] {
        &self.lists
    }

    fn tags(&self) -> Vec<u8> {
        self.lists.iter().map(|l| l.tag()).collect()
    }

    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        canonical_labelled_form(&self.h, &self.tags())
    }

    pub fn from_key(key: &CanonicalKey) -> Self {
        Configuration {
            h: key.graph(),
            lists: key.labels().into_iter().map(ColourList::from_tag).collect(),
        }
    }

    /// Vertex `u` moved to `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut lists = vec![ColourList::EMPTY; self.d()];
        for (u, &l) in self.lists.iter().enumerate() {
            lists[perm[u]] = l;
        }
        Configuration {
            h: self.h.relabel(perm),
            lists,
        }
    }

    pub fn lists_all_equal(&self) -> bool {
        self.lists.windows(2).all(|w| w[0] == w[1])
    }

    /// Number of lists containing `colour`.
    pub fn available(&self, colour: u8) -> usize {
        self.lists.iter().filter(|l| l.allows(colour)).count()
    }

    pub fn named_case(&self) -> Option<NamedCase> {
        if !self.lists_all_equal() || self.lists.is_empty() {
            return None;
        }
        match self.lists[0] {
            ColourList::EMPTY => Some(NamedCase::Empty),
            ColourList::ONE => Some(NamedCase::Mono(1)),
            ColourList::TWO => Some(NamedCase::Mono(2)),
            _ if self.h.is_union_of_complete(self.d()) => Some(NamedCase::Clique),
            _ => None,
        }
    }

    /// Short human label: the named case if any, otherwise edges and lists.
    pub fn describe(&self) -> String {
        let lists: Vec<String> = self.lists.iter().map(|l| l.to_string()).collect();
        let edges: Vec<String> = self.h.edges().map(|(u, v)| format!("{u}{v}")).collect();
        let body = format!(
            "H[{}] L[{}]",
            if edges.is_empty() { "-".into() } else { edges.join(",") },
            lists.join(",")
        );
        match self.named_case() {
            Some(NamedCase::Clique) => format!("K{}-full-lists", self.d()),
            Some(case) => format!("{case} {body}"),
            None => body,
        }
    }

    /// Edge list of `H` followed by `lists: l₀ l₁ …`.
    pub fn to_text(&self) -> String {
        let lists: Vec<String> = self.lists.iter().map(|l| l.to_string()).collect();
        format!("{}lists: {}\n", serialize_edge_list(&self.h), lists.join(" "))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (lists_line, line) = text
            .lines()
            .enumerate()
            .find(|(_, l)| l.trim_start().starts_with("lists:"))
            .ok_or_else(|| Error::Parse {
                line: text.lines().count().max(1),
                msg: "missing \"lists:\" line".into(),
            })?;
        let graph_text: String = text.lines().take(lists_line).collect::<Vec<_>>().join("\n");
        let h = parse_edge_list(&graph_text)?;
        let lists = line
            .trim_start()
            .trim_start_matches("lists:")
            .split_whitespace()
            .map(|t| {
                t.parse::<ColourList>().map_err(|_| Error::Parse {
                    line: lists_line + 1,
                    msg: format!("bad colour list {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(h, lists).map_err(|e| Error::Parse {
            line: lists_line + 1,
            msg: e.to_string(),
        })
    }

    /// Visits every colouring of `H` that respects the lists and has no
    /// adjacent 1–2 pair.
    pub(crate) fn for_each_colouring(&self, mut f: impl FnMut(&[u8])) {
        let d = self.d();
        let edges: Vec<_> = self.h.edges().collect();
        let options: Vec<Vec<u8>> = self
            .lists
            .iter()
            .map(|l| (0..=2).filter(|&c| l.allows(c)).collect())
            .collect();
        let mut idx = vec![0usize; d];
        let mut colours = vec![0u8; d];
        loop {
            for u in 0..d {
                colours[u] = options[u][idx[u]];
            }
            if edges.iter().all(|&(u, v)| colours[u] * colours[v] != 2) {
                f(&colours);
            }
            let mut i = 0;
            loop {
                if i == d {
                    return;
                }
                idx[i] += 1;
                if idx[i] < options[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({})", self.describe())
    }
}

/// Local partition functions of a configuration and the flags the tight-set
/// characterization depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigStats {
    pub d: usize,
    pub a1: usize,
    pub a2: usize,
    /// Weight of list-respecting colourings of `H` (centre uncoloured).
    pub p0: IntPolynomial,
    /// Weight using only colours `{0, 1}`, `(1+λ)^{a1}`.
    pub p1: IntPolynomial,
    pub p2: IntPolynomial,
    pub p12: IntPolynomial,
    /// `P0 + λ·P12`.
    pub pc: IntPolynomial,
    pub lists_all_equal: bool,
    /// Some valid colouring of `H` uses both colours.
    pub has_dichromatic: bool,
}

fn counts_to_poly(counts: &[u64]) -> IntPolynomial {
    IntPolynomial::from_coeffs(counts.iter().map(|&c| BigInt::from(c)).collect())
}

/// Computes `P0`, `P1`, `P2`, `P12`, `P_C` by enumerating colourings of `H`.
pub fn local_partition_functions(c: &Configuration) -> Result<ConfigStats> {
    let d = c.d();
    check_cap("configuration size d", d, MAX_LOCAL_DEGREE)?;
    let mut p0 = vec![0u64; d + 1];
    let mut mono = [vec![0u64; d + 1], vec![0u64; d + 1]];
    let mut has_dichromatic = false;
    c.for_each_colouring(|col| {
        let ones = col.iter().filter(|&&x| x == 1).count();
        let twos = col.iter().filter(|&&x| x == 2).count();
        p0[ones + twos] += 1;
        if twos == 0 {
            mono[0][ones] += 1;
        }
        if ones == 0 {
            mono[1][twos] += 1;
        }
        if ones > 0 && twos > 0 {
            has_dichromatic = true;
        }
    });
    let (a1, a2) = (c.available(1), c.available(2));
    let p1 = counts_to_poly(&mono[0]);
    let p2 = counts_to_poly(&mono[1]);
    if p1 != binomial_power(a1) || p2 != binomial_power(a2) {
        return Err(Error::Inconsistent(format!(
            "single-colour weights of {} are not (1+λ)^a",
            c.describe()
        )));
    }
    let p0 = counts_to_poly(&p0);
    let p12 = &p1 + &p2;
    let pc = &p0 + &p12.shift(1);
    Ok(ConfigStats {
        d,
        a1,
        a2,
        p0,
        p1,
        p2,
        p12,
        pc,
        lists_all_equal: c.lists_all_equal(),
        has_dichromatic,
    })
}

impl ConfigStats {
    /// `α^v = λ P12 / P_C`: probability the centre is coloured.
    pub fn alpha_v(&self, lambda: &Rational) -> Result<Rational> {
        require_positive(lambda, "λ")?;
        Ok(lambda * self.p12.eval(lambda) / self.pc.eval(lambda))
    }

    /// `α^u = λ (P0′ + λ P12′) / (d P_C)`: mean probability a neighbour is
    /// coloured.
    pub fn alpha_u(&self, lambda: &Rational) -> Result<Rational> {
        require_positive(lambda, "λ")?;
        let num = self.p0.derivative().eval(lambda) + lambda * self.p12.derivative().eval(lambda);
        Ok(lambda * num / (Rational::integer(self.d as i64) * self.pc.eval(lambda)))
    }

    /// `2P0 − P12`, the denominator of the rearranged dual constraint.
    pub fn gap_polynomial(&self) -> IntPolynomial {
        &self.p0.scale(&BigInt::from(2)) - &self.p12
    }

    /// True iff `2P0 − P12` and `P0′` both have nonnegative coefficients and a
    /// positive one, hence are positive for every `λ > 0`.
    pub fn positive_on_open_half_line(&self) -> bool {
        let positive = |p: &IntPolynomial| {
            !p.is_zero() && p.coeffs().iter().all(|c| !c.is_negative()) && p.coeffs().iter().any(|c| !c.is_zero())
        };
        positive(&self.gap_polynomial()) && positive(&self.p0.derivative())
    }

    /// Equality predicate of both claims: all lists equal, no dichromatic
    /// colouring.
    pub fn equality_predicate(&self) -> bool {
        self.lists_all_equal && !self.has_dichromatic
    }
}

pub fn alpha_v(c: &Configuration, lambda: &Rational) -> Result<Rational> {
    local_partition_functions(c)?.alpha_v(lambda)
}

pub fn alpha_u(c: &Configuration, lambda: &Rational) -> Result<Rational> {
    local_partition_functions(c)?.alpha_u(lambda)
}

/// Per-colour conditional probabilities from the joint law on `{v} ∪ V(H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerColourAlpha {
    /// `P[χ(v) = i | C]` for `i = 1, 2`.
    pub v: [Rational; 2],
    /// `(1/d) Σ_u P[χ(u) = i | C]` for `i = 1, 2`.
    pub u: [Rational; 2],
}

impl PerColourAlpha {
    pub fn alpha_v(&self) -> Rational {
        &self.v[0] + &self.v[1]
    }

    pub fn alpha_u(&self) -> Rational {
        &self.u[0] + &self.u[1]
    }
}

/// Enumerates joint colourings of the star `{v} ∪ V(H)` directly; independent
/// of the closed formulas in [`ConfigStats`].
pub fn per_colour_alpha(c: &Configuration, lambda: &Rational) -> Result<PerColourAlpha> {
    require_positive(lambda, "λ")?;
    let d = c.d();
    check_cap("configuration size d", d, MAX_LOCAL_DEGREE)?;
    let len = d + 2;
    let mut z = vec![0u64; len];
    let mut centre = [vec![0u64; len], vec![0u64; len]];
    let mut nbrs = [vec![0u64; len], vec![0u64; len]];
    c.for_each_colouring(|col| {
        for centre_colour in 0u8..=2 {
            if centre_colour != 0 && col.iter().any(|&x| x + centre_colour == 3) {
                continue;
            }
            let coloured = col.iter().filter(|&&x| x != 0).count() + usize::from(centre_colour != 0);
            z[coloured] += 1;
            if centre_colour != 0 {
                centre[centre_colour as usize - 1][coloured] += 1;
            }
            for i in 0..2 {
                let hits = col.iter().filter(|&&x| x == i as u8 + 1).count() as u64;
                nbrs[i][coloured] += hits;
            }
        }
    });
    let zval = counts_to_poly(&z).eval(lambda);
    let dd = Rational::integer(d.max(1) as i64);
    let ev = |counts: &[u64]| counts_to_poly(counts).eval(lambda) / &zval;
    Ok(PerColourAlpha {
        v: [ev(&centre[0]), ev(&centre[1])],
        u: [ev(&nbrs[0]) / &dd, ev(&nbrs[1]) / &dd],
    })
}

fn pair_count(d: usize) -> usize {
    d * d.saturating_sub(1) / 2
}

fn graph_from_pair_mask(d: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..d {
        for v in u + 1..d {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(d, &edges).expect("distinct pairs")
}

/// One representative graph per isomorphism class on `d` vertices, each the
/// labelling with the smallest edge code.
pub fn graph_class_representatives(d: usize) -> Result<Vec<Graph>> {
    check_cap("graph size for class enumeration", d, MAX_ENUMERATION_DEGREE)?;
    let total = 1u64 << pair_count(d);
    let mut reps: Vec<(u64, Graph)> = (0..total)
        .into_par_iter()
        .filter_map(|mask| {
            let g = graph_from_pair_mask(d, mask);
            let code = edge_code(&g);
            (code == canonical_edge_code(&g)).then_some((code, g))
        })
        .collect();
    reps.sort_by_key(|(code, _)| *code);
    Ok(reps.into_iter().map(|(_, g)| g).collect())
}

/// All configurations on `d` vertices up to list-preserving isomorphism,
/// sorted by canonical key.
///
/// For each graph class representative `H`, two list vectors give isomorphic
/// configurations iff they differ by an automorphism of `H`, so keeping the
/// orbit-minimal list vector yields exactly one member per class.
pub fn enumerate_configs(d: usize) -> Result<Vec<Configuration>> {
    if d == 0 {
        return Err(Error::Usage("configurations need d >= 1".into()));
    }
    check_cap("degree for configuration enumeration", d, MAX_ENUMERATION_DEGREE)?;
    let reps = graph_class_representatives(d)?;
    let mut keyed: Vec<(CanonicalKey, Configuration)> = reps
        .par_iter()
        .flat_map_iter(|h| {
            let auts = automorphisms(h).expect("d within cap");
            let code = edge_code(h);
            (0u32..1 << (2 * d)).filter_map(move |labels| {
                let tags: Vec<u8> = (0..d).map(|v| ((labels >> (2 * v)) & 3) as u8).collect();
                debug_assert_eq!(label_code(&tags), labels);
                let minimal = auts.iter().all(|perm| permuted_label_code(&tags, perm) >= labels);
                minimal.then(|| {
                    let key = CanonicalKey::from_parts(d, code, labels);
                    let lists = tags.into_iter().map(ColourList::from_tag).collect();
                    (key, Configuration { h: h.clone(), lists })
                })
            })
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, c)| c).collect())
}

/// A configuration with its canonical key and λ-independent statistics.
#[derive(Clone, Debug)]
pub struct ConfigEntry {
    pub config: Configuration,
    pub key: CanonicalKey,
    pub stats: ConfigStats,
}

/// Every configuration for one `d`, sorted by canonical key, with stats
/// precomputed so that each activity only costs polynomial evaluations.
#[derive(Clone, Debug)]
pub struct ConfigSpace {
    d: usize,
    entries: Vec<ConfigEntry>,
}

impl ConfigSpace {
    pub fn enumerate(d: usize) -> Result<Self> {
        let configs = enumerate_configs(d)?;
        let entries = configs
            .into_par_iter()
            .map(|config| {
                let key = config.canonical_key()?;
                let stats = local_partition_functions(&config)?;
                Ok(ConfigEntry { config, key, stats })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ConfigSpace { d, entries })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[ConfigEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Index of the `K_{d+1}` neighbourhood.
    pub fn clique_index(&self) -> usize {
        self.entries
            .iter()
            .position(|e| e.config.named_case() == Some(NamedCase::Clique))
            .expect("the clique neighbourhood is always enumerated")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{make_complete, make_path};

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn uniform(h: Graph, l: ColourList) -> Configuration {
        Configuration::uniform(h, l)
    }

    #[test]
    fn empty_lists() {
        let c0 = uniform(Graph::new(2), ColourList::EMPTY);
        let s = local_partition_functions(&c0).unwrap();
        assert_eq!(s.p0, IntPolynomial::one());
        assert_eq!(s.p12, IntPolynomial::constant(2));
        assert_eq!(s.pc, IntPolynomial::from_i64s(&[1, 2]));
        assert_eq!(s.alpha_v(&Rational::one()).unwrap(), r(2, 3));
        assert_eq!(s.alpha_u(&Rational::one()).unwrap(), Rational::zero());
        assert_eq!(c0.named_case(), Some(NamedCase::Empty));
    }

    #[test]
    fn clique_neighbourhood() {
        let ck = Configuration::clique(2).unwrap();
        let s = local_partition_functions(&ck).unwrap();
        let two = BigInt::from(2);
        assert_eq!(s.p0, &binomial_power(2).scale(&two) - &IntPolynomial::one());
        assert_eq!(s.p12, binomial_power(2).scale(&two));
        assert_eq!(s.pc, &binomial_power(3).scale(&two) - &IntPolynomial::one());
        assert_eq!(s.alpha_v(&Rational::one()).unwrap(), r(8, 15));
        assert_eq!(s.alpha_u(&Rational::one()).unwrap(), r(8, 15));
        assert!(!s.has_dichromatic);
        assert_eq!(ck.named_case(), Some(NamedCase::Clique));
        assert_eq!(ck.describe(), "K2-full-lists");
    }

    #[test]
    fn monochromatic_lists() {
        let c1 = uniform(Graph::new(2), ColourList::ONE);
        let s = local_partition_functions(&c1).unwrap();
        assert_eq!(s.p0, binomial_power(2));
        assert_eq!(s.p12, &binomial_power(2) + &IntPolynomial::one());
        assert_eq!(s.pc, &binomial_power(3) + &IntPolynomial::monomial(1, 1));
        assert_eq!(s.alpha_v(&Rational::one()).unwrap(), r(5, 9));
        assert_eq!(s.alpha_u(&Rational::one()).unwrap(), r(4, 9));
    }

    #[test]
    fn per_colour_examples() {
        let full_path = uniform(make_path(3).unwrap(), ColourList::BOTH);
        let pc = per_colour_alpha(&full_path, &r(2, 3)).unwrap();
        assert_eq!(pc.v[0], pc.v[1]);
        assert_eq!(pc.u[0], pc.u[1]);

        let c1 = uniform(Graph::new(2), ColourList::ONE);
        let pc = per_colour_alpha(&c1, &Rational::one()).unwrap();
        assert_eq!(pc.u, [r(4, 9), Rational::zero()]);

        let mixed = Configuration::new(
            make_path(3).unwrap(),
            vec![ColourList::ONE, ColourList::EMPTY, ColourList::ONE],
        )
        .unwrap();
        assert!(per_colour_alpha(&mixed, &r(3, 1)).unwrap().u[1].is_zero());
    }

    #[test]
    fn formulas_match_star_enumeration() {
        for d in 1..=4 {
            for c in enumerate_configs(d).unwrap() {
                let s = local_partition_functions(&c).unwrap();
                for lam in [r(1, 3), r(2, 1)] {
                    let pc = per_colour_alpha(&c, &lam).unwrap();
                    assert_eq!(pc.alpha_v(), s.alpha_v(&lam).unwrap(), "{c:?}");
                    assert_eq!(pc.alpha_u(), s.alpha_u(&lam).unwrap(), "{c:?}");
                    let zc = s.pc.eval(&lam);
                    assert_eq!(pc.v[0], &lam * s.p1.eval(&lam) / &zc);
                    assert_eq!(pc.v[1], &lam * s.p2.eval(&lam) / &zc);
                }
            }
        }
    }

    #[test]
    fn positivity_when_some_list_nonempty() {
        for d in 1..=4 {
            for c in enumerate_configs(d).unwrap() {
                let s = local_partition_functions(&c).unwrap();
                let any = c.lists().iter().any(|&l| l != ColourList::EMPTY);
                assert_eq!(s.positive_on_open_half_line(), any, "{c:?}");
                if !any {
                    assert!(s.gap_polynomial().is_zero());
                }
            }
        }
    }

    #[test]
    fn dichromatic_full_lists_only_off_clique() {
        for d in 1..=6 {
            for h in graph_class_representatives(d).unwrap() {
                let is_clique = h.edge_count() == d * (d - 1) / 2;
                let s = local_partition_functions(&uniform(h, ColourList::BOTH)).unwrap();
                assert_eq!(s.has_dichromatic, !is_clique);
            }
        }
    }

    #[test]
    fn enumeration_small_cases() {
        let d1 = enumerate_configs(1).unwrap();
        assert_eq!(d1.len(), 4);
        let d2 = enumerate_configs(2).unwrap();
        let keys: Vec<_> = d2.iter().map(|c| c.canonical_key().unwrap()).collect();
        let want_full = Configuration::clique(2).unwrap().canonical_key().unwrap();
        let want_empty = uniform(Graph::new(2), ColourList::EMPTY).canonical_key().unwrap();
        assert!(keys.contains(&want_full));
        assert!(keys.contains(&want_empty));
        // per graph on 2 vertices: 10 unordered list pairs
        assert_eq!(d2.len(), 20);
    }

    #[test]
    fn enumeration_keys_are_brute_force_canonical() {
        for d in 1..=4 {
            let configs = enumerate_configs(d).unwrap();
            let mut keys: Vec<_> = configs.iter().map(|c| c.canonical_key().unwrap()).collect();
            let sorted = keys.clone();
            keys.dedup();
            assert_eq!(keys.len(), configs.len(), "duplicates at d={d}");
            assert_eq!(keys, sorted, "not sorted at d={d}");
            // brute-force dedup of every labelled configuration
            let mut all = std::collections::BTreeSet::new();
            for mask in 0..1u64 << pair_count(d) {
                let h = graph_from_pair_mask(d, mask);
                for labels in 0u32..1 << (2 * d) {
                    let tags: Vec<u8> = (0..d).map(|v| ((labels >> (2 * v)) & 3) as u8).collect();
                    all.insert(canonical_labelled_form(&h, &tags).unwrap());
                }
            }
            assert_eq!(all.into_iter().collect::<Vec<_>>(), keys, "d={d}");
        }
    }

    #[test]
    fn stats_invariant_under_relabelling() {
        let configs = enumerate_configs(4).unwrap();
        let perms = [[1, 0, 3, 2], [3, 1, 0, 2], [2, 3, 1, 0]];
        let lam = r(3, 5);
        for c in configs.iter().step_by(7) {
            let s = local_partition_functions(c).unwrap();
            for p in &perms {
                let moved = c.relabel(p);
                let t = local_partition_functions(&moved).unwrap();
                assert_eq!((s.a1, s.a2, &s.p0), (t.a1, t.a2, &t.p0));
                assert_eq!(s.alpha_v(&lam).unwrap(), t.alpha_v(&lam).unwrap());
                assert_eq!(s.alpha_u(&lam).unwrap(), t.alpha_u(&lam).unwrap());
                assert_eq!(moved.canonical_key().unwrap(), c.canonical_key().unwrap());
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let c = Configuration::new(
            make_path(3).unwrap(),
            vec![ColourList::BOTH, ColourList::EMPTY, ColourList::TWO],
        )
        .unwrap();
        let text = c.to_text();
        assert_eq!(text, "3 2\n0 1\n1 2\nlists: 12 - 2\n");
        assert_eq!(Configuration::parse(&text).unwrap(), c);
        assert!(Configuration::parse("2 0\nlists: 1 3\n").is_err());
        assert!(Configuration::parse("2 0\nlists: 1\n").is_err());
        assert!(Configuration::parse("2 0\n").is_err());
    }

    #[test]
    fn caps() {
        assert!(enumerate_configs(7).is_err());
        assert!(enumerate_configs(0).is_err());
        assert!(local_partition_functions(&uniform(Graph::new(9), ColourList::ONE)).is_err());
        assert!(local_partition_functions(&uniform(make_complete(8).unwrap(), ColourList::BOTH)).is_ok());
    }
}
