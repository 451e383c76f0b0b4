use proptest::prelude::*;

use wr_core::config::{enumerate_configs, local_partition_functions, ConfigSpace, Configuration};
use wr_core::extremal::{verify_occupancy_bound, verify_partition_bound, Relation};
use wr_core::graphs::{disjoint_union, make_random_regular};
use wr_core::lp::{dual_certificate, rearranged_margin, verify_dual_feasibility_on};
use wr_core::occupancy::alpha_k;
use wr_core::Rational;

#[test]
fn configuration_counts() {
    let counts: Vec<usize> = (1..=6).map(|d| enumerate_configs(d).unwrap().len()).collect();
    assert_eq!(counts, [4, 20, 120, 996, 12208, 241520]);
}

#[test]
fn dual_feasible_at_five() {
    let space = ConfigSpace::enumerate(5).unwrap();
    for lam in [Rational::new(1, 3), Rational::integer(4)] {
        let rep = verify_dual_feasibility_on(&dual_certificate(5, &lam).unwrap(), &space).unwrap();
        assert!(rep.violations.is_empty());
        assert!(rep.route_mismatches.is_empty());
        assert!(rep.rows.iter().all(|r| r.tight() == r.predicate));
    }
}

#[test]
fn tightness_matches_predicate_on_sample_at_six() {
    let lam = Rational::new(2, 3);
    let cert = dual_certificate(6, &lam).unwrap();
    let configs = enumerate_configs(6).unwrap();
    let mut sampled: Vec<&Configuration> = configs.iter().step_by(401).collect();
    sampled.push(configs.last().unwrap());
    sampled.push(&configs[0]);
    sampled.push(configs.iter().find(|c| c.describe() == "K6-full-lists").unwrap());
    for c in sampled {
        let s = local_partition_functions(c).unwrap();
        let slack = cert.slack(&s.alpha_v(&lam).unwrap(), &s.alpha_u(&lam).unwrap());
        assert!(!slack.is_negative(), "{c:?}");
        assert_eq!(slack.is_zero(), s.equality_predicate(), "{c:?}");
        assert_eq!(slack.signum(), rearranged_margin(&s, &lam).signum());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_regular_graphs_obey_bounds(
        half_n in 3usize..7,
        d in 1usize..5,
        seed in 0u64..1000,
        p in 1i64..30,
        q in 1i64..30,
    ) {
        let n = 2 * half_n;
        prop_assume!(d < n);
        let g = make_random_regular(n, d, seed).unwrap();
        let lam = Rational::new(p, q);
        let occ = verify_occupancy_bound("g", &g, d, &lam).unwrap();
        let part = verify_partition_bound("g", &g, d, &lam).unwrap();
        prop_assert!(occ.matches_theorem());
        prop_assert!(part.matches_theorem());
        prop_assert_eq!(occ.relation, part.relation);
        prop_assert!(occ.lhs <= alpha_k(d, &lam).unwrap());
        let doubled = verify_occupancy_bound("gg", &disjoint_union(&g, &g), d, &lam).unwrap();
        prop_assert_eq!(doubled.relation, occ.relation);
        prop_assert_ne!(occ.relation, Relation::Greater);
    }
}
