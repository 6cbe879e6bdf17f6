use std::collections::BTreeSet;

use diograph::labeler::verify_labeling;
use diograph::maximal::{self, build_maximal_gamma, CoprimeRule, DiophantineRule, LabelRule};
use diograph::numtheory::{critical_prime_power, divisors, factorize, PrimeTable};
use num_integer::Integer;
use proptest::prelude::*;

fn prime_set(x: u64) -> BTreeSet<u64> {
    factorize(x).primes().collect()
}

fn is_prime_power(x: u64) -> bool {
    factorize(x).len() == 1
}

#[test]
fn equal_degree_divisor_pairs_share_reduced_primes() {
    for n in 1..=200u64 {
        let degrees = maximal::label_degrees(n);
        for a in 1..=n {
            let ra = maximal::reduced_label(n, a);
            if ra == 1 {
                continue;
            }
            for b in (2 * a..=n).step_by(a as usize) {
                if is_prime_power(b) || degrees[a as usize - 1] != degrees[b as usize - 1] {
                    continue;
                }
                let rb = maximal::reduced_label(n, b);
                assert_eq!(prime_set(ra), prime_set(rb), "n={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn degree_matches_gcd_count() {
    for n in 1..=300u64 {
        for a in 1..=n {
            let direct = (1..=n).filter(|&x| x != a && n % a.gcd(&x) == 0).count() as u64;
            assert_eq!(maximal::degree_of_label(n, a), direct, "n={n} a={a}");
        }
    }
}

fn assert_edges_follow_rule<R: LabelRule<Label = u64>>(rule: &R) {
    let lg = build_maximal_gamma(rule);
    let g = lg.graph();
    for u in 1..=g.order() {
        for v in u + 1..=g.order() {
            let (a, b) = (lg.label(u), lg.label(v));
            assert_eq!(g.has_edge(u, v), rule.compatible(a, b), "{a}-{b}");
        }
    }
    assert!(verify_labeling(g, lg.labels(), rule).unwrap());
}

#[test]
fn maximal_graph_rejects_every_missing_edge() {
    for n in 1..=40u64 {
        assert_edges_follow_rule(&DiophantineRule::new(n));
        assert_edges_follow_rule(&CoprimeRule::new(n));
    }
}

#[test]
fn full_degree_labels_are_divisors_or_large_critical_powers() {
    for n in 1..=500u64 {
        let degrees = maximal::label_degrees(n);
        for a in 1..=n {
            assert_eq!(degrees[a as usize - 1] == n - 1, maximal::is_full_degree_label(n, a), "n={n} a={a}");
        }
    }
}

proptest! {
    #[test]
    fn full_degree_count_three_ways(n in 1u64..1000) {
        let t = PrimeTable::new(1000).unwrap();
        let built = maximal::build_dn(n).unwrap().graph().full_degree_count() as u64;
        prop_assert_eq!(maximal::full_degree_count_ie(n), built);
        prop_assert_eq!(maximal::full_degree_count_closed(n, &t).unwrap(), built);
    }

    #[test]
    fn witness_iff_gcd_does_not_divide(n in 2u64..5000, a in 1u64..5000, b in 1u64..5000) {
        let (a, b) = (a % n + 1, b % n + 1);
        prop_assume!(a != b);
        let w = maximal::nonadjacency_witness(n, a, b);
        prop_assert_eq!(w.is_some(), n % a.gcd(&b) != 0);
        if let Some(p) = w {
            let c = critical_prime_power(p, n).unwrap();
            prop_assert!(a % c == 0 && b % c == 0);
        }
    }

    #[test]
    fn coprime_divisor_multiple_keeps_degree(n in 2u64..5000, a in 0u64..5000, i in 0usize..64) {
        let ds = divisors(n);
        let s = ds[i % ds.len()];
        let a = a % (n / s) + 1;
        prop_assume!(s.gcd(&a) == 1);
        prop_assert_eq!(maximal::degree_of_label(n, a), maximal::degree_of_label(n, s * a));
    }

    #[test]
    fn edge_count_is_half_degree_sum(n in 1u64..3000) {
        let sum: u64 = maximal::label_degrees(n).iter().sum();
        prop_assert_eq!(sum % 2, 0);
        prop_assert_eq!(maximal::edge_count(n), sum / 2);
    }

    #[test]
    fn profile_chain(n in 4u64..3000) {
        let t = PrimeTable::new(3000).unwrap();
        let p = maximal::profile(n, &t).unwrap();
        prop_assert!(p.min_degree >= 3);
        prop_assert!(p.full_degree_count <= p.clique_number && p.clique_number <= n);
        prop_assert!(p.edge_count >= p.clique_number * (p.clique_number - 1) / 2);
        prop_assert!(p.independence_number >= 1);
        if !maximal::is_complete_dn(n, &t).unwrap() {
            prop_assert!(p.full_degree_count <= p.min_degree);
        }
    }
}
