mod common;

use std::collections::BTreeSet;

use fpp_quotients::fibration::{
    admissible_multiplicities, geometric_filter, max_multiple_fibres, solve_multiplicities,
    validate_configuration, FibreConfiguration, KodairaType,
};

fn solved(n: u32) -> Vec<Vec<u64>> {
    solve_multiplicities(n)
        .into_iter()
        .map(|s| s.multiplicities.into_iter().map(u64::from).collect())
        .collect()
}

#[test]
fn divisor_scan_agrees_up_to_100() {
    for n in 1..=100u32 {
        // The scan goes one fibre beyond the analytic bound.
        let oracle = common::divisor_scan(n as u64, max_multiple_fibres(n) + 1);
        assert_eq!(solved(n), oracle, "n = {n}");
    }
}

#[test]
fn printed_cases() {
    assert_eq!(solved(2), vec![vec![2, 2, 2]]);
    assert_eq!(solved(3), vec![vec![3, 3]]);
    assert_eq!(solved(4), vec![vec![2, 4]]);
    assert_eq!(solved(6), vec![vec![2, 3]]);
    for n in [1, 5, 7, 8, 9, 10, 11, 12] {
        assert!(solved(n).is_empty());
    }
}

#[test]
fn multiplicities_divide_n() {
    for n in 1..=100 {
        for s in solve_multiplicities(n) {
            assert!(s.multiplicities.iter().all(|m| n % m == 0));
        }
    }
}

#[test]
fn filtered_set() {
    let all: BTreeSet<_> = (1..=100).flat_map(solve_multiplicities).collect();
    let kept: BTreeSet<Vec<u32>> = geometric_filter(&all)
        .into_iter()
        .map(|s| s.multiplicities)
        .collect();
    let expected: BTreeSet<Vec<u32>> = [vec![2, 3], vec![2, 4], vec![3, 3]].into_iter().collect();
    assert_eq!(kept, expected);
    assert_eq!(admissible_multiplicities(), expected);
}

#[test]
fn quotient_configurations() {
    let parse = |s: &str| s.parse::<KodairaType>().unwrap();
    for mults in [vec![2, 3], vec![2, 4], vec![3, 3]] {
        let a = FibreConfiguration::from_counts(&[(parse("I3"), 4)], mults.clone());
        let b = FibreConfiguration::from_counts(&[(parse("I1"), 3), (parse("I9"), 1)], mults);
        for cfg in [a, b] {
            let rep = validate_configuration(&cfg);
            assert_eq!((rep.euler_total, rep.picard_total), (12, 10));
            assert!(rep.passed());
        }
    }
    let short = FibreConfiguration::from_counts(&[(parse("I3"), 3)], vec![2, 3]);
    assert_eq!(validate_configuration(&short).euler_total, 9);
    assert!(!validate_configuration(&short).passed());
    assert!("I0*".parse::<KodairaType>().is_err());
}
