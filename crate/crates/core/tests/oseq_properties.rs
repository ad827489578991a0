mod common;

use std::collections::BTreeSet;

use postulation_core::monomial_ideal::{graded_dimension, lex_ideal};
use postulation_core::oseq::{binomial, binomial_expansion, is_o_sequence, macaulay_bound, OSequence};
use postulation_core::Monomial;
use proptest::prelude::*;

/// Largest possible `dim (S/J)_{i+1}` when `dim (S/J)_i = a`, with `S` in
/// `i + 1` variables: the standard monomials in degree `i` are the `a`
/// lex-last ones, and a monomial of degree `i + 1` is standard iff every
/// degree-`i` divisor is.
fn lex_segment_growth(a: usize, i: u32) -> u64 {
    let n = i as usize + 1;
    let all = postulation_core::algebra::monomials_of_degree(n, i);
    let last: BTreeSet<&Monomial> = all.iter().rev().take(a).collect();
    postulation_core::algebra::monomials_of_degree(n, i + 1)
        .iter()
        .filter(|m| (0..n).filter_map(|k| m.div_var(k)).all(|q| last.contains(&q)))
        .count() as u64
}

#[test]
fn expansions_reassemble() {
    for i in 1..=6u32 {
        for a in 1..=500u64 {
            let e = binomial_expansion(a, i).unwrap();
            assert_eq!(e.value(), a as u128, "a = {a}, i = {i}");
            let bottoms: Vec<u32> = e.terms.iter().map(|t| t.1).collect();
            assert!(bottoms.windows(2).all(|w| w[0] == w[1] + 1), "{e}");
            assert_eq!(bottoms[0], i);
            // uniqueness: tops strictly decrease and stay >= bottoms
            assert!(e.terms.windows(2).all(|w| w[0].0 > w[1].0));
            assert!(e.terms.iter().all(|&(m, k)| m >= k as u64));
        }
    }
}

#[test]
fn bound_matches_lex_segments() {
    for i in 1..=4u32 {
        let count = binomial(2 * i as u64, i as u64).unwrap() as usize;
        for a in 1..=200.min(count) {
            assert_eq!(macaulay_bound(a as u64, i).unwrap(), lex_segment_growth(a, i), "a = {a}, i = {i}");
        }
    }
}

#[test]
fn bound_is_monotone() {
    for i in 1..=8u32 {
        let bounds: Vec<u64> = (0..=400).map(|a| macaulay_bound(a, i).unwrap()).collect();
        assert!(bounds.windows(2).all(|w| w[0] <= w[1]), "degree {i}");
    }
}

proptest! {
    #[test]
    fn difference_then_accumulate(steps in prop::collection::vec(0u64..100, 1..20)) {
        let values: Vec<u64> = steps.iter().scan(0, |acc, &x| { *acc += x; Some(*acc) }).collect();
        let last = *values.last().unwrap();
        let s = OSequence::eventually(values, last).unwrap();
        let back = s.difference(1).unwrap().accumulate(1).unwrap();
        let n = s.len() + 2;
        prop_assert_eq!(back.prefix(n), s.prefix(n));
        prop_assert_eq!(back.eventual(), s.eventual());
    }

    #[test]
    fn accumulate_then_difference(values in prop::collection::vec(0u64..1000, 0..20)) {
        let s = OSequence::finite(values);
        let back = s.accumulate(1).unwrap().difference(1).unwrap();
        let n = s.len() + 2;
        prop_assert_eq!(back.prefix(n), s.prefix(n));
    }

    #[test]
    fn accepted_sequences_are_realized_by_lex_ideals(h in common::artinian_strategy(10, 40)) {
        prop_assert!(is_o_sequence(&h).unwrap().passed());
        let j = lex_ideal(&h, 3).unwrap();
        for d in 0..h.len() + 3 {
            prop_assert_eq!(graded_dimension(&j, d as u32), h.get(d), "degree {}", d);
        }
    }
}
