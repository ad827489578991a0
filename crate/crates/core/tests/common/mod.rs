#![allow(dead_code)]

use postulation_core::oseq::{macaulay_bound, OSequence};
use proptest::prelude::*;

/// Hilbert function of an Artinian quotient of `k[x1,x2,x3]`, driven by `picks`.
/// Each pick chooses the next value in `[0, bound]`, scaled; values are capped at `cap`.
pub fn artinian_oseq(picks: &[u8], cap: u64) -> OSequence {
    let mut h = vec![1u64];
    for (i, &p) in picks.iter().enumerate() {
        let prev = *h.last().unwrap();
        let bound = if i == 0 { 3 } else { macaulay_bound(prev, i as u32).unwrap() };
        let bound = bound.min(cap);
        let next = (p as u64 * (bound + 1)) / 256;
        if next == 0 {
            break;
        }
        h.push(next);
    }
    OSequence::finite(h)
}

/// Hilbert function of an Artinian quotient of `k[x, y]` (the `Δ²H` of an ACM curve).
pub fn two_variable_oseq(picks: &[u8]) -> Vec<u64> {
    let mut h = vec![1u64];
    for (i, &p) in picks.iter().enumerate() {
        let prev = *h.last().unwrap();
        let bound = if prev == i as u64 + 1 { prev + 1 } else { prev };
        let next = (p as u64 * (bound + 1)) / 256;
        if next == 0 {
            break;
        }
        h.push(next);
    }
    h
}

/// `ΔH` of an ACM curve, from its second difference.
pub fn curve_difference(second: &[u64]) -> OSequence {
    let mut acc = 0;
    let vals: Vec<u64> = second
        .iter()
        .map(|&c| {
            acc += c;
            acc
        })
        .collect();
    OSequence::eventually(vals, acc).unwrap()
}

/// `ΔH` with `d > 3` and `t <= s - 1`, the hypotheses of the construction.
pub fn admissible_delta_h() -> impl Strategy<Value = OSequence> {
    prop::collection::vec(any::<u8>(), 1..12).prop_filter_map("needs d > 3 and t <= s - 1", |picks| {
        let second = two_variable_oseq(&picks);
        let d: u64 = second.iter().sum();
        let t = second.len() as u64 - 1;
        (d > 3 && t < (d - 1) / 2).then(|| curve_difference(&second))
    })
}

pub fn artinian_strategy(max_len: usize, cap: u64) -> impl Strategy<Value = OSequence> {
    prop::collection::vec(1u8.., 0..max_len).prop_map(move |p| artinian_oseq(&p, cap))
}
