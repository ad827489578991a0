use std::collections::BTreeSet;

use postulation_core::betti::{cancellation_reachable, dominated_by, strongly_incomparable, BettiDiagram, Incomparability};
use proptest::prelude::*;

fn diagram() -> impl Strategy<Value = BettiDiagram> {
    prop::collection::vec(0u64..4, 4 * 6).prop_map(|v| {
        BettiDiagram::from_entries((0..4).flat_map(|i| (0..6u32).map(move |j| (i, j))).zip(v).filter(|(_, x)| *x > 0))
    })
}

/// Every column vector reachable from `col` by consecutive cancellations.
/// Cancellations never mix internal degrees, so diagrams are searched one
/// degree at a time.
fn column_descendants(col: [u64; 4]) -> BTreeSet<[u64; 4]> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![col];
    while let Some(x) = stack.pop() {
        if !seen.insert(x) {
            continue;
        }
        for i in 0..3 {
            if x[i] > 0 && x[i + 1] > 0 {
                let mut y = x;
                y[i] -= 1;
                y[i + 1] -= 1;
                stack.push(y);
            }
        }
    }
    seen
}

fn column(b: &BettiDiagram, j: u32) -> [u64; 4] {
    [b.get(0, j), b.get(1, j), b.get(2, j), b.get(3, j)]
}

/// Applies `steps` to `b`: each step adds or removes a consecutive pair.
fn perturb(b: &BettiDiagram, steps: &[(u8, u8, bool)]) -> BettiDiagram {
    let mut c = b.clone();
    for &(i, j, add) in steps {
        let (i, j) = (i as usize % 3, j as u32 % 6);
        if add {
            c.add(i, j, 1);
            c.add(i + 1, j, 1);
        } else if c.get(i, j) > 0 && c.get(i + 1, j) > 0 {
            c.set(i, j, c.get(i, j) - 1);
            c.set(i + 1, j, c.get(i + 1, j) - 1);
        }
    }
    c
}

proptest! {
    #[test]
    fn reachable_from_itself(b in diagram()) {
        prop_assert!(cancellation_reachable(&b, &b).unwrap().is_some());
    }

    #[test]
    fn reachability_is_transitive(b in diagram(), s1 in prop::collection::vec((0u8..3, 0u8..6), 0..6), s2 in prop::collection::vec((0u8..3, 0u8..6), 0..6)) {
        let down = |x: &BettiDiagram, steps: &[(u8, u8)]| {
            let with: Vec<_> = steps.iter().map(|&(i, j)| (i, j, false)).collect();
            perturb(x, &with)
        };
        let c = down(&b, &s1);
        let d = down(&c, &s2);
        prop_assert!(cancellation_reachable(&b, &c).unwrap().is_some());
        prop_assert!(cancellation_reachable(&c, &d).unwrap().is_some());
        prop_assert!(cancellation_reachable(&b, &d).unwrap().is_some());
    }

    #[test]
    fn incomparable_means_unordered(b in diagram(), steps in prop::collection::vec((0u8..3, 0u8..6, any::<bool>()), 0..8)) {
        let c = perturb(&b, &steps);
        if strongly_incomparable(&b, &c).unwrap().is_strongly_incomparable() {
            prop_assert!(!dominated_by(&b, &c) && !dominated_by(&c, &b));
        }
    }
}

/// Exhaustive oracle: a common descendant exists iff in every degree the
/// reachable column sets meet, and the reported meet is one of them.
fn oracle_agrees(a: &BettiDiagram, b: &BettiDiagram) -> bool {
    let top = a.max_degree().max(b.max_degree());
    let verdict = strongly_incomparable(a, b).unwrap();
    for j in 0..=top {
        let da = column_descendants(column(a, j));
        let db = column_descendants(column(b, j));
        let meets = da.intersection(&db).next().is_some();
        match &verdict {
            Incomparability::StronglyIncomparable if !meets => return true,
            Incomparability::StronglyIncomparable => {}
            Incomparability::CommonDescendantExists(m) => {
                let c = column(m, j);
                if !(da.contains(&c) && db.contains(&c)) {
                    return false;
                }
            }
        }
    }
    !verdict.is_strongly_incomparable()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn matches_brute_force(b in diagram(), steps in prop::collection::vec((0u8..3, 0u8..6, any::<bool>()), 0..8)) {
        let c = perturb(&b, &steps);
        prop_assert!(oracle_agrees(&b, &c));
    }
}
