#![allow(dead_code)]

use bqo_core::poset::Poset;
use proptest::prelude::*;

/// Reflexive-transitive closure of a relation given as a bool matrix.
pub fn closure(n: usize, le: &mut [bool]) {
    for i in 0..n {
        le[i * n + i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if le[i * n + k] {
                for j in 0..n {
                    if le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
    }
}

/// Random posets: closure of a random upward relation, then relabelled.
pub fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (0..=max)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(prop::bool::weighted(0.35), n * n),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, bits, perm)| {
            let mut le = vec![false; n * n];
            for i in 0..n {
                for j in i + 1..n {
                    le[i * n + j] = bits[i * n + j];
                }
            }
            closure(n, &mut le);
            Poset::from_fn(n, |a, b| le[perm[a] * n + perm[b]]).expect("closure of an acyclic relation")
        })
}

pub fn arb_nonempty_poset(max: usize) -> impl Strategy<Value = Poset> {
    arb_poset(max).prop_filter("nonempty", |p| !p.is_empty())
}
