use bqo_core::barrier::{
    block_to_barrier, chain_intervals, sub_fragment_after, triangle_lt, uniform_fragment, validate_fragment,
    BarrierError, FinSeq, Fragment, FragmentKind,
};
use proptest::prelude::*;

fn arb_set(max: usize) -> impl Strategy<Value = FinSeq> {
    prop::collection::btree_set(0..max, 1..=5).prop_map(FinSeq::from_set)
}

/// Some infinite `X` (here: finite and long enough) with `s ⊏ X` and
/// `t ⊏ X \ {min X}`.
fn triangle_oracle(s: &FinSeq, t: &FinSeq) -> bool {
    let top = s.last().unwrap().max(t.last().unwrap()) + 2;
    let lo = s.last().unwrap() + 1;
    (1u32..1 << (top - lo)).any(|y| {
        let x: Vec<usize> = s.entries().iter().copied().chain((lo..top).filter(|v| y >> (v - lo) & 1 == 1)).collect();
        t.len() + 1 < x.len() && x[1..].starts_with(t.entries())
    })
}

/// A front grown from the singletons by repeatedly replacing a member with
/// all of its one-step extensions. Members may be subsets of each other.
fn arb_block() -> impl Strategy<Value = Fragment> {
    (3usize..8, prop::collection::vec(any::<prop::sample::Index>(), 0..6)).prop_map(|(n, picks)| {
        let mut members: Vec<FinSeq> = (0..n).map(|v| FinSeq::from_set([v])).collect();
        for pick in picks {
            let open: Vec<usize> = (0..members.len()).filter(|&i| members[i].last().unwrap() + 1 < n).collect();
            if open.is_empty() {
                break;
            }
            let s = members.remove(open[pick.index(open.len())]);
            let top = s.last().unwrap();
            members.extend((top + 1..n).map(|v| s.extended(v)));
        }
        Fragment::new(0..n, members, Some(n), FragmentKind::Block)
    })
}

proptest! {
    #[test]
    fn triangle_matches_extension_oracle(s in arb_set(12), t in arb_set(12)) {
        prop_assert_eq!(triangle_lt(&s, &t).unwrap(), triangle_oracle(&s, &t));
    }

    #[test]
    fn chain_intervals_form_chains(n in 3usize..8, k in 1usize..4, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        prop_assume!(k < n);
        let f = uniform_fragment(0..n, k).unwrap();
        let s = &f.members()[i.index(f.len())];
        let after = sub_fragment_after(&f, s).unwrap();
        prop_assume!(!after.is_empty());
        let t = &after.members()[j.index(after.len())];
        let chain = chain_intervals(&f, s, t).unwrap();
        prop_assert_eq!(chain.first(), Some(s));
        prop_assert_eq!(chain.last(), Some(t));
        for w in chain.windows(2) {
            prop_assert!(triangle_lt(&w[0], &w[1]).unwrap());
        }
        // every interval lives inside s ∪ t
        let u = s.union(t);
        for r in &chain {
            prop_assert!(r.is_subset_of(&u));
        }
    }

    #[test]
    fn grown_blocks_refine_to_barriers(block in arb_block()) {
        prop_assert_eq!(validate_fragment(&block), Ok(()));
        match block_to_barrier(&block) {
            Ok(r) => {
                prop_assert_eq!(r.barrier.kind(), FragmentKind::Barrier);
                prop_assert_eq!(validate_fragment(&r.barrier), Ok(()));
                for (i, m) in r.barrier.members().iter().enumerate() {
                    prop_assert!(r.source_of(&block, i).is_prefix_of(m));
                }
            }
            Err(e) => prop_assert!(matches!(e, BarrierError::HorizonExhausted(_)), "{e}"),
        }
    }

    #[test]
    fn sub_fragments_stay_valid(n in 2usize..8, k in 1usize..3, i in any::<prop::sample::Index>()) {
        prop_assume!(k <= n);
        let f = uniform_fragment(0..n, k).unwrap();
        let s = &f.members()[i.index(f.len())];
        let after = sub_fragment_after(&f, s).unwrap();
        prop_assert_eq!(validate_fragment(&after), Ok(()));
        for t in after.members() {
            prop_assert!(t.first().unwrap() > s.last().unwrap());
        }
    }
}
