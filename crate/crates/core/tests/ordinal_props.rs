use std::cmp::Ordering;

use bqo_core::ordinal::{
    cnf_add, cnf_compare, head_remove, omega_alpha_compare, suffix_ranking, two_bar_times_finite, two_bar_times_gamma,
    Alpha, DecSeq, Ordinal,
};
use proptest::prelude::*;

/// Ordinals below `ω^4` as coefficients of `ω^0 .. ω^3`.
#[derive(Clone, Debug)]
struct Small([u64; 4]);

impl Small {
    fn to_ordinal(&self) -> Ordinal {
        (0..4).rev().filter(|&e| self.0[e] > 0).fold(Ordinal::zero(), |acc, e| {
            cnf_add(&acc, &Ordinal::omega_power(Ordinal::finite(e as u64), self.0[e]))
        })
    }

    fn cmp(&self, other: &Small) -> Ordering {
        (0..4).rev().map(|e| self.0[e].cmp(&other.0[e])).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }

    fn add(&self, other: &Small) -> Small {
        match (0..4).rev().find(|&e| other.0[e] > 0) {
            None => self.clone(),
            Some(top) => {
                let mut c = [0; 4];
                for e in 0..4 {
                    c[e] = match e.cmp(&top) {
                        Ordering::Greater => self.0[e],
                        Ordering::Equal => self.0[e] + other.0[e],
                        Ordering::Less => other.0[e],
                    };
                }
                Small(c)
            }
        }
    }
}

fn arb_small() -> impl Strategy<Value = Small> {
    prop::array::uniform4(prop_oneof![Just(0u64), 1u64..4]).prop_map(Small)
}

/// Ordinals with nested exponents, built by addition.
fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
    let leaf = (0u64..4).prop_map(Ordinal::finite);
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop::collection::vec((inner, 1u64..3), 1..3).prop_map(|parts| {
            parts
                .into_iter()
                .fold(Ordinal::zero(), |acc, (e, c)| cnf_add(&acc, &Ordinal::omega_power(e, c)))
        })
    })
}

fn arb_decseq(k: usize) -> impl Strategy<Value = DecSeq> {
    prop::collection::vec(0..k, 0..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        DecSeq(v)
    })
}

proptest! {
    #[test]
    fn comparison_matches_coefficients(a in arb_small(), b in arb_small()) {
        prop_assert_eq!(cnf_compare(&a.to_ordinal(), &b.to_ordinal()), a.cmp(&b));
    }

    #[test]
    fn addition_matches_coefficients(a in arb_small(), b in arb_small()) {
        prop_assert_eq!(cnf_add(&a.to_ordinal(), &b.to_ordinal()), a.add(&b).to_ordinal());
    }

    #[test]
    fn addition_laws(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
        prop_assert_eq!(cnf_add(&cnf_add(&a, &b), &c), cnf_add(&a, &cnf_add(&b, &c)));
        prop_assert_eq!(cnf_add(&a, &Ordinal::zero()), a.clone());
        prop_assert_ne!(cnf_compare(&cnf_add(&a, &b), &a), Ordering::Less);
        if !b.is_zero() {
            prop_assert_eq!(cnf_compare(&cnf_add(&a, &b), &a), Ordering::Greater);
        }
    }

    #[test]
    fn text_round_trip(a in arb_ordinal()) {
        let back: Ordinal = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn omega_power_order_is_cnf_order(k in 1usize..5, s in arb_decseq(4), t in arb_decseq(4)) {
        prop_assume!(s.entries().iter().chain(t.entries()).all(|&e| e < k));
        let alpha = Alpha::chain(k);
        prop_assert_eq!(
            omega_alpha_compare(&s, &t, &alpha).unwrap(),
            cnf_compare(&s.to_cnf(&alpha), &t.to_cnf(&alpha))
        );
    }

    #[test]
    fn suffix_ranking_laws(s in arb_decseq(3), t in arb_decseq(3), u in arb_decseq(3)) {
        let alpha = Alpha::chain(3);
        prop_assert!(suffix_ranking(&s, &s));
        if suffix_ranking(&s, &t) && suffix_ranking(&t, &s) {
            prop_assert_eq!(&s, &t);
        }
        if suffix_ranking(&s, &t) && suffix_ranking(&t, &u) {
            prop_assert!(suffix_ranking(&s, &u));
        }
        // contained in the order of ω^α
        if suffix_ranking(&s, &t) {
            prop_assert_ne!(omega_alpha_compare(&s, &t, &alpha).unwrap(), Ordering::Greater);
        }
        if !s.is_empty() {
            let h = head_remove(&s).unwrap();
            prop_assert!(suffix_ranking(&h, &s) && h != s);
            prop_assert_eq!(h.len() + 1, s.len());
        }
    }

    #[test]
    fn two_bar_times_materializes(n in 1usize..5) {
        let lazy = two_bar_times_gamma(Ordinal::finite(n as u64));
        let p = two_bar_times_finite(n);
        prop_assert_eq!(lazy.materialize(), Some(p.clone()));
        for x in 0..2 * n {
            for y in 0..2 * n {
                let (bx, jx) = (Ordinal::finite((x / 2) as u64), (x % 2) as u8);
                let (by, jy) = (Ordinal::finite((y / 2) as u64), (y % 2) as u8);
                prop_assert_eq!(lazy.le((&bx, jx), (&by, jy)), p.le(x, y));
            }
        }
    }
}
