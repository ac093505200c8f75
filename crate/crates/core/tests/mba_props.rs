use bqo_core::decomp::{classify_width2, Width2Class};
use bqo_core::mba::{bad_triples, prec, strict_down_set, subset_of};
use bqo_core::poset::enumerate_posets;
use bqo_core::SearchLimits;

#[test]
fn bad_triples_detect_forbidden_suborders() {
    let l = SearchLimits::default();
    for q in (0..=5).flat_map(enumerate_posets) {
        let sum = matches!(classify_width2(&q), Width2Class::LinearSumOfPairs(_));
        assert_eq!(bad_triples(&q, &l).unwrap().is_empty(), sum, "{:?}", q.strict_pairs());
    }
}

#[test]
fn triples_below_a_triple_are_prec_below() {
    let l = SearchLimits::default();
    for q in (0..=5).flat_map(enumerate_posets) {
        for b in bad_triples(&q, &l).unwrap() {
            let d = strict_down_set(&q, &b.elements).unwrap();
            for a in bad_triples(&d.poset, &l).unwrap() {
                let lifted = subset_of(a.elements.iter().map(|&i| d.elements[i]));
                assert!(prec(&q, lifted, b.subset()));
            }
        }
    }
}
