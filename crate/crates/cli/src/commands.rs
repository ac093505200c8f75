use bqo_core::array::{
    classify_fragment, compare_pointwise, first_coordinate_projection, head_removal_derivation, max_bad_horizon,
    minimal_bad_search, search_bad_fragment, stabilize_first_coordinate, stabilize_leading_entry, ArrayFragment,
    Classification, PointwiseOrder, RankingRelation, SuffixRanking,
};
use bqo_core::barrier::{
    block_to_barrier, chain_intervals, triangle_lt, uniform_fragment, validate_fragment, FragmentKind,
};
use bqo_core::decomp::{classify_width2, decompose, Decomposition, ForbiddenKind, ForbiddenWitness, Width2Class};
use bqo_core::hset::{antichain3_check, verify_interlocked, HOrder, InterlockRelation, TermStore};
use bqo_core::mba::{
    bad_triples, check_wellfounded, elements_of, minimal_bad_triple, strict_down_set, BadTriple, FinSubsetOrder,
    TriplePattern,
};
use bqo_core::ordinal::{cnf_add, cnf_compare, head_remove, omega_alpha_compare, suffix_ranking, Alpha, DecSeq, OmegaPower, Ordinal};
use bqo_core::poset::{find_embedding, find_order_reflecting, quotient_preorder, OrderMap, Poset};
use bqo_core::SearchLimits;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::input::{
    load_fragment, load_fragment_unchecked, load_poset, load_preorder, load_sum, omega_values, parse_elements,
    parse_pairs, parse_seq, poset_values,
};
use crate::output::{array_doc, element, elements, fragment_doc, poset_doc, seq};
use crate::{ArrayCmd, BarrierCmd, HsetCmd, MbaCmd, OrdinalCmd, PosetCmd, ValueTarget};

fn ordering(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "lt",
        std::cmp::Ordering::Equal => "eq",
        std::cmp::Ordering::Greater => "gt",
    }
}

fn map_doc(m: &OrderMap) -> Value {
    let src = m.source();
    let pairs: Vec<Value> = (0..src.size()).map(|a| json!([element(src, a), element(m.target(), m.apply(a))])).collect();
    Value::Array(pairs)
}

fn witness_doc(w: &ForbiddenWitness) -> Value {
    json!({
        "kind": match w.kind {
            ForbiddenKind::OnePlusTwoEmbedding => "one-plus-two",
            ForbiddenKind::Antichain3Embedding => "antichain3",
        },
        "map": map_doc(&w.map),
    })
}

fn decomposition_doc(p: &Poset, d: &Decomposition) -> Value {
    json!({
        "classes": d.classes.iter().map(|c| elements(p, c.iter().copied())).collect::<Vec<_>>(),
        "representatives": elements(p, d.representatives.iter().copied()),
        "width": d.width(),
    })
}

pub fn poset(cmd: PosetCmd, limits: &SearchLimits) -> CliResult<Value> {
    match cmd {
        PosetCmd::Validate { poset, preorder } => {
            if preorder {
                let pre = load_preorder(&poset)?;
                let q = quotient_preorder(&pre);
                Ok(json!({
                    "valid": true,
                    "quotient": poset_doc(&q.poset),
                    "class_of": q.class_of,
                    "representatives": q.representatives,
                }))
            } else {
                let p = load_poset(&poset)?;
                Ok(json!({ "valid": true, "size": p.size(), "poset": poset_doc(&p) }))
            }
        }
        PosetCmd::Decompose { poset } => {
            let p = load_poset(&poset)?;
            Ok(match decompose(&p) {
                Ok(d) => json!({ "decomposable": true, "decomposition": decomposition_doc(&p, &d) }),
                Err(w) => json!({ "decomposable": false, "witness": witness_doc(&w) }),
            })
        }
        PosetCmd::Classify { poset } => {
            let p = load_poset(&poset)?;
            Ok(match classify_width2(&p) {
                Width2Class::LinearSumOfPairs(d) => {
                    json!({ "class": "linear-sum-of-pairs", "decomposition": decomposition_doc(&p, &d) })
                }
                Width2Class::Forbidden(w) => json!({ "class": "forbidden", "witness": witness_doc(&w) }),
            })
        }
        PosetCmd::Embed { source, target } => {
            let (p, q) = (load_poset(&source)?, load_poset(&target)?);
            let m = find_embedding(&p, &q, limits)?;
            Ok(json!({ "found": m.is_some(), "map": m.as_ref().map(map_doc) }))
        }
        PosetCmd::Reflect { source, target } => {
            let (p, q) = (load_poset(&source)?, load_poset(&target)?);
            let m = find_order_reflecting(&p, &q, limits)?;
            Ok(json!({ "found": m.is_some(), "map": m.as_ref().map(map_doc) }))
        }
    }
}

pub fn barrier(cmd: BarrierCmd) -> CliResult<Value> {
    match cmd {
        BarrierCmd::Rel { s, t } => {
            let (s, t) = (parse_seq(&s)?, parse_seq(&t)?);
            Ok(json!({
                "triangle": triangle_lt(&s, &t)?,
                "prefix": s.is_prefix_of(&t),
                "proper_prefix": s.is_proper_prefix_of(&t),
                "subset": s.is_subset_of(&t),
                "proper_subset": s.is_proper_subset_of(&t),
            }))
        }
        BarrierCmd::Uniform { base, rank } => Ok(Value::Object(fragment_doc(&uniform_fragment(0..base, rank)?))),
        BarrierCmd::Validate { fragment } => {
            let f = load_fragment_unchecked(&fragment)?.fragment;
            validate_fragment(&f).map_err(|v| CliError::Domain(format!("invalid fragment: {v}")))?;
            Ok(json!({ "valid": true, "members": f.len(), "rank": f.rank() }))
        }
        BarrierCmd::Chain { fragment, s, t } => {
            let f = load_fragment(&fragment)?.fragment;
            let chain = chain_intervals(&f, &parse_seq(&s)?, &parse_seq(&t)?)?;
            Ok(json!({ "chain": chain.iter().map(seq).collect::<Vec<_>>() }))
        }
        BarrierCmd::Refine { fragment } => {
            let f = load_fragment(&fragment)?.fragment;
            if f.kind() != FragmentKind::Block {
                return Err(CliError::Domain("refine expects a fragment of kind block".into()));
            }
            let r = block_to_barrier(&f)?;
            let sources: Vec<Value> = (0..r.barrier.len()).map(|i| seq(r.source_of(&f, i))).collect();
            Ok(json!({ "barrier": Value::Object(fragment_doc(&r.barrier)), "sources": sources }))
        }
    }
}

fn classification_doc(c: &Classification) -> Value {
    match c {
        Classification::Good { s, t } => json!({ "verdict": "good", "witness": [seq(s), seq(t)] }),
        Classification::Bad => json!({ "verdict": "bad" }),
        Classification::VacuouslyBad => json!({ "verdict": "vacuously-bad" }),
    }
}

fn poset_array(q: &Poset, a: &ArrayFragment<usize>) -> Value {
    array_doc(a.domain(), a.values().iter().map(|&v| element(q, v)).collect())
}

fn omega_array(a: &ArrayFragment<DecSeq>) -> Value {
    array_doc(a.domain(), a.values().iter().map(|v| json!(v.to_string())).collect())
}

fn ranking_for(q: &Poset, spec: Option<&str>) -> CliResult<RankingRelation> {
    match spec.unwrap_or("order") {
        "order" => Ok(RankingRelation::of_order(q)),
        "discrete" => Ok(RankingRelation::discrete(q.size())),
        pairs => Ok(RankingRelation::new(q, &parse_pairs(pairs, q)?)?),
    }
}

fn pointwise(o: PointwiseOrder) -> &'static str {
    match o {
        PointwiseOrder::Lt => "lt",
        PointwiseOrder::Leq => "leq",
        PointwiseOrder::Neither => "neither",
    }
}

pub fn array(cmd: ArrayCmd, limits: &SearchLimits) -> CliResult<Value> {
    match cmd {
        ArrayCmd::Classify { array, target } => {
            let input = load_fragment(&array)?;
            let c = match target.resolve()? {
                ValueTarget::Poset(q) => classify_fragment(&ArrayFragment::new(input.fragment.clone(), poset_values(&input, &q)?)?, &q),
                ValueTarget::Omega(alpha) => {
                    let values = omega_values(&input, &alpha)?;
                    classify_fragment(&ArrayFragment::new(input.fragment, values)?, &OmegaPower::new(alpha))
                }
            };
            Ok(classification_doc(&c))
        }
        ArrayCmd::SearchBad { fragment, target } => {
            let q = load_poset(&target)?;
            let f = load_fragment(&fragment)?.fragment;
            let found = search_bad_fragment(&f, &q, limits)?;
            Ok(json!({ "found": found.is_some(), "array": found.as_ref().map(|a| poset_array(&q, a)) }))
        }
        ArrayCmd::MaxHorizon { rank, target, max } => {
            let q = load_poset(&target)?;
            Ok(json!({ "rank": rank, "horizon": max_bad_horizon(rank, &q, max, limits)?, "searched_up_to": max }))
        }
        ArrayCmd::Stabilize { array, sum, alpha } => {
            let input = load_fragment(&array)?;
            match (sum, alpha) {
                (Some(sum), None) => {
                    let sum = load_sum(&sum)?;
                    let f = ArrayFragment::new(input.fragment.clone(), poset_values(&input, &sum.poset)?)?;
                    let f0 = first_coordinate_projection(&f, &sum)?;
                    let st = stabilize_first_coordinate(&f, &sum)?;
                    Ok(json!({
                        "first_coordinate": f0.values(),
                        "stabilized": st.as_ref().map(|st| json!({
                            "s": seq(&st.s),
                            "index": element(sum.index(), st.index),
                            "degenerate": st.degenerate,
                            "tail": poset_array(&sum.spec.summands()[st.index], &st.tail),
                        })),
                    }))
                }
                (None, Some(k)) => {
                    let alpha = Alpha::chain(k);
                    let g = ArrayFragment::new(input.fragment.clone(), omega_values(&input, &alpha)?)?;
                    let r = stabilize_leading_entry(&g, &OmegaPower::new(alpha))?;
                    Ok(json!({ "stabilized": r.as_ref().map(|r| json!({ "r": seq(r) })) }))
                }
                _ => Err(CliError::Usage("give exactly one of --sum or --alpha".into())),
            }
        }
        ArrayCmd::DeriveTail { array, alpha, at } => {
            let input = load_fragment(&array)?;
            let alpha = Alpha::chain(alpha);
            let g = ArrayFragment::new(input.fragment.clone(), omega_values(&input, &alpha)?)?;
            let omega = OmegaPower::new(alpha);
            let f = head_removal_derivation(&g, &parse_seq(&at)?, &omega)?;
            Ok(json!({
                "array": omega_array(&f),
                "classification": classification_doc(&classify_fragment(&f, &omega)),
                "pointwise": pointwise(compare_pointwise(&f, &g, &SuffixRanking)?),
            }))
        }
        ArrayCmd::Compare { f, g, target, ranking } => {
            let (fi, gi) = (load_fragment(&f)?, load_fragment(&g)?);
            let order = match target.resolve()? {
                ValueTarget::Poset(q) => {
                    let r = ranking_for(&q, ranking.as_deref())?;
                    let a = ArrayFragment::new(fi.fragment.clone(), poset_values(&fi, &q)?)?;
                    let b = ArrayFragment::new(gi.fragment.clone(), poset_values(&gi, &q)?)?;
                    compare_pointwise(&a, &b, &r)?
                }
                ValueTarget::Omega(alpha) => {
                    if ranking.is_some() {
                        return Err(CliError::Usage("--ranking applies to poset targets only".into()));
                    }
                    let a = ArrayFragment::new(fi.fragment.clone(), omega_values(&fi, &alpha)?)?;
                    let b = ArrayFragment::new(gi.fragment.clone(), omega_values(&gi, &alpha)?)?;
                    compare_pointwise(&a, &b, &SuffixRanking)?
                }
            };
            Ok(json!({ "pointwise": pointwise(order) }))
        }
        ArrayCmd::Minimize { array, target, ranking } => {
            let q = load_poset(&target)?;
            let input = load_fragment(&array)?;
            let f0 = ArrayFragment::new(input.fragment.clone(), poset_values(&input, &q)?)?;
            let r = ranking_for(&q, ranking.as_deref())?;
            let m = minimal_bad_search(&f0, &q, &r, limits)?;
            Ok(json!({ "array": poset_array(&q, &m.array), "degenerate": m.degenerate, "steps": m.steps }))
        }
    }
}

fn hset_order(arg: &str) -> CliResult<(TermStore, Poset)> {
    let q = load_poset(arg)?;
    Ok((TermStore::new(q.size()), q))
}

fn relation_name(r: InterlockRelation) -> &'static str {
    match r {
        InterlockRelation::DotDot => "dot<=dot",
        InterlockRelation::DdotDdot => "ddot<=ddot",
        InterlockRelation::DotDdot => "dot<=ddot",
        InterlockRelation::DdotDot => "ddot<=dot",
    }
}

pub fn hset(cmd: HsetCmd) -> CliResult<Value> {
    match cmd {
        HsetCmd::Leq { x, y, order } => {
            let (mut store, q) = hset_order(&order)?;
            let (x, y) = (store.parse(&x, &q)?, store.parse(&y, &q)?);
            let mut h = HOrder::new(&store, &q)?;
            Ok(json!({ "leq": h.leq(x, y), "geq": h.leq(y, x) }))
        }
        HsetCmd::Supp { x, order } => {
            let (mut store, q) = hset_order(&order)?;
            let x = store.parse(&x, &q)?;
            let s = store.supp_term(x);
            Ok(json!({ "support": elements(&q, store.supp(x)), "term": store.render(s, &q) }))
        }
        HsetCmd::Dot { n } | HsetCmd::Ddot { n } => {
            let q = Poset::one_plus_two();
            let mut store = TermStore::new(3);
            let t = if matches!(cmd, HsetCmd::Dot { .. }) { store.dot(n)? } else { store.ddot(n)? };
            Ok(json!({
                "term": store.render(t, &q),
                "children": store.children(t).len(),
                "dag_size": store.dag_size(t),
                "tree_size": store.tree_size(t).to_string(),
            }))
        }
        HsetCmd::VerifyInterlocked { bound } => {
            let r = verify_interlocked(bound)?;
            let violations: Vec<Value> = r
                .violations
                .iter()
                .map(|v| json!({ "m": v.m, "n": v.n, "relation": relation_name(v.relation), "expected": v.expected, "found": v.found }))
                .collect();
            Ok(json!({ "bound": r.bound, "pairs_checked": r.pairs_checked, "violations": violations }))
        }
        HsetCmd::Antichain3 => {
            let r = antichain3_check();
            let comparisons: Vec<Value> = r.comparisons.iter().map(|&(i, j, leq)| json!({ "x": i, "y": j, "leq": leq })).collect();
            Ok(json!({
                "terms": r.rendered(),
                "comparisons": comparisons,
                "verdict": if r.is_antichain { "antichain" } else { "comparable" },
            }))
        }
    }
}

fn ordinal_arg(s: &str) -> CliResult<Ordinal> {
    Ok(s.parse::<Ordinal>()?)
}

fn decseq_arg(s: &str) -> CliResult<DecSeq> {
    Ok(s.parse::<DecSeq>()?)
}

pub fn ordinal(cmd: OrdinalCmd) -> CliResult<Value> {
    match cmd {
        OrdinalCmd::Compare { a, b } => Ok(json!({ "order": ordering(cnf_compare(&ordinal_arg(&a)?, &ordinal_arg(&b)?)) })),
        OrdinalCmd::Add { a, b } => Ok(json!({ "sum": cnf_add(&ordinal_arg(&a)?, &ordinal_arg(&b)?).to_string() })),
        OrdinalCmd::OmegaCompare { s, t, alpha } => {
            let o = omega_alpha_compare(&decseq_arg(&s)?, &decseq_arg(&t)?, &Alpha::chain(alpha))?;
            Ok(json!({ "order": ordering(o) }))
        }
        OrdinalCmd::Suffix { s, t } => {
            let (s, t) = (decseq_arg(&s)?, decseq_arg(&t)?);
            Ok(json!({ "leq": suffix_ranking(&s, &t), "lt": s != t && suffix_ranking(&s, &t) }))
        }
        OrdinalCmd::Head { s } => {
            let s = decseq_arg(&s)?;
            Ok(json!({ "head": s.head(), "rest": head_remove(&s)?.to_string() }))
        }
    }
}

fn triple_doc(q: &Poset, t: &BadTriple) -> Value {
    json!({
        "elements": elements(q, t.elements),
        "pattern": match t.pattern {
            TriplePattern::Antichain3 => "antichain3",
            TriplePattern::OnePlusTwoImage => "one-plus-two",
        },
    })
}

pub fn mba(cmd: MbaCmd, limits: &SearchLimits) -> CliResult<Value> {
    match cmd {
        MbaCmd::Power { poset, n } => {
            let q = load_poset(&poset)?;
            let f = FinSubsetOrder::build(&q, n, limits)?;
            let carrier: Vec<Value> = f.carrier().iter().map(|&s| elements(&q, elements_of(s))).collect();
            let prec: Vec<[usize; 2]> = (0..f.len())
                .flat_map(|i| (0..f.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| f.prec(i, j))
                .map(|(i, j)| [i, j])
                .collect();
            Ok(json!({ "carrier": carrier, "prec": prec }))
        }
        MbaCmd::Wellfounded { poset, n } => {
            let q = load_poset(&poset)?;
            let f = FinSubsetOrder::build(&q, n, limits)?;
            Ok(match check_wellfounded(&f) {
                Ok(()) => json!({ "wellfounded": true, "carrier": f.len() }),
                Err(cycle) => json!({ "wellfounded": false, "cycle": cycle }),
            })
        }
        MbaCmd::Triples { poset } => {
            let q = load_poset(&poset)?;
            let t = bad_triples(&q, limits)?;
            Ok(json!({ "triples": t.iter().map(|t| triple_doc(&q, t)).collect::<Vec<_>>() }))
        }
        MbaCmd::Minimal { poset } => {
            let q = load_poset(&poset)?;
            let m = minimal_bad_triple(&q, limits)?;
            Ok(json!({ "minimal": m.as_ref().map(|t| triple_doc(&q, t)) }))
        }
        MbaCmd::Downset { poset, subset } => {
            let q = load_poset(&poset)?;
            let b = parse_elements(&subset, &q)?;
            let d = strict_down_set(&q, &b)?;
            Ok(json!({ "elements": elements(&q, d.elements.iter().copied()), "poset": poset_doc(&d.poset) }))
        }
    }
}
