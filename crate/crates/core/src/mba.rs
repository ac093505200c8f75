//! The finite power order `[Q]^{≤n}` and bad triples.
//!
//! Subsets of the ground poset are bitmasks, so grounds are limited to 64
//! elements. `a ≺ b` holds when every `p ∈ a` has some `q ∈ b` with
//! `p <_Q q`. "Subset-lexicographic" order compares subsets as sorted
//! element lists, with a proper prefix first.

use std::cmp::Ordering;

use itertools::Itertools;
use thiserror::Error;

use crate::poset::{OrderMap, Poset};
use crate::search::SearchLimits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MbaError {
    #[error("{needed} steps needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("ground orders are limited to 64 elements (got {0})")]
    GroundTooLarge(usize),
    #[error("element {0} is not in the ground order")]
    NotInGround(usize),
}

pub type Subset = u64;

pub fn subset_of(elements: impl IntoIterator<Item = usize>) -> Subset {
    elements.into_iter().fold(0, |m, a| m | (1 << a))
}

pub fn elements_of(s: Subset) -> Vec<usize> {
    (0..64).filter(|&i| s >> i & 1 == 1).collect()
}

pub fn subset_lex_cmp(a: Subset, b: Subset) -> Ordering {
    elements_of(a).cmp(&elements_of(b))
}

/// `a ≺ b` in `[Q]^{<ω}`.
pub fn prec(q: &Poset, a: Subset, b: Subset) -> bool {
    elements_of(a).into_iter().all(|p| elements_of(b).into_iter().any(|r| q.lt(p, r)))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

fn check_ground(q: &Poset) -> Result<(), MbaError> {
    if q.size() > 64 {
        return Err(MbaError::GroundTooLarge(q.size()));
    }
    Ok(())
}

/// `[Q]^{≤n}` with `≺` fully materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSubsetOrder {
    ground: Poset,
    n: usize,
    /// Non-empty subsets of size at most `n`, subset-lexicographically.
    carrier: Vec<Subset>,
    prec: Vec<bool>,
}

impl FinSubsetOrder {
    /// The budget bounds the number of carrier pairs.
    pub fn build(ground: &Poset, n: usize, limits: &SearchLimits) -> Result<Self, MbaError> {
        check_ground(ground)?;
        let count: u128 = (1..=n.min(ground.size())).map(|k| binomial(ground.size(), k)).sum();
        let needed = count * count;
        if needed > limits.budget as u128 {
            return Err(MbaError::BudgetExceeded {
                needed,
                budget: limits.budget,
            });
        }
        let mut carrier: Vec<Subset> = (1..=n.min(ground.size()))
            .flat_map(|k| (0..ground.size()).combinations(k).map(subset_of))
            .collect();
        carrier.sort_by(|&a, &b| subset_lex_cmp(a, b));
        // strict up-sets make each comparison a mask test
        let up: Vec<Subset> = (0..ground.size()).map(|p| subset_of(ground.strict_up(p))).collect();
        let c = carrier.len();
        let mut prec = vec![false; c * c];
        for (i, &a) in carrier.iter().enumerate() {
            for (j, &b) in carrier.iter().enumerate() {
                prec[i * c + j] = elements_of(a).into_iter().all(|p| up[p] & b != 0);
            }
        }
        Ok(FinSubsetOrder {
            ground: ground.clone(),
            n,
            carrier,
            prec,
        })
    }

    pub fn ground(&self) -> &Poset {
        &self.ground
    }

    pub fn bound(&self) -> usize {
        self.n
    }

    pub fn carrier(&self) -> &[Subset] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// `≺` between carrier positions.
    pub fn prec(&self, i: usize, j: usize) -> bool {
        self.prec[i * self.carrier.len() + j]
    }

    pub fn position(&self, s: Subset) -> Option<usize> {
        self.carrier.binary_search_by(|&c| subset_lex_cmp(c, s)).ok()
    }
}

/// `Ok` when `≺` has no cycle, otherwise a cycle of carrier positions
/// `c₀ ≺ c₁ ≺ … ≺ c₀`.
pub fn check_wellfounded(f: &FinSubsetOrder) -> Result<(), Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let c = f.len();
    let mut mark = vec![Mark::New; c];
    for start in 0..c {
        if mark[start] != Mark::New {
            continue;
        }
        // iterative DFS; the stack holds (node, next successor to try)
        let mut stack = vec![(start, 0usize)];
        mark[start] = Mark::Open;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(w) = (*next..c).find(|&w| f.prec(v, w)) {
                *next = w + 1;
                match mark[w] {
                    Mark::New => {
                        mark[w] = Mark::Open;
                        stack.push((w, 0));
                    }
                    Mark::Open => {
                        let from = stack.iter().position(|&(u, _)| u == w).expect("open node on stack");
                        return Err(stack[from..].iter().map(|&(u, _)| u).collect());
                    }
                    Mark::Done => {}
                }
            } else {
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriplePattern {
    Antichain3,
    OnePlusTwoImage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadTriple {
    pub elements: [usize; 3],
    pub pattern: TriplePattern,
}

impl BadTriple {
    pub fn subset(&self) -> Subset {
        subset_of(self.elements)
    }
}

/// The range of some order-reflecting `1 ⊕ 2 → Q` on `{x, y, z}`, if any.
fn reflecting_witness(q: &Poset, t: [usize; 3]) -> Option<OrderMap> {
    let src = Poset::one_plus_two();
    t.into_iter()
        .permutations(3)
        .map(|images| OrderMap::new(src.clone(), q.clone(), images).expect("images in ground"))
        .find(OrderMap::is_order_reflecting)
}

/// Every 3-subset of `Q` that is the range of an order-reflecting map from
/// `1 ⊕ 2`, in subset-lexicographic order.
pub fn bad_triples(q: &Poset, limits: &SearchLimits) -> Result<Vec<BadTriple>, MbaError> {
    check_ground(q)?;
    let needed = 6 * binomial(q.size(), 3);
    if needed > limits.budget as u128 {
        return Err(MbaError::BudgetExceeded {
            needed,
            budget: limits.budget,
        });
    }
    Ok((0..q.size())
        .combinations(3)
        .filter_map(|c| {
            let t = [c[0], c[1], c[2]];
            reflecting_witness(q, t)?;
            let antichain = t.iter().tuple_combinations().all(|(&a, &b)| q.incomparable(a, b));
            Some(BadTriple {
                elements: t,
                pattern: if antichain {
                    TriplePattern::Antichain3
                } else {
                    TriplePattern::OnePlusTwoImage
                },
            })
        })
        .collect())
}

/// The subset-lexicographically least bad triple with no bad triple
/// `≺`-below it.
pub fn minimal_bad_triple(q: &Poset, limits: &SearchLimits) -> Result<Option<BadTriple>, MbaError> {
    let all = bad_triples(q, limits)?;
    Ok(all
        .iter()
        .find(|b| !all.iter().any(|a| prec(q, a.subset(), b.subset())))
        .cloned())
}

/// `Q₀ = {p | p <_Q q for some q ∈ b}` as an induced suborder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownSet {
    pub poset: Poset,
    /// `elements[i]` is the ground id of element `i` of `poset`.
    pub elements: Vec<usize>,
}

pub fn strict_down_set(q: &Poset, b: &[usize]) -> Result<DownSet, MbaError> {
    check_ground(q)?;
    if let Some(&bad) = b.iter().find(|&&x| x >= q.size()) {
        return Err(MbaError::NotInGround(bad));
    }
    let elements: Vec<usize> = (0..q.size()).filter(|&p| b.iter().any(|&r| q.lt(p, r))).collect();
    let d = DownSet {
        poset: q.induced(&elements),
        elements,
    };
    #[cfg(debug_assertions)]
    if let Ok(triples) = bad_triples(&d.poset, &SearchLimits::default()) {
        let target = subset_of(b.iter().copied());
        for a in triples {
            let lifted = subset_of(a.elements.iter().map(|&i| d.elements[i]));
            debug_assert!(prec(q, lifted, target));
        }
    }
    Ok(d)
}
