//! Arrays on fragments: maps from the members of a block or barrier
//! fragment into an order.
//!
//! An array `f` is *good* when some `s ⊲ t` has `f(s) <= f(t)` and *bad*
//! otherwise. A finite fragment may contain no `⊲` pair at all; such arrays
//! are reported as vacuously bad and kept apart from genuinely bad ones.
//!
//! The searches here ([`search_bad_fragment`], [`minimal_bad_search`]) treat
//! badness as a constraint problem: one variable per member, one binary
//! constraint `¬(f(s) <= f(t))` per `⊲` pair, domains as bitmasks over the
//! target, arc consistency before each branching step.

use std::cmp::Ordering;

use thiserror::Error;

use crate::barrier::{sub_fragment_after, uniform_fragment, BarrierError, FinSeq, Fragment};
use crate::ordinal::{head_remove, suffix_ranking, Alpha, DecSeq, OmegaPower, OrdinalError};
use crate::poset::{Poset, SumPoset};
use crate::search::{first_by_root, NodeCounter, SearchLimits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrayError {
    #[error("{values} values for {members} members")]
    NotTotal { members: usize, values: usize },
    #[error("value {0} is not an element of the target")]
    ValueOutOfRange(usize),
    #[error("targets are limited to 64 elements (got {0})")]
    TargetTooLarge(usize),
    #[error("search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("target is not the sum order: {0}")]
    NotASumTarget(String),
    #[error("array is good")]
    NotBad,
    #[error("values are not strictly decreasing at position {0}")]
    NotDescending(usize),
    #[error("{got} values for a base of size {needed}")]
    TooFewValues { needed: usize, got: usize },
    #[error("leading entry is not constant after {0}")]
    NotStabilized(FinSeq),
    #[error("value at {0} is the empty sequence")]
    EmptyValueSequence(FinSeq),
    #[error("base of the first array is not contained in the base of the second")]
    IncompatibleBases,
    #[error("no member is a prefix of {0}")]
    IncompleteFragment(FinSeq),
    #[error("invalid ranking: {0}")]
    InvalidRanking(String),
    #[error(transparent)]
    Barrier(#[from] BarrierError),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

/// The order values are compared in.
pub trait ValueOrder<T> {
    fn le(&self, a: &T, b: &T) -> bool;
}

impl ValueOrder<usize> for Poset {
    fn le(&self, a: &usize, b: &usize) -> bool {
        Poset::le(self, *a, *b)
    }
}

impl ValueOrder<DecSeq> for OmegaPower {
    fn le(&self, a: &DecSeq, b: &DecSeq) -> bool {
        self.cmp(a, b) != Ordering::Greater
    }
}

/// A partial ranking `≤′`: a well-founded partial order contained in the
/// order of the target.
pub trait Ranking<T: PartialEq> {
    fn rank_le(&self, a: &T, b: &T) -> bool;

    fn rank_lt(&self, a: &T, b: &T) -> bool {
        a != b && self.rank_le(a, b)
    }
}

/// A partial ranking on the carrier of a finite poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankingRelation {
    order: Poset,
}

impl RankingRelation {
    /// Builds the ranking generated by `strict` pairs (reflexive-transitive
    /// closure) and checks that it lies inside `q`.
    pub fn new(q: &Poset, strict: &[(usize, usize)]) -> Result<Self, ArrayError> {
        let n = q.size();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in strict {
            if a >= n || b >= n {
                return Err(ArrayError::InvalidRanking(format!("pair ({a},{b}) outside the carrier")));
            }
            if !q.le(a, b) {
                return Err(ArrayError::InvalidRanking(format!("{a} <=' {b} but not {a} <= {b}")));
            }
            le[a * n + b] = true;
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
        // closure of a subrelation of a partial order stays inside it
        let order = Poset::from_fn(n, |a, b| le[a * n + b]).map_err(|e| ArrayError::InvalidRanking(e.to_string()))?;
        Ok(RankingRelation { order })
    }

    /// The target order ranking itself.
    pub fn of_order(q: &Poset) -> Self {
        RankingRelation { order: q.clone().without_labels() }
    }

    /// Only reflexive pairs: nothing is strictly below anything.
    pub fn discrete(n: usize) -> Self {
        RankingRelation {
            order: Poset::antichain(n),
        }
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        self.order.strict_pairs()
    }

    fn strictly_below_mask(&self, v: usize) -> u64 {
        (0..self.size()).filter(|&a| self.order.lt(a, v)).fold(0, |m, a| m | (1 << a))
    }
}

impl Ranking<usize> for RankingRelation {
    fn rank_le(&self, a: &usize, b: &usize) -> bool {
        self.order.le(*a, *b)
    }
}

/// All partial rankings of `q`: every transitively closed subset of the
/// strict pairs of `q`.
pub fn all_partial_rankings(q: &Poset) -> Vec<RankingRelation> {
    let strict = q.strict_pairs();
    assert!(strict.len() < 32, "too many strict pairs to enumerate");
    let mut out = Vec::new();
    for mask in 0u32..(1 << strict.len()) {
        let chosen: Vec<(usize, usize)> = (0..strict.len()).filter(|i| mask >> i & 1 == 1).map(|i| strict[i]).collect();
        let closed = chosen.iter().all(|&(a, b)| {
            chosen
                .iter()
                .filter(|&&(c, _)| c == b)
                .all(|&(_, d)| chosen.contains(&(a, d)))
        });
        if closed {
            out.push(RankingRelation::new(q, &chosen).expect("subrelation of q"));
        }
    }
    out
}

/// The suffix ranking on `ω^α`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SuffixRanking;

impl Ranking<DecSeq> for SuffixRanking {
    fn rank_le(&self, a: &DecSeq, b: &DecSeq) -> bool {
        suffix_ranking(a, b)
    }
}

/// A total map from the members of a fragment to values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayFragment<T> {
    domain: Fragment,
    values: Vec<T>,
}

impl<T> ArrayFragment<T> {
    /// `values[i]` is the value of the `i`-th member in lexicographic order.
    pub fn new(domain: Fragment, values: Vec<T>) -> Result<Self, ArrayError> {
        if values.len() != domain.len() {
            return Err(ArrayError::NotTotal {
                members: domain.len(),
                values: values.len(),
            });
        }
        Ok(ArrayFragment { domain, values })
    }

    pub fn from_fn(domain: Fragment, f: impl FnMut(&FinSeq) -> T) -> Self {
        let values = domain.members().iter().map(f).collect();
        ArrayFragment { domain, values }
    }

    pub fn domain(&self) -> &Fragment {
        &self.domain
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, s: &FinSeq) -> Option<&T> {
        self.domain.index_of(s).map(|i| &self.values[i])
    }

    /// `F(X)`: the value of the member that is an initial segment of `x`.
    pub fn lookup(&self, x: &[usize]) -> Option<&T> {
        self.domain.prefix_member(x).map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FinSeq, &T)> {
        self.domain.members().iter().zip(&self.values)
    }
}

impl ArrayFragment<usize> {
    fn check_target(&self, q: &Poset) -> Result<(), ArrayError> {
        match self.values.iter().find(|&&v| v >= q.size()) {
            Some(&v) => Err(ArrayError::ValueOutOfRange(v)),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Least `s ⊲ t` (by member position) with `f(s) <= f(t)`.
    Good { s: FinSeq, t: FinSeq },
    Bad,
    /// No `⊲` pair inside the fragment.
    VacuouslyBad,
}

impl Classification {
    pub fn is_good(&self) -> bool {
        matches!(self, Classification::Good { .. })
    }
}

pub fn classify_fragment<T>(f: &ArrayFragment<T>, order: &impl ValueOrder<T>) -> Classification {
    let pairs = f.domain.triangle_pairs();
    if pairs.is_empty() {
        return Classification::VacuouslyBad;
    }
    match pairs.iter().find(|&&(i, j)| order.le(&f.values[i], &f.values[j])) {
        Some(&(i, j)) => Classification::Good {
            s: f.domain.members()[i].clone(),
            t: f.domain.members()[j].clone(),
        },
        None => Classification::Bad,
    }
}

/// The badness constraint problem on one fragment and one target.
struct BadCsp<'a> {
    n: usize,
    arcs: &'a [(usize, usize)],
    /// `up[v]`: values `w` with `v <= w`.
    up: Vec<u64>,
    /// `down[v]`: values `w` with `w <= v`.
    down: Vec<u64>,
}

impl<'a> BadCsp<'a> {
    fn new(q: &Poset, n: usize, arcs: &'a [(usize, usize)]) -> Self {
        let m = q.size();
        let mask = |f: &dyn Fn(usize) -> bool| (0..m).filter(|&w| f(w)).fold(0u64, |acc, w| acc | (1 << w));
        BadCsp {
            n,
            arcs,
            up: (0..m).map(|v| mask(&|w| q.le(v, w))).collect(),
            down: (0..m).map(|v| mask(&|w| q.le(w, v))).collect(),
        }
    }

    /// Arc consistency to a fixpoint; false when some domain empties.
    fn propagate(&self, doms: &mut [u64]) -> bool {
        loop {
            let mut changed = false;
            for &(s, t) in self.arcs {
                // keep x in dom(s) with some y in dom(t), not x <= y
                let ds = retain_bits(doms[s], |x| doms[t] & !self.up[x] != 0);
                let dt = retain_bits(doms[t], |y| ds & !self.down[y] != 0);
                if ds != doms[s] || dt != doms[t] {
                    changed = true;
                    doms[s] = ds;
                    doms[t] = dt;
                }
                if ds == 0 || dt == 0 {
                    return false;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Value-lexicographically least solution extending `doms`.
    fn solve(&self, doms: &mut Vec<u64>, var: usize, counter: &mut NodeCounter) -> Result<bool, u64> {
        if var == self.n {
            return Ok(true);
        }
        let mut candidates = doms[var];
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if !counter.tick() {
                return Err(counter.used());
            }
            let mut trial = doms.clone();
            trial[var] = 1 << v;
            if self.propagate(&mut trial) && self.solve(&mut trial, var + 1, counter)? {
                *doms = trial;
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn retain_bits(mut bits: u64, keep: impl Fn(usize) -> bool) -> u64 {
    let mut out = 0;
    while bits != 0 {
        let b = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if keep(b) {
            out |= 1 << b;
        }
    }
    out
}

/// Least bad assignment with `values[i] ∈ domains[i]`, or `None`.
fn least_bad_assignment(
    domain: &Fragment,
    q: &Poset,
    domains: Vec<u64>,
    limits: &SearchLimits,
) -> Result<Option<Vec<usize>>, ArrayError> {
    if q.size() > 64 {
        return Err(ArrayError::TargetTooLarge(q.size()));
    }
    let arcs = domain.triangle_pairs();
    let csp = BadCsp::new(q, domain.len(), &arcs);
    let mut root = domains;
    if !csp.propagate(&mut root) {
        return Ok(None);
    }
    if domain.is_empty() {
        return Ok(Some(vec![]));
    }
    let roots: Vec<usize> = (0..64).filter(|&v| root[0] >> v & 1 == 1).collect();
    let branch = |i: usize| -> Result<Option<Vec<usize>>, ArrayError> {
        let mut counter = NodeCounter::new(limits.budget);
        let mut doms = root.clone();
        doms[0] = 1 << roots[i];
        if !counter.tick() {
            return Err(ArrayError::SearchBudgetExceeded(limits.budget));
        }
        if !csp.propagate(&mut doms) {
            return Ok(None);
        }
        match csp.solve(&mut doms, 1, &mut counter) {
            Ok(true) => Ok(Some(doms.iter().map(|d| d.trailing_zeros() as usize).collect())),
            Ok(false) => Ok(None),
            Err(_) => Err(ArrayError::SearchBudgetExceeded(limits.budget)),
        }
    };
    first_by_root(roots.len(), limits.parallel, branch)
}

fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// The value-lexicographically least non-vacuous bad array on `f` into `q`.
pub fn search_bad_fragment(
    f: &Fragment,
    q: &Poset,
    limits: &SearchLimits,
) -> Result<Option<ArrayFragment<usize>>, ArrayError> {
    if f.triangle_pairs().is_empty() {
        return Ok(None);
    }
    let doms = vec![full_mask(q.size()); f.len()];
    Ok(least_bad_assignment(f, q, doms, limits)?.map(|values| ArrayFragment {
        domain: f.clone(),
        values,
    }))
}

/// The largest `N <= n_max` such that `[0,N)^k` carries a non-vacuous bad
/// array into `q`, or 0.
///
/// Restricting a bad array on `[0,N)^k` to `[0,N-1)^k` keeps it bad and,
/// for `N > k + 1`, non-vacuous, so the scan stops at the first failure.
pub fn max_bad_horizon(k: usize, q: &Poset, n_max: usize, limits: &SearchLimits) -> Result<usize, ArrayError> {
    let mut best = 0;
    for n in k.max(1) + 1..=n_max {
        let f = uniform_fragment(0..n, k)?;
        if search_bad_fragment(&f, q, limits)?.is_some() {
            best = n;
        } else {
            break;
        }
    }
    Ok(best)
}

/// `f₀`: the index component of an array into a sum order.
pub fn first_coordinate_projection(
    f: &ArrayFragment<usize>,
    sum: &SumPoset,
) -> Result<ArrayFragment<usize>, ArrayError> {
    if let Some(&v) = f.values.iter().find(|&&v| v >= sum.poset.size()) {
        return Err(ArrayError::NotASumTarget(format!("value {v} is not a pair of the sum")));
    }
    Ok(ArrayFragment {
        domain: f.domain.clone(),
        values: f.values.iter().map(|&v| sum.pair_of(v).0).collect(),
    })
}

/// Least member `s` such that `key` is constant on `B/s` and equal to its
/// value at `s`.
fn stabilize_by<T, K: PartialEq>(
    f: &ArrayFragment<T>,
    key: impl Fn(&T) -> K,
) -> Result<Option<(usize, Fragment)>, ArrayError> {
    for (i, s) in f.domain.members().iter().enumerate() {
        let sub = sub_fragment_after(&f.domain, s)?;
        let at_s = key(&f.values[i]);
        let constant = sub
            .members()
            .iter()
            .all(|t| key(f.value(t).expect("sub-fragment member")) == at_s);
        if constant {
            return Ok(Some((i, sub)));
        }
    }
    Ok(None)
}

/// Outcome of stabilizing the index component of a bad array into a sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilized {
    pub s: FinSeq,
    /// The constant index `i = f₀(s)`.
    pub index: usize,
    /// `f₁` on `B/s` with `f(t) = (i, f₁(t))`; values are ids of `Q_i`.
    pub tail: ArrayFragment<usize>,
    /// `B/s` is empty.
    pub degenerate: bool,
}

pub fn stabilize_first_coordinate(f: &ArrayFragment<usize>, sum: &SumPoset) -> Result<Option<Stabilized>, ArrayError> {
    f.check_target(&sum.poset)?;
    if classify_fragment(f, &sum.poset).is_good() {
        return Err(ArrayError::NotBad);
    }
    let Some((i, sub)) = stabilize_by(f, |&v| sum.pair_of(v).0)? else {
        return Ok(None);
    };
    let tail = ArrayFragment::from_fn(sub, |t| sum.pair_of(*f.value(t).expect("member")).1);
    Ok(Some(Stabilized {
        s: f.domain.members()[i].clone(),
        index: sum.pair_of(f.values[i]).0,
        degenerate: tail.domain.is_empty(),
        tail,
    }))
}

/// The array on `[V]^1` sending the singleton of the `i`-th element of `V`
/// to `sigmas[i]`. Strict descent makes it bad.
pub fn induced_from_descending(
    sigmas: &[DecSeq],
    base: impl IntoIterator<Item = usize>,
    alpha: &Alpha,
) -> Result<ArrayFragment<DecSeq>, ArrayError> {
    for s in sigmas {
        s.check(alpha)?;
    }
    let omega = OmegaPower::new(alpha.clone());
    if let Some(i) = (1..sigmas.len()).find(|&i| omega.cmp(&sigmas[i - 1], &sigmas[i]) != Ordering::Greater) {
        return Err(ArrayError::NotDescending(i));
    }
    let base = FinSeq::from_set(base);
    if sigmas.len() < base.len() {
        return Err(ArrayError::TooFewValues {
            needed: base.len(),
            got: sigmas.len(),
        });
    }
    if base.is_empty() {
        return Ok(ArrayFragment::new(Fragment::new([], [], None, crate::barrier::FragmentKind::Barrier), vec![])?);
    }
    let domain = uniform_fragment(base.entries().iter().copied(), 1)?;
    Ok(ArrayFragment {
        values: sigmas[..domain.len()].to_vec(),
        domain,
    })
}

/// Least member `r` of a bad `ω^α` array such that the leading entry is
/// constant on `B/r` and equal to that of `g(r)`.
pub fn stabilize_leading_entry(g: &ArrayFragment<DecSeq>, omega: &OmegaPower) -> Result<Option<FinSeq>, ArrayError> {
    if classify_fragment(g, omega).is_good() {
        return Err(ArrayError::NotBad);
    }
    Ok(stabilize_by(g, DecSeq::head)?.map(|(i, _)| g.domain.members()[i].clone()))
}

/// `f(t) = g(t)⋆` on `B/r`, where the leading entry of `g` is already
/// constant on `B/r`.
pub fn head_removal_derivation(
    g: &ArrayFragment<DecSeq>,
    r: &FinSeq,
    omega: &OmegaPower,
) -> Result<ArrayFragment<DecSeq>, ArrayError> {
    let at_r = g.value(r).ok_or_else(|| BarrierError::MemberNotFound(r.clone()))?;
    if classify_fragment(g, omega).is_good() {
        return Err(ArrayError::NotBad);
    }
    let sub = sub_fragment_after(&g.domain, r)?;
    let mut values = Vec::with_capacity(sub.len());
    for t in sub.members() {
        let gt = g.value(t).expect("sub-fragment member");
        if gt.is_empty() {
            return Err(ArrayError::EmptyValueSequence(t.clone()));
        }
        if gt.head() != at_r.head() {
            return Err(ArrayError::NotStabilized(r.clone()));
        }
        values.push(head_remove(gt)?);
    }
    let f = ArrayFragment { domain: sub, values };
    debug_assert!(!classify_fragment(&f, omega).is_good());
    debug_assert!(f.iter().all(|(t, v)| SuffixRanking.rank_lt(v, g.value(t).unwrap())));
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointwiseOrder {
    Lt,
    Leq,
    Neither,
}

/// Compares `F` and `G` under a ranking at every increasing sequence `X` of
/// length `R* = max(rank F, rank G)` over the base of `F`.
pub fn compare_pointwise<T: PartialEq>(
    f: &ArrayFragment<T>,
    g: &ArrayFragment<T>,
    ranking: &impl Ranking<T>,
) -> Result<PointwiseOrder, ArrayError> {
    if !f.domain.base().iter().all(|v| g.domain.base().binary_search(v).is_ok()) {
        return Err(ArrayError::IncompatibleBases);
    }
    let r = f.domain.rank().max(g.domain.rank());
    let (mut all_lt, mut all_le) = (true, true);
    if r > 0 {
        for x in f.domain.sequences_of_len(r) {
            let fx = f.lookup(x.entries()).ok_or_else(|| ArrayError::IncompleteFragment(x.clone()))?;
            let gx = g.lookup(x.entries()).ok_or_else(|| ArrayError::IncompleteFragment(x.clone()))?;
            all_le &= ranking.rank_le(fx, gx);
            all_lt &= ranking.rank_lt(fx, gx);
        }
    }
    Ok(if all_lt {
        PointwiseOrder::Lt
    } else if all_le {
        PointwiseOrder::Leq
    } else {
        PointwiseOrder::Neither
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalBad {
    pub array: ArrayFragment<usize>,
    /// The input was only vacuously bad and is returned as is.
    pub degenerate: bool,
    /// Number of strict descents taken.
    pub steps: usize,
}

/// Descends from a bad `F0` through bad arrays that are strictly `≤′`-below
/// at every member until none is left. Every step lowers each value in the
/// well-founded ranking, so the descent terminates.
pub fn minimal_bad_search(
    f0: &ArrayFragment<usize>,
    q: &Poset,
    ranking: &RankingRelation,
    limits: &SearchLimits,
) -> Result<MinimalBad, ArrayError> {
    f0.check_target(q)?;
    if ranking.size() != q.size() {
        return Err(ArrayError::InvalidRanking(format!(
            "ranking on {} elements for a target of {}",
            ranking.size(),
            q.size()
        )));
    }
    match classify_fragment(f0, q) {
        Classification::Good { .. } => return Err(ArrayError::NotBad),
        Classification::VacuouslyBad => {
            return Ok(MinimalBad {
                array: f0.clone(),
                degenerate: true,
                steps: 0,
            })
        }
        Classification::Bad => {}
    }
    let mut current = f0.values.clone();
    let mut steps = 0;
    loop {
        let doms: Vec<u64> = current.iter().map(|&v| ranking.strictly_below_mask(v)).collect();
        if doms.iter().any(|&d| d == 0) {
            break;
        }
        match least_bad_assignment(&f0.domain, q, doms, limits)? {
            Some(next) => {
                current = next;
                steps += 1;
            }
            None => break,
        }
    }
    Ok(MinimalBad {
        array: ArrayFragment {
            domain: f0.domain.clone(),
            values: current,
        },
        degenerate: false,
        steps,
    })
}
