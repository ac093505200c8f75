//! Finite increasing sequences, the relations `⊏`, `⊂` and `⊲`, and
//! finite-horizon fragments of blocks and barriers.
//!
//! A fragment stands in for an infinite block over a finite base `V`. With
//! `R` the greatest member length, the unique-prefix axiom is checked on all
//! increasing sequences that enumerate `R`-element subsets of `V`
//! ("completeness at the horizon").

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarrierError {
    #[error("sequence {0:?} is not strictly increasing")]
    NotIncreasing(Vec<usize>),
    #[error("the empty sequence has no least element")]
    EmptySequence,
    #[error("rank must satisfy 1 <= k <= |V| (k = {k}, |V| = {base})")]
    InvalidRank { k: usize, base: usize },
    #[error("{0} is not a member of the fragment")]
    MemberNotFound(FinSeq),
    #[error("{t} does not lie after {s}")]
    NotAfter { s: FinSeq, t: FinSeq },
    #[error("no member is a prefix of {0} within the fragment")]
    MissingPrefix(FinSeq),
    #[error("chain from {s} never reaches {t}")]
    NotReached { s: FinSeq, t: FinSeq },
    #[error("{0} must be extended but the base has no larger element")]
    HorizonExhausted(FinSeq),
    #[error("invalid fragment: {0}")]
    Invalid(Violation),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// A strictly increasing finite sequence of naturals, identified with the
/// finite set it enumerates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinSeq(Vec<usize>);

impl FinSeq {
    pub fn new(entries: Vec<usize>) -> Result<Self, BarrierError> {
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BarrierError::NotIncreasing(entries));
        }
        Ok(FinSeq(entries))
    }

    /// Enumerates a set given in any order, dropping duplicates.
    pub fn from_set(entries: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = entries.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        FinSeq(v)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// `self ⊑ other`.
    pub fn is_prefix_of(&self, other: &FinSeq) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `self ⊏ other`.
    pub fn is_proper_prefix_of(&self, other: &FinSeq) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }

    pub fn is_subset_of(&self, other: &FinSeq) -> bool {
        // both sorted
        let mut it = other.0.iter();
        self.0.iter().all(|x| it.any(|y| y == x))
    }

    /// `self ⊂ other`.
    pub fn is_proper_subset_of(&self, other: &FinSeq) -> bool {
        self.len() < other.len() && self.is_subset_of(other)
    }

    pub fn union(&self, other: &FinSeq) -> FinSeq {
        FinSeq::from_set(self.0.iter().chain(&other.0).copied())
    }

    /// `self` with `v` appended; `v` must exceed every entry.
    pub fn extended(&self, v: usize) -> FinSeq {
        debug_assert!(self.last().map_or(true, |l| l < v));
        let mut e = self.0.clone();
        e.push(v);
        FinSeq(e)
    }
}

impl fmt::Debug for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl FromStr for FinSeq {
    type Err = BarrierError;

    /// `0,2,5` or `(0,2,5)`; the empty string or `()` is the empty sequence.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        if t.trim().is_empty() {
            return Ok(FinSeq::default());
        }
        let mut entries = Vec::new();
        let mut column = 1;
        for part in t.split(',') {
            let v = part.trim().parse().map_err(|_| BarrierError::Parse {
                column,
                message: format!("'{}' is not a natural number", part.trim()),
            })?;
            entries.push(v);
            column += part.len() + 1;
        }
        FinSeq::new(entries)
    }
}

/// `s ⊲ t`: some infinite `X` has `s ⊏ X` and `t ⊏ X⁻`. With `u` the
/// enumeration of `s ∪ t` this holds iff `s ⊑ u` and `t ⊑ u⁻`.
pub fn triangle_lt(s: &FinSeq, t: &FinSeq) -> Result<bool, BarrierError> {
    if s.is_empty() {
        return Err(BarrierError::EmptySequence);
    }
    Ok(triangle_unchecked(s.entries(), t.entries()))
}

fn triangle_unchecked(s: &[usize], t: &[usize]) -> bool {
    let u = FinSeq::from_set(s.iter().chain(t).copied());
    u.0.starts_with(s) && u.0[1..].starts_with(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FragmentKind {
    Block,
    Barrier,
}

/// Why a fragment fails the block or barrier axioms at its horizon.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("the empty sequence is a member")]
    EmptyMember,
    #[error("member {0} is not drawn from the base")]
    MemberOutsideBase(FinSeq),
    #[error("base element {0} lies beyond the horizon")]
    BaseOutsideHorizon(usize),
    #[error("{0} is a proper prefix of {1}")]
    PrefixViolation(FinSeq, FinSeq),
    #[error("{0} is a proper subset of {1}")]
    SubsetViolation(FinSeq, FinSeq),
    #[error("no member is a prefix of {0}")]
    Uncovered(FinSeq),
}

/// A finite surrogate of a block or barrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fragment {
    base: Vec<usize>,
    members: Vec<FinSeq>,
    horizon: usize,
    kind: FragmentKind,
}

impl Fragment {
    /// Assembles a fragment without checking the axioms; see
    /// [`validate_fragment`]. The horizon defaults to `max(base) + 1`.
    pub fn new(
        base: impl IntoIterator<Item = usize>,
        members: impl IntoIterator<Item = FinSeq>,
        horizon: Option<usize>,
        kind: FragmentKind,
    ) -> Self {
        let base = FinSeq::from_set(base).0;
        let mut members: Vec<FinSeq> = members.into_iter().collect();
        members.sort();
        members.dedup();
        let horizon = horizon.unwrap_or_else(|| base.last().map_or(0, |m| m + 1));
        Fragment {
            base,
            members,
            horizon,
            kind,
        }
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    /// Members in lexicographic order; positions index array values.
    pub fn members(&self) -> &[FinSeq] {
        &self.members
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn kind(&self) -> FragmentKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Greatest member length.
    pub fn rank(&self) -> usize {
        self.members.iter().map(FinSeq::len).max().unwrap_or(0)
    }

    pub fn index_of(&self, s: &FinSeq) -> Option<usize> {
        self.members.binary_search(s).ok()
    }

    /// The member that is an initial segment of `seq`, if any. Under the
    /// block axiom there is at most one.
    pub fn prefix_member(&self, seq: &[usize]) -> Option<usize> {
        (1..=seq.len()).find_map(|k| {
            self.members
                .binary_search_by(|m| m.0.as_slice().cmp(&seq[..k]))
                .ok()
        })
    }

    /// All pairs of member positions `(i, j)` with `members[i] ⊲ members[j]`.
    pub fn triangle_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, s) in self.members.iter().enumerate() {
            if s.is_empty() {
                continue;
            }
            for (j, t) in self.members.iter().enumerate() {
                if triangle_unchecked(&s.0, &t.0) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Every increasing sequence over the base of the given length.
    pub fn sequences_of_len(&self, len: usize) -> impl Iterator<Item = FinSeq> + '_ {
        self.base.iter().copied().combinations(len).map(FinSeq)
    }

    pub(crate) fn with_kind(mut self, kind: FragmentKind) -> Self {
        self.kind = kind;
        self
    }
}

/// `[V]^k`: all `k`-element subsets of `V`, as a barrier.
pub fn uniform_fragment(base: impl IntoIterator<Item = usize>, k: usize) -> Result<Fragment, BarrierError> {
    let base = FinSeq::from_set(base).0;
    if k == 0 || k > base.len() {
        return Err(BarrierError::InvalidRank { k, base: base.len() });
    }
    let members: Vec<FinSeq> = base.iter().copied().combinations(k).map(FinSeq).collect();
    Ok(Fragment::new(base, members, None, FragmentKind::Barrier))
}

/// Checks the kind-specific antichain condition and completeness at the
/// horizon, reporting the first offending pair or uncovered sequence.
pub fn validate_fragment(f: &Fragment) -> Result<(), Violation> {
    if f.members.iter().any(FinSeq::is_empty) {
        return Err(Violation::EmptyMember);
    }
    if let Some(&v) = f.base.iter().find(|&&v| v >= f.horizon) {
        return Err(Violation::BaseOutsideHorizon(v));
    }
    for m in &f.members {
        if m.0.iter().any(|v| f.base.binary_search(v).is_err()) {
            return Err(Violation::MemberOutsideBase(m.clone()));
        }
    }
    for s in &f.members {
        for t in &f.members {
            if s.is_proper_prefix_of(t) {
                return Err(Violation::PrefixViolation(s.clone(), t.clone()));
            }
            if f.kind == FragmentKind::Barrier && s.is_proper_subset_of(t) {
                return Err(Violation::SubsetViolation(s.clone(), t.clone()));
            }
        }
    }
    let r = f.rank();
    if r == 0 {
        // degenerate: nothing to cover
        return Ok(());
    }
    for seq in f.sequences_of_len(r) {
        if f.prefix_member(&seq.0).is_none() {
            return Err(Violation::Uncovered(seq));
        }
    }
    Ok(())
}

/// `B/s`: the members whose least entry exceeds `max(s)`, over the base
/// above `max(s)`. An empty result is a valid but degenerate fragment.
pub fn sub_fragment_after(f: &Fragment, s: &FinSeq) -> Result<Fragment, BarrierError> {
    if f.index_of(s).is_none() {
        return Err(BarrierError::MemberNotFound(s.clone()));
    }
    let top = s.last().ok_or(BarrierError::EmptySequence)?;
    let sub = Fragment {
        base: f.base.iter().copied().filter(|&v| v > top).collect(),
        members: f.members.iter().filter(|t| t.first().is_some_and(|m| m > top)).cloned().collect(),
        horizon: f.horizon,
        kind: f.kind,
    };
    validate_fragment(&sub).map_err(BarrierError::Invalid)?;
    Ok(sub)
}

/// Intervals `s = r⁰ ⊲ r¹ ⊲ … ⊲ rⁿ = t` of `s ∪ t`: `rⁱ` is the member
/// prefixing the enumeration of `s ∪ t` with its first `i` entries removed.
/// When a shifted sequence is too short to reach a member, it is extended by
/// the least base elements above everything used so far.
pub fn chain_intervals(f: &Fragment, s: &FinSeq, t: &FinSeq) -> Result<Vec<FinSeq>, BarrierError> {
    for m in [s, t] {
        if f.index_of(m).is_none() {
            return Err(BarrierError::MemberNotFound(m.clone()));
        }
    }
    let top = s.last().ok_or(BarrierError::EmptySequence)?;
    if t.first().map_or(true, |m| m <= top) {
        return Err(BarrierError::NotAfter {
            s: s.clone(),
            t: t.clone(),
        });
    }
    let mut u: Vec<usize> = s.0.iter().chain(&t.0).copied().collect();
    let mut chain = vec![s.clone()];
    let mut i = 1;
    while i < u.len() {
        match f.prefix_member(&u[i..]) {
            Some(idx) => {
                let r = &f.members[idx];
                debug_assert!(triangle_unchecked(&chain[chain.len() - 1].0, &r.0));
                chain.push(r.clone());
                if r == t {
                    return Ok(chain);
                }
                i += 1;
            }
            None => {
                let last = *u.last().expect("nonempty");
                match f.base.iter().find(|&&v| v > last) {
                    Some(&fresh) => u.push(fresh),
                    None => return Err(BarrierError::MissingPrefix(FinSeq(u[i..].to_vec()))),
                }
            }
        }
    }
    Err(BarrierError::NotReached {
        s: s.clone(),
        t: t.clone(),
    })
}

/// A barrier refining a block, with the member it came from for each new member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub barrier: Fragment,
    /// Barrier member position to source block member position.
    pub preimage: Vec<usize>,
}

impl Refinement {
    pub fn source_of<'a>(&self, block: &'a Fragment, member: usize) -> &'a FinSeq {
        &block.members[self.preimage[member]]
    }
}

/// Turns a block fragment into a barrier fragment by repeatedly extending
/// the least member that is a proper subset of another by every larger base
/// element. Each new member extends a member of the block, and completeness
/// at the horizon is kept since all members stay no longer than the rank.
pub fn block_to_barrier(f: &Fragment) -> Result<Refinement, BarrierError> {
    validate_fragment(&f.clone().with_kind(FragmentKind::Block)).map_err(BarrierError::Invalid)?;
    let mut work: Vec<(FinSeq, usize)> = f.members.iter().cloned().zip(0..).collect();
    loop {
        work.sort();
        let offender = work.iter().position(|(s, _)| work.iter().any(|(t, _)| s.is_proper_subset_of(t)));
        let Some(pos) = offender else { break };
        let (s, origin) = work.remove(pos);
        let top = s.last().expect("members are nonempty");
        let extensions: Vec<(FinSeq, usize)> = f
            .base
            .iter()
            .filter(|&&v| v > top)
            .map(|&v| (s.extended(v), origin))
            .collect();
        if extensions.is_empty() {
            return Err(BarrierError::HorizonExhausted(s));
        }
        work.extend(extensions);
    }
    work.sort();
    let barrier = Fragment {
        base: f.base.clone(),
        members: work.iter().map(|(s, _)| s.clone()).collect(),
        horizon: f.horizon,
        kind: FragmentKind::Barrier,
    };
    debug_assert_eq!(validate_fragment(&barrier), Ok(()));
    Ok(Refinement {
        barrier,
        preimage: work.iter().map(|&(_, o)| o).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> FinSeq {
        s.parse().unwrap()
    }

    fn frag(base: std::ops::Range<usize>, members: &[&str], kind: FragmentKind) -> Fragment {
        Fragment::new(base, members.iter().map(|m| seq(m)), None, kind)
    }

    #[test]
    fn finseq_basics() {
        assert!(FinSeq::new(vec![0, 2, 2]).is_err());
        assert!(seq("0").is_proper_prefix_of(&seq("0,1")));
        assert!(!seq("0,1").is_proper_prefix_of(&seq("0,1")));
        assert!(seq("1").is_proper_subset_of(&seq("0,1")));
        assert!(!seq("1,3").is_subset_of(&seq("0,1,2")));
        assert_eq!(seq("0,2").union(&seq("1,2")), seq("0,1,2"));
        assert_eq!(seq("(0,2)").to_string(), "(0,2)");
        assert!(matches!("0,a".parse::<FinSeq>(), Err(BarrierError::Parse { column: 3, .. })));
    }

    #[test]
    fn triangle_examples() {
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(triangle_lt(&FinSeq(vec![i]), &FinSeq(vec![j])).unwrap(), i < j);
            }
        }
        assert!(triangle_lt(&seq("0,1"), &seq("1,2")).unwrap());
        assert!(!triangle_lt(&seq("0,2"), &seq("1,3")).unwrap());
        assert!(triangle_lt(&seq("0,1,2"), &seq("1")).unwrap());
        assert_eq!(triangle_lt(&seq(""), &seq("1")), Err(BarrierError::EmptySequence));
    }

    #[test]
    fn uniform_fragments() {
        let f = uniform_fragment(0..3, 1).unwrap();
        assert_eq!(f.members(), &[seq("0"), seq("1"), seq("2")]);
        let f = uniform_fragment(0..3, 2).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(validate_fragment(&f), Ok(()));
        let f = uniform_fragment(0..4, 2).unwrap();
        assert_eq!(f.len(), 6);
        let got: Vec<(FinSeq, FinSeq)> = f
            .triangle_pairs()
            .into_iter()
            .map(|(i, j)| (f.members()[i].clone(), f.members()[j].clone()))
            .collect();
        let mut expect = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                for c in b + 1..4 {
                    expect.push((FinSeq(vec![a, b]), FinSeq(vec![b, c])));
                }
            }
        }
        assert_eq!(got, expect);
        assert!(uniform_fragment(0..2, 3).is_err());
        assert!(uniform_fragment(0..2, 0).is_err());
    }

    #[test]
    fn validation() {
        assert_eq!(validate_fragment(&uniform_fragment(0..5, 3).unwrap()), Ok(()));
        let f = frag(0..2, &["0", "0,1"], FragmentKind::Block);
        assert_eq!(validate_fragment(&f), Err(Violation::PrefixViolation(seq("0"), seq("0,1"))));
        // (0,1) starts with 0 but only (0,2) does: not complete at rank 2
        let f = frag(0..3, &["0,2", "1"], FragmentKind::Barrier);
        assert_eq!(validate_fragment(&f), Err(Violation::Uncovered(seq("0,1"))));
        let f = frag(0..3, &["0,1", "0,2", "1"], FragmentKind::Block);
        assert_eq!(validate_fragment(&f), Ok(()));
        let f = f.with_kind(FragmentKind::Barrier);
        assert_eq!(validate_fragment(&f), Err(Violation::SubsetViolation(seq("1"), seq("0,1"))));
        let f = frag(0..3, &["0", "", "1", "2"], FragmentKind::Block);
        assert_eq!(validate_fragment(&f), Err(Violation::EmptyMember));
        let f = Fragment::new(0..3, [seq("0"), seq("1"), seq("2"), seq("4")], None, FragmentKind::Block);
        assert_eq!(validate_fragment(&f), Err(Violation::MemberOutsideBase(seq("4"))));
        let f = Fragment::new(0..3, [seq("0"), seq("1"), seq("2")], Some(2), FragmentKind::Block);
        assert_eq!(validate_fragment(&f), Err(Violation::BaseOutsideHorizon(2)));
    }

    #[test]
    fn sub_fragments() {
        let f = uniform_fragment(0..5, 1).unwrap();
        let sub = sub_fragment_after(&f, &seq("2")).unwrap();
        assert_eq!(sub.members(), &[seq("3"), seq("4")]);
        assert_eq!(sub.base(), &[3, 4]);

        let f = uniform_fragment(0..5, 2).unwrap();
        let sub = sub_fragment_after(&f, &seq("0,1")).unwrap();
        assert_eq!(sub, uniform_fragment(2..5, 2).unwrap().clone_with_horizon(5));

        let sub = sub_fragment_after(&f, &seq("2,4")).unwrap();
        assert!(sub.is_empty());
        assert_eq!(
            sub_fragment_after(&f, &seq("7")),
            Err(BarrierError::MemberNotFound(seq("7")))
        );
    }

    impl Fragment {
        fn clone_with_horizon(&self, h: usize) -> Fragment {
            Fragment {
                horizon: h,
                ..self.clone()
            }
        }
    }

    #[test]
    fn interval_chains() {
        let f = uniform_fragment(0..4, 1).unwrap();
        assert_eq!(chain_intervals(&f, &seq("0"), &seq("3")).unwrap(), vec![seq("0"), seq("3")]);
        let f = uniform_fragment(0..4, 2).unwrap();
        assert_eq!(
            chain_intervals(&f, &seq("0,1"), &seq("2,3")).unwrap(),
            vec![seq("0,1"), seq("1,2"), seq("2,3")]
        );
        let f = uniform_fragment(0..5, 2).unwrap();
        assert_eq!(
            chain_intervals(&f, &seq("0,1"), &seq("2,4")).unwrap(),
            vec![seq("0,1"), seq("1,2"), seq("2,4")]
        );
        assert!(matches!(
            chain_intervals(&f, &seq("0,3"), &seq("2,4")),
            Err(BarrierError::NotAfter { .. })
        ));
    }

    #[test]
    fn interval_chains_extend_with_fresh_elements() {
        // rank 3 for sequences starting at 0 or 1, rank 1 above
        let mut members: Vec<FinSeq> = (0..6)
            .combinations(3)
            .filter(|c| c[0] < 2)
            .map(FinSeq)
            .collect();
        members.extend((2..6).map(|v| FinSeq(vec![v])));
        let f = Fragment::new(0..6, members, None, FragmentKind::Block);
        assert_eq!(validate_fragment(&f), Ok(()));
        let chain = chain_intervals(&f, &seq("0,1,2"), &seq("3")).unwrap();
        assert_eq!(chain, vec![seq("0,1,2"), seq("1,2,3"), seq("2"), seq("3")]);

        // (1,2) must grow to (1,2,3) before it names a member
        let mut members: Vec<FinSeq> = (1..6).map(|x| FinSeq(vec![0, x])).collect();
        members.extend((2..6).combinations(2).map(|c| FinSeq(vec![1, c[0], c[1]])));
        members.extend((2..6).map(|v| FinSeq(vec![v])));
        let f = Fragment::new(0..6, members, None, FragmentKind::Block);
        assert_eq!(validate_fragment(&f), Ok(()));
        let chain = chain_intervals(&f, &seq("0,1"), &seq("2")).unwrap();
        assert_eq!(chain, vec![seq("0,1"), seq("1,2,3"), seq("2")]);

        // base too small to complete the shifted sequence
        let members: Vec<FinSeq> = [vec![0, 1], vec![0, 2], vec![1, 2], vec![2]].into_iter().map(FinSeq).collect();
        let f = Fragment::new(0..3, members, None, FragmentKind::Block);
        assert_eq!(validate_fragment(&f), Ok(()));
        assert_eq!(chain_intervals(&f, &seq("0,1"), &seq("2")).unwrap(), vec![seq("0,1"), seq("1,2"), seq("2")]);
    }

    #[test]
    fn missing_prefix_when_base_runs_out() {
        // (1) only reaches (1,x) members, and nothing lies above 2
        let f = Fragment::new(
            0..3,
            [seq("0"), seq("1,2"), seq("2")],
            None,
            FragmentKind::Block,
        );
        assert_eq!(
            chain_intervals(&f, &seq("0"), &seq("2")).unwrap(),
            vec![seq("0"), seq("2")]
        );
        let f = Fragment::new(0..3, [seq("0"), seq("1,2")], None, FragmentKind::Block);
        assert!(matches!(
            chain_intervals(&f, &seq("0"), &seq("1,2")),
            Ok(ref c) if c == &vec![seq("0"), seq("1,2")]
        ));
        let f = Fragment::new(0..4, [seq("0,1"), seq("3")], None, FragmentKind::Block);
        assert_eq!(
            chain_intervals(&f, &seq("0,1"), &seq("3")),
            Err(BarrierError::MissingPrefix(seq("1,3")))
        );
    }

    #[test]
    fn refinement() {
        let f = uniform_fragment(0..4, 2).unwrap();
        let r = block_to_barrier(&f).unwrap();
        assert_eq!(r.barrier, f);
        assert_eq!(r.preimage, (0..f.len()).collect::<Vec<_>>());

        let block = frag(0..3, &["0,1", "0,2", "1"], FragmentKind::Block);
        let r = block_to_barrier(&block).unwrap();
        assert_eq!(r.barrier.members(), &[seq("0,1"), seq("0,2"), seq("1,2")]);
        assert_eq!(r.source_of(&block, 2), &seq("1"));
        assert_eq!(validate_fragment(&r.barrier), Ok(()));

        let block = frag(0..2, &["0,1", "1"], FragmentKind::Block);
        assert_eq!(block_to_barrier(&block), Err(BarrierError::HorizonExhausted(seq("1"))));

        let single = frag(0..1, &["0"], FragmentKind::Block);
        assert_eq!(block_to_barrier(&single).unwrap().barrier.members(), &[seq("0")]);
    }
}
