//! Finite partial orders and quasi orders.
//!
//! Orders are stored as dense `n × n` comparison matrices. Everything in this
//! crate works at desk scale (a few dozen elements at most), where the dense
//! form is both the simplest and the fastest representation for the
//! exhaustive searches built on top of it.

use std::fmt;

use thiserror::Error;

use crate::search::{first_by_root, SearchLimits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("pair references undeclared element {0}")]
    MissingElement(usize),
    #[error("relation is not reflexive at {0}")]
    ReflexivityViolation(usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    TransitivityViolation(usize, usize, usize),
    #[error("relation is not antisymmetric: {0} <= {1} <= {0}")]
    AntisymmetryViolation(usize, usize),
    #[error("label list has {labels} entries for {size} elements")]
    LabelCount { labels: usize, size: usize },
    #[error("sum has {summands} summands for an index of size {index}")]
    SummandCount { index: usize, summands: usize },
    #[error("map is not total: {0}")]
    BadMap(String),
    #[error("search space of {candidates} candidates exceeds budget {budget}")]
    SearchBudgetExceeded { candidates: u128, budget: u64 },
}

/// A relation as it arrives from the outside: declared size, edge list and
/// an opt-in flag for reflexive-transitive closure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawRelation {
    pub size: usize,
    pub labels: Option<Vec<String>>,
    pub pairs: Vec<(usize, usize)>,
    pub closure: bool,
}

impl RawRelation {
    pub fn new(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        RawRelation {
            size,
            labels: None,
            pairs: pairs.into_iter().collect(),
            closure: false,
        }
    }

    pub fn with_closure(mut self, closure: bool) -> Self {
        self.closure = closure;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    fn matrix(&self) -> Result<Vec<bool>, PosetError> {
        let n = self.size;
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(PosetError::LabelCount {
                    labels: labels.len(),
                    size: n,
                });
            }
        }
        let mut le = vec![false; n * n];
        for &(a, b) in &self.pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(PosetError::MissingElement(x));
                }
            }
            le[a * n + b] = true;
        }
        if self.closure {
            for i in 0..n {
                le[i * n + i] = true;
            }
            // Warshall
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
        Ok(le)
    }
}

fn check_reflexive_transitive(n: usize, le: &[bool]) -> Result<(), PosetError> {
    for i in 0..n {
        if !le[i * n + i] {
            return Err(PosetError::ReflexivityViolation(i));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !le[a * n + b] {
                continue;
            }
            for c in 0..n {
                if le[b * n + c] && !le[a * n + c] {
                    return Err(PosetError::TransitivityViolation(a, b, c));
                }
            }
        }
    }
    Ok(())
}

fn check_antisymmetric(n: usize, le: &[bool]) -> Result<(), PosetError> {
    for a in 0..n {
        for b in a + 1..n {
            if le[a * n + b] && le[b * n + a] {
                return Err(PosetError::AntisymmetryViolation(a, b));
            }
        }
    }
    Ok(())
}

/// Validates a raw relation as a partial order, closing it first when the
/// closure flag is set. Violations name the offending element, pair or triple.
pub fn validate_poset(raw: &RawRelation) -> Result<Poset, PosetError> {
    let le = raw.matrix()?;
    check_reflexive_transitive(raw.size, &le)?;
    check_antisymmetric(raw.size, &le)?;
    Ok(Poset {
        n: raw.size,
        le,
        labels: raw.labels.clone(),
    })
}

/// Like [`validate_poset`] but without the antisymmetry requirement.
pub fn validate_preorder(raw: &RawRelation) -> Result<Preorder, PosetError> {
    let le = raw.matrix()?;
    check_reflexive_transitive(raw.size, &le)?;
    Ok(Preorder {
        n: raw.size,
        le,
        labels: raw.labels.clone(),
    })
}

/// A finite partial order on the ids `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    le: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strict: Vec<_> = self
            .strict_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.label(a), self.label(b)))
            .collect();
        write!(f, "Poset({}; {})", self.n, strict.join(" "))
    }
}

impl Poset {
    /// Builds a poset from a comparison function that is already known to be
    /// a partial order.
    pub(crate) fn from_fn_unchecked(n: usize, mut le: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                m[a * n + b] = le(a, b);
            }
        }
        Poset {
            n,
            le: m,
            labels: None,
        }
    }

    /// Builds a poset from a comparison function, checking the axioms.
    pub fn from_fn(n: usize, le: impl FnMut(usize, usize) -> bool) -> Result<Self, PosetError> {
        let p = Self::from_fn_unchecked(n, le);
        check_reflexive_transitive(n, &p.le)?;
        check_antisymmetric(n, &p.le)?;
        Ok(p)
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn_unchecked(n, |a, b| a <= b)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn_unchecked(n, |a, b| a == b)
    }

    /// `1 ⊕ 2` with ids `0 < 1` forming the chain and id 2 the isolated
    /// point, labelled `0`, `1` and `*`.
    pub fn one_plus_two() -> Self {
        Self::from_fn_unchecked(3, |a, b| a == b || (a == 0 && b == 1))
            .with_labels(vec!["0".into(), "1".into(), "*".into()])
            .expect("three labels")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, PosetError> {
        if labels.len() != self.n {
            return Err(PosetError::LabelCount {
                labels: labels.len(),
                size: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.n + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    pub fn incomparable(&self, a: usize, b: usize) -> bool {
        !self.comparable(a, b)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// Looks up an element by display label, falling back to numeric ids.
    pub fn id_of_label(&self, label: &str) -> Option<usize> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == label) {
                return Some(i);
            }
        }
        label.parse::<usize>().ok().filter(|&i| i < self.n)
    }

    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// True when every two elements are comparable.
    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.comparable(a, b)))
    }

    /// Strict upper bounds of `a`.
    pub fn strict_up(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&b| self.lt(a, b))
    }

    /// The suborder induced on `elements`, renumbered in the given order.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let labels = self
            .labels
            .as_ref()
            .map(|l| elements.iter().map(|&e| l[e].clone()).collect());
        Poset {
            labels,
            ..Self::from_fn_unchecked(elements.len(), |a, b| self.le(elements[a], elements[b]))
        }
    }

    /// Ids sorted by position in a chain. Only meaningful when `is_chain`.
    pub(crate) fn chain_ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.n];
        for a in 0..self.n {
            rank[a] = (0..self.n).filter(|&b| self.lt(b, a)).count();
        }
        rank
    }

    /// The relation as a plain edge list of all `le` pairs.
    pub fn le_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.le(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// A finite quasi order: reflexive and transitive, possibly with cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    n: usize,
    le: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl Preorder {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.n + b]
    }
}

impl From<Poset> for Preorder {
    fn from(p: Poset) -> Self {
        Preorder {
            n: p.n,
            le: p.le,
            labels: p.labels,
        }
    }
}

/// Result of collapsing mutually comparable elements of a [`Preorder`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub poset: Poset,
    /// Element id to class id; class ids are ordered by least member.
    pub class_of: Vec<usize>,
    /// Class id to its least member.
    pub representatives: Vec<usize>,
}

impl Quotient {
    /// The representative (least id) of the class containing `a`.
    pub fn representative_of(&self, a: usize) -> usize {
        self.representatives[self.class_of[a]]
    }
}

pub fn quotient_preorder(r: &Preorder) -> Quotient {
    let n = r.size();
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let class = representatives.len();
        representatives.push(a);
        for b in a..n {
            if r.le(a, b) && r.le(b, a) {
                class_of[b] = class;
            }
        }
    }
    let mut poset = Poset::from_fn_unchecked(representatives.len(), |x, y| {
        r.le(representatives[x], representatives[y])
    });
    if let Some(labels) = &r.labels {
        poset.labels = Some(representatives.iter().map(|&a| labels[a].clone()).collect());
    }
    Quotient {
        poset,
        class_of,
        representatives,
    }
}

/// The named small orders used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinOrder {
    Chain(usize),
    Antichain(usize),
    OnePlusTwo,
}

pub fn builtin_order(kind: BuiltinOrder) -> Poset {
    match kind {
        BuiltinOrder::Chain(n) => Poset::chain(n),
        BuiltinOrder::Antichain(n) => Poset::antichain(n),
        BuiltinOrder::OnePlusTwo => Poset::one_plus_two(),
    }
}

/// A total map between two posets, with its classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderMap {
    source: Poset,
    target: Poset,
    map: Vec<usize>,
}

impl OrderMap {
    pub fn new(source: Poset, target: Poset, map: Vec<usize>) -> Result<Self, PosetError> {
        if map.len() != source.size() {
            return Err(PosetError::BadMap(format!(
                "{} images for {} elements",
                map.len(),
                source.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.size()) {
            return Err(PosetError::BadMap(format!("image {bad} outside target")));
        }
        Ok(OrderMap { source, target, map })
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, p: usize) -> usize {
        self.map[p]
    }

    fn all_pairs(&self, mut ok: impl FnMut(usize, usize) -> bool) -> bool {
        let n = self.source.size();
        (0..n).all(|a| (0..n).all(|b| ok(a, b)))
    }

    /// `f(p) <= f(q)` implies `p <= q`.
    pub fn is_order_reflecting(&self) -> bool {
        self.all_pairs(|a, b| !self.target.le(self.map[a], self.map[b]) || self.source.le(a, b))
    }

    pub fn is_monotone(&self) -> bool {
        self.all_pairs(|a, b| !self.source.le(a, b) || self.target.le(self.map[a], self.map[b]))
    }

    /// Order reflecting and monotone.
    pub fn is_embedding(&self) -> bool {
        self.is_order_reflecting() && self.is_monotone()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }
}

/// An index poset together with one summand per index element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSpec {
    index: Poset,
    summands: Vec<Poset>,
}

impl SumSpec {
    pub fn new(index: Poset, summands: Vec<Poset>) -> Result<Self, PosetError> {
        if summands.len() != index.size() {
            return Err(PosetError::SummandCount {
                index: index.size(),
                summands: summands.len(),
            });
        }
        Ok(SumSpec { index, summands })
    }

    pub fn index(&self) -> &Poset {
        &self.index
    }

    pub fn summands(&self) -> &[Poset] {
        &self.summands
    }
}

/// The sum order `Σ_{i∈I} Q_i` with bookkeeping between ids and `(i, q)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumPoset {
    pub poset: Poset,
    pub spec: SumSpec,
    pairs: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

impl SumPoset {
    pub fn pair_of(&self, id: usize) -> (usize, usize) {
        self.pairs[id]
    }

    pub fn id_of(&self, index: usize, q: usize) -> Option<usize> {
        let summand = self.spec.summands.get(index)?;
        (q < summand.size()).then(|| self.offsets[index] + q)
    }

    pub fn index(&self) -> &Poset {
        &self.spec.index
    }
}

/// Builds `Σ_{i∈I} Q_i`: `(i,q) <= (j,r)` iff `i < j` in `I`, or `i = j` and
/// `q <= r` in `Q_i`. Ids enumerate the pairs index-major.
pub fn sum_over_index(spec: &SumSpec) -> SumPoset {
    let mut pairs = Vec::new();
    let mut offsets = Vec::with_capacity(spec.summands.len());
    for (i, q) in spec.summands.iter().enumerate() {
        offsets.push(pairs.len());
        pairs.extend((0..q.size()).map(|x| (i, x)));
    }
    let poset = Poset::from_fn_unchecked(pairs.len(), |a, b| {
        let (i, q) = pairs[a];
        let (j, r) = pairs[b];
        spec.index.lt(i, j) || (i == j && spec.summands[i].le(q, r))
    });
    let labels = pairs
        .iter()
        .map(|&(i, q)| format!("({},{})", spec.index.label(i), spec.summands[i].label(q)))
        .collect();
    SumPoset {
        poset: poset.with_labels(labels).expect("one label per pair"),
        spec: spec.clone(),
        pairs,
        offsets,
    }
}

fn check_candidates(p: &Poset, q: &Poset, limits: &SearchLimits) -> Result<(), PosetError> {
    let candidates = (q.size() as u128).checked_pow(p.size() as u32).unwrap_or(u128::MAX);
    if candidates > limits.budget as u128 {
        return Err(PosetError::SearchBudgetExceeded {
            candidates,
            budget: limits.budget,
        });
    }
    Ok(())
}

/// Backtracking over maps `P -> Q` in lexicographic order of the image
/// vector. `consistent(map, k)` checks the newly assigned position `k`
/// against the earlier ones.
fn least_map<F>(p: &Poset, q: &Poset, limits: &SearchLimits, consistent: F) -> Result<Option<OrderMap>, PosetError>
where
    F: Fn(&[usize], usize) -> bool + Sync,
{
    check_candidates(p, q, limits)?;
    let n = p.size();
    if n == 0 {
        return Ok(Some(OrderMap::new(p.clone(), q.clone(), vec![])?));
    }
    fn extend<F: Fn(&[usize], usize) -> bool>(map: &mut Vec<usize>, n: usize, m: usize, consistent: &F) -> bool {
        let k = map.len();
        if k == n {
            return true;
        }
        for v in 0..m {
            map.push(v);
            if consistent(map, k) && extend(map, n, m, consistent) {
                return true;
            }
            map.pop();
        }
        false
    }
    let found = first_by_root(q.size(), limits.parallel, |root| -> Result<Option<Vec<usize>>, PosetError> {
        let mut map = vec![root];
        Ok((consistent(&map, 0) && extend(&mut map, n, q.size(), &consistent)).then_some(map))
    })?;
    found.map(|m| OrderMap::new(p.clone(), q.clone(), m)).transpose()
}

/// The lexicographically least embedding of `p` into `q`, if any.
pub fn find_embedding(p: &Poset, q: &Poset, limits: &SearchLimits) -> Result<Option<OrderMap>, PosetError> {
    least_map(p, q, limits, |map, k| {
        (0..k).all(|i| {
            p.le(i, k) == q.le(map[i], map[k]) && p.le(k, i) == q.le(map[k], map[i])
        })
    })
}

/// The lexicographically least order reflecting map from `p` into `q`, if any.
pub fn find_order_reflecting(p: &Poset, q: &Poset, limits: &SearchLimits) -> Result<Option<OrderMap>, PosetError> {
    least_map(p, q, limits, |map, k| {
        (0..=k).all(|i| {
            (!q.le(map[i], map[k]) || p.le(i, k)) && (!q.le(map[k], map[i]) || p.le(k, i))
        })
    })
}

/// Order isomorphism test via an embedding between equal-size orders.
pub fn is_isomorphic(p: &Poset, q: &Poset) -> bool {
    p.size() == q.size()
        && find_embedding(p, q, &SearchLimits::with_budget(u64::MAX))
            .ok()
            .flatten()
            .is_some()
}

/// Every partial order on the ids `0..n`, labelled (not up to isomorphism).
///
/// Each unordered pair is assigned one of `a < b`, `b < a` or incomparable,
/// and the candidates are filtered through [`validate_poset`].
pub fn enumerate_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut edges: Vec<(usize, usize)> = (0..n).map(|a| (a, a)).collect();
        for &(a, b) in &pairs {
            match code % 3 {
                1 => edges.push((a, b)),
                2 => edges.push((b, a)),
                _ => {}
            }
            code /= 3;
        }
        if let Ok(p) = validate_poset(&RawRelation::new(n, edges)) {
            out.push(p);
        }
    }
    out
}
