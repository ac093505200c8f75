//! Hereditarily finite sets with urelements from a finite poset.
//!
//! Terms live in a [`TermStore`] arena and are hash-consed: structurally
//! equal terms get the same [`TermId`]. The recursive `ṅ`, `n̈` are
//! exponential as trees but linear as DAGs, which together with the
//! pairwise memo in [`HOrder`] keeps all comparisons polynomial.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::poset::Poset;

/// Largest `n` accepted by [`TermStore::dot`], [`TermStore::ddot`] and
/// [`verify_interlocked`].
pub const MAX_BOUND: usize = 64;

/// `★` in `1 ⊕ 2`; the chain is `0 < 1`.
pub const STAR: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HsetError {
    #[error("label {0} is not in the carrier")]
    UnknownLabel(String),
    #[error("term id {0} does not belong to this store")]
    UnknownTerm(u32),
    #[error("bound {0} exceeds the limit of {MAX_BOUND}")]
    BoundExceeded(usize),
    #[error("store has carrier of size {store}, order has {order}")]
    CarrierMismatch { store: usize, order: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(u32);

impl TermId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Leaf(usize),
    /// Children sorted by id, without duplicates.
    Set(Vec<TermId>),
}

#[derive(Debug, Clone, Default)]
pub struct TermStore {
    carrier: usize,
    terms: Vec<Term>,
    intern: HashMap<Term, TermId>,
}

impl TermStore {
    /// A store for terms with leaf labels in `0..carrier`.
    pub fn new(carrier: usize) -> Self {
        TermStore {
            carrier,
            ..Default::default()
        }
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    /// Number of distinct terms built so far.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, id: TermId) -> &Term {
        &self.terms[id.index()]
    }

    pub fn children(&self, id: TermId) -> &[TermId] {
        match self.term(id) {
            Term::Leaf(_) => &[],
            Term::Set(c) => c,
        }
    }

    fn intern(&mut self, t: Term) -> TermId {
        if let Some(&id) = self.intern.get(&t) {
            return id;
        }
        let id = TermId(u32::try_from(self.terms.len()).expect("term arena overflow"));
        self.terms.push(t.clone());
        self.intern.insert(t, id);
        id
    }

    pub fn mk_leaf(&mut self, q: usize) -> Result<TermId, HsetError> {
        if q >= self.carrier {
            return Err(HsetError::UnknownLabel(q.to_string()));
        }
        Ok(self.intern(Term::Leaf(q)))
    }

    pub fn mk_set(&mut self, children: impl IntoIterator<Item = TermId>) -> Result<TermId, HsetError> {
        let mut c: Vec<TermId> = children.into_iter().collect();
        if let Some(bad) = c.iter().find(|id| id.index() >= self.terms.len()) {
            return Err(HsetError::UnknownTerm(bad.0));
        }
        c.sort_unstable();
        c.dedup();
        Ok(self.intern(Term::Set(c)))
    }

    /// Every term reachable from `x`, `x` included, children before parents.
    fn reachable(&self, x: TermId) -> Vec<TermId> {
        let mut seen = vec![false; self.terms.len()];
        let mut out = Vec::new();
        let mut stack = vec![(x, false)];
        while let Some((t, expanded)) = stack.pop() {
            if expanded {
                out.push(t);
                continue;
            }
            if seen[t.index()] {
                continue;
            }
            seen[t.index()] = true;
            stack.push((t, true));
            for &c in self.children(t).iter().rev() {
                if !seen[c.index()] {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Leaf labels occurring in `x`, sorted.
    pub fn supp(&self, x: TermId) -> Vec<usize> {
        let mut labels: Vec<usize> = self
            .reachable(x)
            .into_iter()
            .filter_map(|t| match self.term(t) {
                Term::Leaf(q) => Some(*q),
                Term::Set(_) => None,
            })
            .collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    /// The support as a set of leaves.
    pub fn supp_term(&mut self, x: TermId) -> TermId {
        let leaves: Vec<TermId> = self
            .supp(x)
            .into_iter()
            .map(|q| self.mk_leaf(q).expect("label from this store"))
            .collect();
        self.mk_set(leaves).expect("fresh leaves")
    }

    /// Size of `x` as a tree, counting every node.
    pub fn tree_size(&self, x: TermId) -> u128 {
        let mut size: HashMap<TermId, u128> = HashMap::new();
        for t in self.reachable(x) {
            let s = 1 + self.children(t).iter().map(|c| size[c]).sum::<u128>();
            size.insert(t, s);
        }
        size[&x]
    }

    /// Number of distinct subterms of `x`, `x` included.
    pub fn dag_size(&self, x: TermId) -> usize {
        self.reachable(x).len()
    }

    fn interlocked(&mut self, n: usize, low: usize) -> Result<TermId, HsetError> {
        if n > MAX_BOUND {
            return Err(HsetError::BoundExceeded(n));
        }
        if self.carrier != 3 {
            return Err(HsetError::CarrierMismatch {
                store: self.carrier,
                order: 3,
            });
        }
        let star = self.mk_leaf(STAR)?;
        let leaf = self.mk_leaf(low)?;
        let mut built = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let mut c = vec![star, leaf];
            c.extend_from_slice(&built);
            let next = self.mk_set(c)?;
            built.push(next);
        }
        Ok(built[n])
    }

    /// `ṅ = {★, 0} ∪ {ṁ | m < n}` over `1 ⊕ 2`.
    pub fn dot(&mut self, n: usize) -> Result<TermId, HsetError> {
        self.interlocked(n, 0)
    }

    /// `n̈ = {★, 1} ∪ {m̈ | m < n}` over `1 ⊕ 2`.
    pub fn ddot(&mut self, n: usize) -> Result<TermId, HsetError> {
        self.interlocked(n, 1)
    }

    /// Copies `x` into `target`, relabelling leaves by `map`.
    pub fn transport(&self, x: TermId, map: &[usize], target: &mut TermStore) -> Result<TermId, HsetError> {
        let mut image: HashMap<TermId, TermId> = HashMap::new();
        for t in self.reachable(x) {
            let new = match self.term(t) {
                Term::Leaf(q) => target.mk_leaf(map[*q])?,
                Term::Set(c) => {
                    let c: Vec<TermId> = c.iter().map(|c| image[c]).collect();
                    target.mk_set(c)?
                }
            };
            image.insert(t, new);
        }
        Ok(image[&x])
    }

    /// Renders `x` with the labels of `q`, e.g. `{* 0 {* 0}}`.
    pub fn render(&self, x: TermId, q: &Poset) -> String {
        let mut out = String::new();
        self.render_into(x, q, &mut out);
        out
    }

    fn render_into(&self, x: TermId, q: &Poset, out: &mut String) {
        match self.term(x) {
            Term::Leaf(a) => out.push_str(&q.label(*a)),
            Term::Set(c) => {
                out.push('{');
                for (i, &child) in c.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    self.render_into(child, q, out);
                }
                out.push('}');
            }
        }
    }

    /// Parses the brace notation, resolving atoms through the labels of `q`.
    pub fn parse(&mut self, text: &str, q: &Poset) -> Result<TermId, HsetError> {
        if q.size() != self.carrier {
            return Err(HsetError::CarrierMismatch {
                store: self.carrier,
                order: q.size(),
            });
        }
        let tokens = tokenize(text);
        let mut pos = 0;
        let t = self.parse_term(&tokens, &mut pos, q, text.len())?;
        if let Some(&(col, tok)) = tokens.get(pos) {
            return Err(HsetError::Parse {
                column: col,
                message: format!("unexpected `{tok}` after term"),
            });
        }
        Ok(t)
    }

    fn parse_term(&mut self, tokens: &[(usize, &str)], pos: &mut usize, q: &Poset, end: usize) -> Result<TermId, HsetError> {
        let Some(&(col, tok)) = tokens.get(*pos) else {
            return Err(HsetError::Parse {
                column: end + 1,
                message: "unexpected end of input".into(),
            });
        };
        *pos += 1;
        match tok {
            "{" => {
                let mut children = Vec::new();
                loop {
                    match tokens.get(*pos) {
                        Some(&(_, "}")) => {
                            *pos += 1;
                            return self.mk_set(children);
                        }
                        Some(_) => children.push(self.parse_term(tokens, pos, q, end)?),
                        None => {
                            return Err(HsetError::Parse {
                                column: col,
                                message: "unclosed `{`".into(),
                            })
                        }
                    }
                }
            }
            "}" => Err(HsetError::Parse {
                column: col,
                message: "unmatched `}`".into(),
            }),
            atom => {
                let id = q.id_of_label(atom).ok_or_else(|| HsetError::UnknownLabel(atom.to_string()))?;
                self.mk_leaf(id)
            }
        }
    }
}

/// Braces and maximal runs of other non-space characters, with 1-based
/// columns.
fn tokenize(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in text.char_indices() {
        let brace = ch == '{' || ch == '}';
        if ch.is_whitespace() || brace {
            if let Some(s) = start.take() {
                out.push((s + 1, &text[s..i]));
            }
            if brace {
                out.push((i + 1, &text[i..i + 1]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

/// `≤_{H(Q)}` on the terms of one store, memoized on id pairs.
pub struct HOrder<'a> {
    store: &'a TermStore,
    q: &'a Poset,
    memo: HashMap<(TermId, TermId), bool>,
}

impl<'a> HOrder<'a> {
    pub fn new(store: &'a TermStore, q: &'a Poset) -> Result<Self, HsetError> {
        if store.carrier != q.size() {
            return Err(HsetError::CarrierMismatch {
                store: store.carrier,
                order: q.size(),
            });
        }
        Ok(HOrder {
            store,
            q,
            memo: HashMap::new(),
        })
    }

    pub fn leq(&mut self, x: TermId, y: TermId) -> bool {
        if x == y {
            return true;
        }
        if let Some(&v) = self.memo.get(&(x, y)) {
            return v;
        }
        let store = self.store;
        let v = match (store.term(x), store.term(y)) {
            (Term::Leaf(p), Term::Leaf(q)) => self.q.le(*p, *q),
            (Term::Leaf(_), Term::Set(b)) => b.iter().any(|&c| self.leq(x, c)),
            (Term::Set(a), Term::Leaf(_)) => a.iter().all(|&c| self.leq(c, y)),
            (Term::Set(a), Term::Set(b)) => a.iter().all(|&c| b.iter().any(|&d| self.leq(c, d))),
        };
        self.memo.insert((x, y), v);
        v
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// One-shot comparison with a fresh memo.
pub fn h_leq(store: &TermStore, x: TermId, y: TermId, q: &Poset) -> Result<bool, HsetError> {
    Ok(HOrder::new(store, q)?.leq(x, y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterlockRelation {
    /// `ṁ ≤ ṅ ⇔ m ≤ n`
    DotDot,
    /// `m̈ ≤ n̈ ⇔ m ≤ n`
    DdotDdot,
    /// `ṁ ≤ n̈ ⇔ m ≤ n`
    DotDdot,
    /// `m̈ ≰ ṅ`
    DdotDot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlockViolation {
    pub m: usize,
    pub n: usize,
    pub relation: InterlockRelation,
    pub expected: bool,
    pub found: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlockReport {
    pub bound: usize,
    pub pairs_checked: usize,
    pub violations: Vec<InterlockViolation>,
}

/// Checks the four interlocking relations for all `m, n <= bound`.
pub fn verify_interlocked(bound: usize) -> Result<InterlockReport, HsetError> {
    if bound > MAX_BOUND {
        return Err(HsetError::BoundExceeded(bound));
    }
    let q = Poset::one_plus_two();
    let mut store = TermStore::new(3);
    let dots: Vec<TermId> = (0..=bound).map(|n| store.dot(n)).collect::<Result<_, _>>()?;
    let ddots: Vec<TermId> = (0..=bound).map(|n| store.ddot(n)).collect::<Result<_, _>>()?;
    let mut h = HOrder::new(&store, &q)?;
    let mut violations = Vec::new();
    for m in 0..=bound {
        for n in 0..=bound {
            let checks = [
                (InterlockRelation::DotDot, h.leq(dots[m], dots[n]), m <= n),
                (InterlockRelation::DdotDdot, h.leq(ddots[m], ddots[n]), m <= n),
                (InterlockRelation::DotDdot, h.leq(dots[m], ddots[n]), m <= n),
                (InterlockRelation::DdotDot, h.leq(ddots[m], dots[n]), false),
            ];
            for (relation, found, expected) in checks {
                if found != expected {
                    violations.push(InterlockViolation {
                        m,
                        n,
                        relation,
                        expected,
                        found,
                    });
                }
            }
        }
    }
    Ok(InterlockReport {
        bound,
        pairs_checked: (bound + 1) * (bound + 1),
        violations,
    })
}

#[derive(Debug, Clone)]
pub struct Antichain3Report {
    pub store: TermStore,
    /// `{0̈, 5̇}`, `{1̈, 4̇}`, `{2̈, 3̇}`.
    pub terms: [TermId; 3],
    /// `(i, j, terms[i] ≤ terms[j])` for the six ordered pairs `i ≠ j`.
    pub comparisons: Vec<(usize, usize, bool)>,
    pub is_antichain: bool,
}

impl Antichain3Report {
    pub fn rendered(&self) -> Vec<String> {
        let q = Poset::one_plus_two();
        self.terms.iter().map(|&t| self.store.render(t, &q)).collect()
    }
}

pub fn antichain3_check() -> Antichain3Report {
    let q = Poset::one_plus_two();
    let mut store = TermStore::new(3);
    let mut pair = |a: usize, b: usize| -> TermId {
        let x = store.ddot(a).expect("small bound");
        let y = store.dot(b).expect("small bound");
        store.mk_set([x, y]).expect("fresh terms")
    };
    let terms = [pair(0, 5), pair(1, 4), pair(2, 3)];
    let mut h = HOrder::new(&store, &q).expect("carrier of 1 ⊕ 2");
    let mut comparisons = Vec::with_capacity(6);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                comparisons.push((i, j, h.leq(terms[i], terms[j])));
            }
        }
    }
    let is_antichain = comparisons.iter().all(|c| !c.2);
    Antichain3Report {
        store,
        terms,
        comparisons,
        is_antichain,
    }
}

/// Multi-line summary used by the command line report.
pub fn describe_report(r: &InterlockReport) -> String {
    let mut s = format!("bound {}: {} pairs, {} violations", r.bound, r.pairs_checked, r.violations.len());
    for v in &r.violations {
        let _ = write!(s, "\n  ({}, {}) {:?}: expected {}, found {}", v.m, v.n, v.relation, v.expected, v.found);
    }
    s
}
