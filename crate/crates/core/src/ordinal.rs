//! Ordinal notations below ε₀ in Cantor normal form, the orders `2̄·γ` and
//! `ω^α`, and the suffix ranking on `ω^α`.
//!
//! Elements of `ω^α` are weakly decreasing finite sequences over a linear
//! order `α`, compared lexicographically with a proper prefix counting as
//! *smaller*. This is the reading under which `⟨σ₀, …, σₖ⟩` denotes the
//! ordinal `ω^σ₀ + … + ω^σₖ`; the opposite convention would not give a
//! well order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("malformed Cantor normal form: {0}")]
    MalformedCnf(String),
    #[error("sequence is not weakly decreasing at position {0}")]
    NotDecreasing(usize),
    #[error("entry {0} is not an element of α")]
    OutOfRange(usize),
    #[error("α is not a linear order")]
    NotLinear,
    #[error("head removal on the empty sequence")]
    EmptySequence,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// One summand `ω^exponent · coefficient`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: Ordinal,
    pub coefficient: BigUint,
}

/// An ordinal below ε₀ in Cantor normal form. The empty term list is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    /// Checks that coefficients are positive and exponents strictly decrease.
    pub fn new(terms: Vec<Term>) -> Result<Self, OrdinalError> {
        for (i, t) in terms.iter().enumerate() {
            if t.coefficient.is_zero() {
                return Err(OrdinalError::MalformedCnf(format!("term {i} has coefficient 0")));
            }
            if i > 0 && terms[i - 1].exponent <= t.exponent {
                return Err(OrdinalError::MalformedCnf(format!(
                    "exponent of term {i} does not decrease"
                )));
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn zero() -> Self {
        Ordinal::default()
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal::omega_power(Ordinal::zero(), n)
        }
    }

    pub fn one() -> Self {
        Ordinal::finite(1)
    }

    pub fn omega() -> Self {
        Ordinal::omega_power(Ordinal::one(), 1)
    }

    /// `ω^exponent · coefficient` for a nonzero coefficient.
    pub fn omega_power(exponent: Ordinal, coefficient: u64) -> Self {
        assert!(coefficient > 0, "coefficient must be positive");
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient: BigUint::from(coefficient),
            }],
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number when the ordinal is finite.
    pub fn as_finite(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [t] if t.exponent.is_zero() => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    /// Nesting depth of exponents: 0 for finite ordinals.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .filter(|t| !t.exponent.is_zero())
            .map(|t| 1 + t.exponent.depth())
            .max()
            .unwrap_or(0)
    }

    /// `self · n` for a natural `n`.
    pub fn mul_nat(&self, n: &BigUint) -> Ordinal {
        if n.is_zero() || self.is_zero() {
            return Ordinal::zero();
        }
        let mut terms = self.terms.clone();
        terms[0].coefficient *= n;
        Ordinal { terms }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then_with(|| a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn cnf_compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

/// Ordinal addition: the terms of `a` below the leading exponent of `b`
/// are absorbed.
pub fn cnf_add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let Some(lead) = b.terms.first() else {
        return a.clone();
    };
    let mut terms: Vec<Term> = a
        .terms
        .iter()
        .take_while(|t| t.exponent >= lead.exponent)
        .cloned()
        .collect();
    let mut rest = b.terms.iter();
    if let Some(last) = terms.last_mut() {
        if last.exponent == lead.exponent {
            last.coefficient += &lead.coefficient;
            rest.next();
        }
    }
    terms.extend(rest.cloned());
    Ordinal { terms }
}

impl std::ops::Add for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        cnf_add(self, rhs)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            match t.exponent.as_finite() {
                Some(e) if e.is_one() => write!(f, "w")?,
                Some(e) => write!(f, "w^{e}")?,
                None => write!(f, "w^({})", t.exponent)?,
            }
            if !t.coefficient.is_one() {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

/// Recursive-descent parser for `0`, `w`, `w^e`, `w^(...)`, `+` and `*n`.
/// Sums need not be in normal form; they are normalised by ordinal addition.
struct CnfParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> CnfParser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, OrdinalError> {
        Err(OrdinalError::Parse {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<BigUint, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a natural number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn sum(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.product()?;
        while self.eat(b'+') {
            let next = self.product()?;
            acc = cnf_add(&acc, &next);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.atom()?;
        while self.eat(b'*') {
            let n = self.nat()?;
            acc = acc.mul_nat(&n);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(b')') {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            Some(b'w') => {
                self.pos += 1;
                let exponent = if self.eat(b'^') { self.exponent()? } else { Ordinal::one() };
                Ok(Ordinal {
                    terms: vec![Term {
                        exponent,
                        coefficient: BigUint::one(),
                    }],
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                Ok(if n.is_zero() {
                    Ordinal::zero()
                } else {
                    Ordinal {
                        terms: vec![Term {
                            exponent: Ordinal::zero(),
                            coefficient: n,
                        }],
                    }
                })
            }
            Some(c) => self.error(format!("unexpected '{}'", c as char)),
            None => self.error("unexpected end of input"),
        }
    }

    fn exponent(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(b'(') => self.atom(),
            Some(b'w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            _ => {
                let n = self.nat()?;
                Ok(Ordinal {
                    terms: if n.is_zero() {
                        vec![]
                    } else {
                        vec![Term {
                            exponent: Ordinal::zero(),
                            coefficient: n,
                        }]
                    },
                })
            }
        }
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.replace('ω', "w");
        let mut p = CnfParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let value = p.sum()?;
        if p.peek().is_some() {
            return p.error("trailing input");
        }
        Ok(value)
    }
}

/// `2̄·γ`: pairs `(β, j)` with `β < γ` and `j ∈ {0, 1}`, ordered by `β`
/// first; equal `β` with different `j` are incomparable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoBarTimes {
    gamma: Ordinal,
}

pub fn two_bar_times_gamma(gamma: Ordinal) -> TwoBarTimes {
    TwoBarTimes { gamma }
}

impl TwoBarTimes {
    pub fn gamma(&self) -> &Ordinal {
        &self.gamma
    }

    pub fn contains(&self, beta: &Ordinal, layer: u8) -> bool {
        beta < &self.gamma && layer < 2
    }

    /// `None` means incomparable.
    pub fn compare(&self, a: (&Ordinal, u8), b: (&Ordinal, u8)) -> Option<Ordering> {
        match a.0.cmp(b.0) {
            Ordering::Equal if a.1 == b.1 => Some(Ordering::Equal),
            Ordering::Equal => None,
            ord => Some(ord),
        }
    }

    pub fn le(&self, a: (&Ordinal, u8), b: (&Ordinal, u8)) -> bool {
        matches!(self.compare(a, b), Some(Ordering::Less | Ordering::Equal))
    }

    /// The finite order as a [`Poset`], when `γ` is finite and small.
    pub fn materialize(&self) -> Option<Poset> {
        let n = self.gamma.as_finite()?;
        let n: usize = n.try_into().ok()?;
        Some(two_bar_times_finite(n))
    }
}

/// `2̄·n` with `(β, j)` at id `2β + j`.
pub fn two_bar_times_finite(n: usize) -> Poset {
    let labels = (0..2 * n).map(|id| format!("({},{})", id / 2, id % 2)).collect();
    Poset::from_fn_unchecked(2 * n, |a, b| a == b || a / 2 < b / 2)
        .with_labels(labels)
        .expect("one label per pair")
}

/// A linear order used as the base of `ω^α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alpha {
    order: Poset,
    rank: Vec<usize>,
}

impl Alpha {
    pub fn new(order: Poset) -> Result<Self, OrdinalError> {
        if !order.is_chain() {
            return Err(OrdinalError::NotLinear);
        }
        let rank = order.chain_ranks();
        Ok(Alpha { order, rank })
    }

    pub fn chain(k: usize) -> Self {
        Alpha::new(Poset::chain(k)).expect("chains are linear")
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn cmp(&self, a: usize, b: usize) -> Ordering {
        self.rank[a].cmp(&self.rank[b])
    }

    pub fn rank(&self, a: usize) -> usize {
        self.rank[a]
    }
}

/// A finite sequence over `α`, meant to be weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DecSeq(pub Vec<usize>);

impl DecSeq {
    pub fn empty() -> Self {
        DecSeq(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn head(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// Checks range and weak decrease over `alpha`.
    pub fn check(&self, alpha: &Alpha) -> Result<(), OrdinalError> {
        if let Some(&bad) = self.0.iter().find(|&&e| e >= alpha.size()) {
            return Err(OrdinalError::OutOfRange(bad));
        }
        for i in 1..self.0.len() {
            if alpha.cmp(self.0[i - 1], self.0[i]) == Ordering::Less {
                return Err(OrdinalError::NotDecreasing(i));
            }
        }
        Ok(())
    }

    /// Reads the sequence as `ω^{σ₀} + … + ω^{σₖ}` with finite exponents
    /// given by the ranks in `alpha`.
    pub fn to_cnf(&self, alpha: &Alpha) -> Ordinal {
        self.0.iter().fold(Ordinal::zero(), |acc, &e| {
            cnf_add(&acc, &Ordinal::omega_power(Ordinal::finite(alpha.rank(e) as u64), 1))
        })
    }
}

impl fmt::Display for DecSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for DecSeq {
    type Err = OrdinalError;

    /// Comma-separated ids; the empty string is the empty sequence.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let s = s.strip_prefix('<').and_then(|s| s.strip_suffix('>')).unwrap_or(s).trim();
        if s.is_empty() {
            return Ok(DecSeq::empty());
        }
        let mut out = Vec::new();
        let mut column = 1;
        for part in s.split(',') {
            match part.trim().parse::<usize>() {
                Ok(v) => out.push(v),
                Err(_) => {
                    return Err(OrdinalError::Parse {
                        column,
                        message: format!("'{}' is not an id", part.trim()),
                    })
                }
            }
            column += part.len() + 1;
        }
        Ok(DecSeq(out))
    }
}

/// Lexicographic comparison on `ω^α`; a proper prefix is smaller.
pub fn omega_alpha_compare(sigma: &DecSeq, tau: &DecSeq, alpha: &Alpha) -> Result<Ordering, OrdinalError> {
    sigma.check(alpha)?;
    tau.check(alpha)?;
    Ok(omega_cmp_unchecked(sigma, tau, alpha))
}

pub(crate) fn omega_cmp_unchecked(sigma: &DecSeq, tau: &DecSeq, alpha: &Alpha) -> Ordering {
    for (&a, &b) in sigma.0.iter().zip(&tau.0) {
        match alpha.cmp(a, b) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    sigma.len().cmp(&tau.len())
}

/// `σ ≤′ τ` iff `σ` is a (possibly empty, possibly improper) suffix of `τ`.
pub fn suffix_ranking(sigma: &DecSeq, tau: &DecSeq) -> bool {
    tau.0.ends_with(&sigma.0)
}

/// Drops the first entry.
pub fn head_remove(sigma: &DecSeq) -> Result<DecSeq, OrdinalError> {
    match sigma.0.split_first() {
        Some((_, rest)) => Ok(DecSeq(rest.to_vec())),
        None => Err(OrdinalError::EmptySequence),
    }
}

/// The order `ω^α` as a value order for arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaPower {
    pub alpha: Alpha,
}

impl OmegaPower {
    pub fn new(alpha: Alpha) -> Self {
        OmegaPower { alpha }
    }

    pub fn cmp(&self, a: &DecSeq, b: &DecSeq) -> Ordering {
        omega_cmp_unchecked(a, b, &self.alpha)
    }
}
