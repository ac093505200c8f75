//! Input documents. Every argument naming a document is either a literal,
//! inline JSON (starting with `{`) or a path to a JSON file.

use std::fs;

use bqo_core::barrier::{uniform_fragment, validate_fragment, FinSeq, Fragment, FragmentKind};
use bqo_core::ordinal::{Alpha, DecSeq};
use bqo_core::poset::{sum_over_index, validate_poset, validate_preorder, Poset, Preorder, RawRelation, SumPoset, SumSpec};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

fn read_document(arg: &str) -> CliResult<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| CliError::Domain(format!("cannot read {arg}: {e}")))
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Domain(format!("{what} document, line {} column {}: {e}", e.line(), e.column()))
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Elements {
    Count(usize),
    Labels(Vec<String>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Atom {
    Id(usize),
    Label(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetDoc {
    elements: Elements,
    #[serde(default)]
    pairs: Vec<(Atom, Atom)>,
    #[serde(default)]
    closure: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PosetRef {
    Literal(String),
    Doc(PosetDoc),
}

fn builtin(name: &str) -> Option<Poset> {
    if name == "one-plus-two" {
        return Some(Poset::one_plus_two());
    }
    if let Some(n) = name.strip_prefix("antichain") {
        return n.parse().ok().map(Poset::antichain);
    }
    if let Some(n) = name.strip_prefix("chain") {
        return n.parse().ok().map(Poset::chain);
    }
    None
}

impl PosetDoc {
    fn raw(&self) -> CliResult<RawRelation> {
        let (size, labels) = match &self.elements {
            Elements::Count(n) => (*n, None),
            Elements::Labels(l) => (l.len(), Some(l.clone())),
        };
        let resolve = |a: &Atom| -> CliResult<usize> {
            match a {
                Atom::Id(i) => Ok(*i),
                Atom::Label(s) => labels
                    .as_ref()
                    .and_then(|l| l.iter().position(|x| x == s))
                    .ok_or_else(|| CliError::Domain(format!("unknown element label {s:?}"))),
            }
        };
        let pairs = self
            .pairs
            .iter()
            .map(|(a, b)| Ok((resolve(a)?, resolve(b)?)))
            .collect::<CliResult<Vec<_>>>()?;
        let mut raw = RawRelation::new(size, pairs).with_closure(self.closure);
        if let Some(l) = labels {
            raw = raw.with_labels(l);
        }
        Ok(raw)
    }
}

fn poset_from_ref(r: PosetRef) -> CliResult<Poset> {
    match r {
        PosetRef::Literal(s) => builtin(&s).ok_or_else(|| CliError::Domain(format!("unknown order literal {s:?}"))),
        PosetRef::Doc(d) => Ok(validate_poset(&d.raw()?)?),
    }
}

/// `chainN`, `antichainN`, `one-plus-two`, or a poset document.
pub fn load_poset(arg: &str) -> CliResult<Poset> {
    if let Some(p) = builtin(arg) {
        return Ok(p);
    }
    let doc: PosetDoc = parse_json(&read_document(arg)?, "poset")?;
    Ok(validate_poset(&doc.raw()?)?)
}

pub fn load_preorder(arg: &str) -> CliResult<Preorder> {
    if let Some(p) = builtin(arg) {
        return Ok(p.into());
    }
    let doc: PosetDoc = parse_json(&read_document(arg)?, "poset")?;
    Ok(validate_preorder(&doc.raw()?)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SumDoc {
    index: PosetRef,
    summands: Vec<PosetRef>,
}

/// `{"index": ORDER, "summands": [ORDER, ...]}` with literals or documents.
pub fn load_sum(arg: &str) -> CliResult<SumPoset> {
    let doc: SumDoc = parse_json(&read_document(arg)?, "sum")?;
    let index = poset_from_ref(doc.index)?;
    let summands = doc.summands.into_iter().map(poset_from_ref).collect::<CliResult<Vec<_>>>()?;
    Ok(sum_over_index(&SumSpec::new(index, summands)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FragmentDoc {
    base: Option<Vec<usize>>,
    members: Vec<Vec<usize>>,
    horizon: Option<usize>,
    kind: Option<String>,
    values: Option<Vec<Value>>,
}

/// A fragment and the raw values attached to it, if any.
pub struct FragmentInput {
    pub fragment: Fragment,
    pub values: Option<Vec<Value>>,
}

/// `uniform:N:k` for `[0,N)^k`, or a fragment document.
pub fn load_fragment_unchecked(arg: &str) -> CliResult<FragmentInput> {
    if let Some(rest) = arg.strip_prefix("uniform:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let nums: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
        return match nums.as_deref() {
            Some([n, k]) => Ok(FragmentInput {
                fragment: uniform_fragment(0..*n, *k)?,
                values: None,
            }),
            _ => Err(CliError::Domain(format!("expected uniform:N:k, got {arg:?}"))),
        };
    }
    let doc: FragmentDoc = parse_json(&read_document(arg)?, "fragment")?;
    let kind = match doc.kind.as_deref() {
        None | Some("barrier") => FragmentKind::Barrier,
        Some("block") => FragmentKind::Block,
        Some(other) => return Err(CliError::Domain(format!("unknown fragment kind {other:?}"))),
    };
    let members = doc.members.into_iter().map(FinSeq::new).collect::<Result<Vec<_>, _>>()?;
    let base: Vec<usize> = match doc.base {
        Some(b) => b,
        None => members.iter().flat_map(|m| m.entries().to_vec()).collect(),
    };
    Ok(FragmentInput {
        fragment: Fragment::new(base, members, doc.horizon, kind),
        values: doc.values,
    })
}

pub fn load_fragment(arg: &str) -> CliResult<FragmentInput> {
    let input = load_fragment_unchecked(arg)?;
    validate_fragment(&input.fragment).map_err(|v| CliError::Domain(format!("invalid fragment: {v}")))?;
    Ok(input)
}

fn values_or_err(input: &FragmentInput) -> CliResult<&[Value]> {
    input
        .values
        .as_deref()
        .ok_or_else(|| CliError::Domain("fragment document has no values".into()))
}

/// Values naming elements of `q`, by id or label.
pub fn poset_values(input: &FragmentInput, q: &Poset) -> CliResult<Vec<usize>> {
    values_or_err(input)?
        .iter()
        .map(|v| {
            let found = match v {
                Value::Number(n) => n.as_u64().map(|n| n as usize).filter(|&n| n < q.size()),
                Value::String(s) => q.id_of_label(s),
                _ => None,
            };
            found.ok_or_else(|| CliError::Domain(format!("value {v} is not an element of the target")))
        })
        .collect()
}

/// Values in `ω^α`, as `"2,1"` strings or arrays of ids.
pub fn omega_values(input: &FragmentInput, alpha: &Alpha) -> CliResult<Vec<DecSeq>> {
    values_or_err(input)?
        .iter()
        .map(|v| {
            let seq = match v {
                Value::String(s) => s.parse::<DecSeq>()?,
                Value::Array(a) => DecSeq(
                    a.iter()
                        .map(|x| x.as_u64().map(|x| x as usize))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| CliError::Domain(format!("value {v} is not a sequence of ids")))?,
                ),
                _ => return Err(CliError::Domain(format!("value {v} is not a sequence"))),
            };
            seq.check(alpha)?;
            Ok(seq)
        })
        .collect()
}

pub fn parse_seq(text: &str) -> CliResult<FinSeq> {
    Ok(text.parse::<FinSeq>()?)
}

/// Comma-separated element ids or labels.
pub fn parse_elements(text: &str, q: &Poset) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| q.id_of_label(s).ok_or_else(|| CliError::Domain(format!("unknown element {s:?}"))))
        .collect()
}

/// Ranking pairs as a JSON list `[[a, b], ...]` of ids or labels.
pub fn parse_pairs(text: &str, q: &Poset) -> CliResult<Vec<(usize, usize)>> {
    let raw: Vec<(Atom, Atom)> = parse_json(&read_document(text)?, "ranking")?;
    let resolve = |a: &Atom| match a {
        Atom::Id(i) if *i < q.size() => Ok(*i),
        Atom::Id(i) => Err(CliError::Domain(format!("element {i} out of range"))),
        Atom::Label(s) => q.id_of_label(s).ok_or_else(|| CliError::Domain(format!("unknown element {s:?}"))),
    };
    raw.iter().map(|(a, b)| Ok((resolve(a)?, resolve(b)?))).collect()
}
