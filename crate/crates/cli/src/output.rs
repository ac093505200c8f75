//! Report envelope and serializers. Every value written here is in the same
//! format the input parsers accept.

use std::time::Duration;

use bqo_core::barrier::{FinSeq, Fragment, FragmentKind};
use bqo_core::poset::Poset;
use clap::ValueEnum;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "bqo-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Result keys moved into the envelope's `witnesses` list.
const WITNESS_KEYS: [&str; 3] = ["witness", "map", "cycle"];

pub struct Report {
    pub command: String,
    pub status: &'static str,
    pub result: Value,
    pub witnesses: Vec<Value>,
    pub elapsed: Duration,
}

impl Report {
    pub fn new(command: String, status: &'static str, mut result: Value, elapsed: Duration) -> Self {
        let mut witnesses = Vec::new();
        if let Value::Object(m) = &mut result {
            for k in WITNESS_KEYS {
                match m.remove(k) {
                    Some(Value::Null) | None => {}
                    Some(w) => witnesses.push(json!({ k: w })),
                }
            }
        }
        Report {
            command,
            status,
            result,
            witnesses,
            elapsed,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let v = json!({
                    "schema": SCHEMA,
                    "command": self.command,
                    "status": self.status,
                    "result": self.result,
                    "witnesses": self.witnesses,
                    "timing": { "elapsed_ms": self.elapsed.as_secs_f64() * 1e3 },
                });
                serde_json::to_string_pretty(&v).expect("serializable report")
            }
            Format::Text => {
                let mut out = format!("{} [{}]\n", self.command, self.status);
                write_text(&self.result, 1, &mut out);
                if !self.witnesses.is_empty() {
                    out.push_str("  witnesses:\n");
                    write_text(&Value::Array(self.witnesses.clone()), 2, &mut out);
                }
                out.push_str(&format!("  ({:.3} ms)", self.elapsed.as_secs_f64() * 1e3));
                out
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.iter().all(|x| x.as_array().is_some_and(|i| i.iter().all(|y| !y.is_object() && !y.is_array()))) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// An element by label when the order has labels, by id otherwise.
pub fn element(p: &Poset, a: usize) -> Value {
    match p.labels() {
        Some(l) => Value::String(l[a].clone()),
        None => json!(a),
    }
}

pub fn elements(p: &Poset, ids: impl IntoIterator<Item = usize>) -> Value {
    Value::Array(ids.into_iter().map(|a| element(p, a)).collect())
}

pub fn poset_doc(p: &Poset) -> Value {
    let elements_field = match p.labels() {
        Some(l) => json!(l),
        None => json!(p.size()),
    };
    let pairs: Vec<Value> = p.strict_pairs().into_iter().map(|(a, b)| json!([element(p, a), element(p, b)])).collect();
    json!({ "elements": elements_field, "pairs": pairs, "closure": true })
}

pub fn seq(s: &FinSeq) -> Value {
    json!(s.entries())
}

pub fn fragment_doc(f: &Fragment) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("base".into(), json!(f.base()));
    m.insert("members".into(), Value::Array(f.members().iter().map(seq).collect()));
    m.insert("horizon".into(), json!(f.horizon()));
    m.insert(
        "kind".into(),
        json!(match f.kind() {
            FragmentKind::Block => "block",
            FragmentKind::Barrier => "barrier",
        }),
    );
    m
}

pub fn array_doc(f: &Fragment, values: Vec<Value>) -> Value {
    let mut m = fragment_doc(f);
    m.insert("values".into(), Value::Array(values));
    Value::Object(m)
}
