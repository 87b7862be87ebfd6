//! JSON and CSV rendering of report documents.
//!
//! Documents are `serde_json` objects, whose maps keep keys sorted, so the
//! JSON output is deterministic. Exact rationals are `"num/den"` strings
//! (integers print without a denominator) and big integers are decimal
//! strings.

use commhier::arith::ExactRational;
use commhier::spectrum::Spectrum;
use commhier::Error;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

pub fn rational(q: &ExactRational) -> Value {
    Value::String(q.to_string())
}

pub fn integer(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn spectrum(spec: &Spectrum) -> Value {
    Value::Array(
        spec.entries()
            .iter()
            .map(|e| json!({ "m": e.m, "c": e.c }))
            .collect(),
    )
}

pub fn error(e: &Error) -> Value {
    json!({ "error": e.to_string(), "code": e.code(), "detail": format!("{e:?}") })
}

pub fn to_json(doc: &Value) -> String {
    serde_json::to_string_pretty(doc).expect("documents are plain JSON")
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// CSV with a header row. A document carrying an array of objects under
/// `rows`, `records` or `spectrum` becomes one line per element, prefixed
/// by `group` and `order` when present; anything else is a single line.
pub fn to_csv(doc: &Value) -> String {
    let obj = doc.as_object().cloned().unwrap_or_default();
    let table_key = ["rows", "records", "spectrum"]
        .into_iter()
        .find(|k| matches!(obj.get(*k), Some(Value::Array(a)) if a.iter().all(Value::is_object)));
    let scalars: Map<String, Value> = obj
        .iter()
        .filter(|(k, _)| table_key.is_none() || matches!(k.as_str(), "group" | "order"))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    match table_key.and_then(|k| obj[k].as_array()) {
        Some(rows) => {
            let mut cols: Vec<String> = scalars.keys().cloned().collect();
            let mut row_cols: Vec<String> = Vec::new();
            for r in rows {
                for k in r.as_object().unwrap().keys() {
                    if !row_cols.contains(k) {
                        row_cols.push(k.clone());
                    }
                }
            }
            cols.extend(row_cols.iter().cloned());
            w.write_record(&cols).unwrap();
            for r in rows {
                let r = r.as_object().unwrap();
                let line: Vec<String> = scalars
                    .values()
                    .map(cell)
                    .chain(
                        row_cols
                            .iter()
                            .map(|k| r.get(k).map(cell).unwrap_or_default()),
                    )
                    .collect();
                w.write_record(&line).unwrap();
            }
        }
        None => {
            w.write_record(scalars.keys()).unwrap();
            w.write_record(scalars.values().map(cell)).unwrap();
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}
