//! JSON and text renderings of library values.

use std::collections::BTreeSet;

use affine_fpf::hecke::LaurentPoly;
use affine_fpf::transition::CoverSet;
use affine_fpf::{AffinePerm, FpfInvolution, MonomialExpansion, Partition};
use serde_json::{json, Map, Value};

/// Integers that fit in `i64` are numbers; larger ones are decimal strings.
pub fn int(c: i128) -> Value {
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => Value::String(c.to_string()),
    }
}

pub fn window(p: &AffinePerm) -> Value {
    json!(p.window())
}

pub fn fpf(z: &FpfInvolution) -> Value {
    json!(z.window())
}

pub fn partition(p: &Partition) -> Value {
    json!(p.parts())
}

pub fn expansion(e: &MonomialExpansion) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(lam, c)| json!({ "partition": partition(lam), "coeff": int(c) }))
        .collect();
    json!({ "n": e.n(), "degree": e.degree(), "basis": "m", "terms": terms })
}

pub fn laurent(p: &LaurentPoly) -> Value {
    let map: Map<String, Value> = p.terms().map(|(k, c)| (k.to_string(), json!(c))).collect();
    Value::Object(map)
}

pub fn cover_set<T: Ord>(set: &CoverSet<T>, render: impl Fn(&T) -> Value) -> Value {
    let members: Vec<Value> = set
        .members
        .iter()
        .map(|(x, (i, j))| json!({ "element": render(x), "reflection": [i, j] }))
        .collect();
    json!({ "members": members, "bound": set.bound })
}

pub fn cover_set_text<T: Ord + std::fmt::Display>(set: &CoverSet<T>) -> String {
    if set.is_empty() {
        return "{}".into();
    }
    let items: Vec<String> = set
        .members
        .iter()
        .map(|(x, (i, j))| format!("{x} via t({i},{j})"))
        .collect();
    format!("{{{}}}", items.join(", "))
}

pub fn index_set(s: &BTreeSet<i64>) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

pub fn set_text(s: &BTreeSet<i64>) -> String {
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn window_text(w: &[i64]) -> String {
    let items: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(","))
}
