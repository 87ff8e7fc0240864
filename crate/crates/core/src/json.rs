//! Canonical JSON for algebras and report fragments: object keys sorted,
//! scalars as `"p"` / `"p/q"` strings, arrays in basis order, compact
//! encoding. Output is byte-identical across runs because every map is a
//! sorted map and no iteration order depends on hashing.

use crate::algebra::StructureAlgebra;
use crate::linalg::Subspace;
use crate::scalar::{fmt_scalar, Scalar};
use num::Zero;
use serde_json::{json, Map, Value};

pub fn scalar_json(s: &Scalar) -> Value {
    Value::String(fmt_scalar(s))
}

pub fn vec_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

/// `{"dim": n, "mult": [[i, j, [[k, "c"], ...]], ...], "unit": [...]}` with
/// `mult` sorted by `(i, j)` and only nonzero entries.
pub fn algebra_json(a: &StructureAlgebra) -> Value {
    let mult: Vec<Value> = a
        .mult_table()
        .iter()
        .filter(|(_, terms)| !terms.is_empty())
        .map(|(&(i, j), terms)| {
            let entries: Vec<Value> = terms
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| json!([k, fmt_scalar(c)]))
                .collect();
            json!([i, j, entries])
        })
        .collect();
    json!({
        "dim": a.dim(),
        "mult": mult,
        "unit": vec_json(a.unit()),
    })
}

pub fn subspace_json(s: &Subspace) -> Value {
    json!({
        "ambient": s.ambient(),
        "dim": s.dim(),
        "basis": s.basis().iter().map(|r| vec_json(r)).collect::<Vec<_>>(),
    })
}

/// Compact canonical emission. `serde_json`'s default map is a BTreeMap,
/// so object keys come out sorted.
pub fn emit(value: &Value) -> String {
    serde_json::to_string(value).expect("report values serialize")
}

/// Build an object from key/value pairs; keys end up sorted on emission.
pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}
