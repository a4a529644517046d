//! JSON formats for posets and modules, plus the `grid:n` and `builtin:` shorthands.
//!
//! Poset: `{"elements": [id...], "covers": [[p, q]...]}`.
//! Module: `{"poset": <poset or "grid:n">, "field": "p:N" | "q", "dims": {id: n},
//! "maps": {"p->q": [[entry...]...]}}`. Entries are integers or `"a/b"` strings. Missing
//! dims are zero; a missing map is only allowed when one of its ends has dimension zero.

use std::fs;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, FieldSpec};
use crate::pmodule::PModule;
use crate::poset::Poset;
use crate::registry::RecipeRegistry;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

/// `Some` when `s` is the `grid:n` shorthand.
pub fn parse_grid(s: &str) -> Option<Result<Poset>> {
    let n = s.strip_prefix("grid:")?;
    Some(
        n.trim()
            .parse::<usize>()
            .map(Poset::grid)
            .map_err(|_| malformed(format!("bad grid size in `{s}`"))),
    )
}

pub fn poset_from_json(v: &Value) -> Result<Poset> {
    if let Some(s) = v.as_str() {
        return parse_grid(s).unwrap_or_else(|| Err(malformed(format!("unknown poset shorthand `{s}`"))));
    }
    let obj = v.as_object().ok_or_else(|| malformed("poset must be an object or \"grid:n\""))?;
    let elements: Vec<String> = obj
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("poset needs an \"elements\" array"))?
        .iter()
        .map(|e| e.as_str().map(str::to_string).ok_or_else(|| malformed(format!("element {e} is not a string"))))
        .collect::<Result<_>>()?;
    let covers: Vec<(String, String)> = match obj.get("covers") {
        None => Vec::new(),
        Some(c) => c
            .as_array()
            .ok_or_else(|| malformed("\"covers\" must be an array"))?
            .iter()
            .map(|pair| match pair.as_array().map(Vec::as_slice) {
                Some([Value::String(p), Value::String(q)]) => Ok((p.clone(), q.clone())),
                _ => Err(malformed(format!("cover {pair} is not a pair of ids"))),
            })
            .collect::<Result<_>>()?,
    };
    Poset::from_covers(&elements, &covers)
}

pub fn poset_from_str(text: &str) -> Result<Poset> {
    let v: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    poset_from_json(&v)
}

pub fn poset_to_json(p: &Poset) -> Value {
    json!({
        "elements": p.ids(),
        "covers": p.covers().iter().map(|&(a, b)| [p.id(a), p.id(b)]).collect::<Vec<_>>(),
    })
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| malformed(format!("{path}: {e}")))
}

/// `grid:n` or a path to a poset file.
pub fn load_poset(source: &str) -> Result<Poset> {
    match parse_grid(source) {
        Some(p) => p,
        None => poset_from_str(&read(source)?),
    }
}

/// Parses a module file. A poset given by the caller must equal the file's poset, if it
/// names one; the same goes for the field.
pub fn module_from_json(v: &Value, poset: Option<&Arc<Poset>>, field: Option<FieldSpec>) -> Result<PModule> {
    let obj = v.as_object().ok_or_else(|| malformed("module must be an object"))?;
    let poset = match (obj.get("poset"), poset) {
        (Some(pv), Some(given)) => {
            if poset_from_json(pv)? != **given {
                return Err(Error::Mismatch);
            }
            given.clone()
        }
        (Some(pv), None) => Arc::new(poset_from_json(pv)?),
        (None, Some(given)) => given.clone(),
        (None, None) => return Err(malformed("module file names no poset and none was given")),
    };
    let field = match (obj.get("field"), field) {
        (Some(fv), given) => {
            let s = fv.as_str().ok_or_else(|| malformed("\"field\" must be a string"))?;
            let parsed: FieldSpec = s.parse()?;
            if given.is_some_and(|g| g != parsed) {
                return Err(Error::Mismatch);
            }
            parsed
        }
        (None, Some(given)) => given,
        (None, None) => FieldSpec::default(),
    };

    let mut dims = vec![0usize; poset.len()];
    if let Some(d) = obj.get("dims") {
        let d = d.as_object().ok_or_else(|| malformed("\"dims\" must be an object"))?;
        for (id, n) in d {
            let n = n.as_u64().ok_or_else(|| malformed(format!("dimension of `{id}` is not a natural number")))?;
            dims[poset.index_of(id)?] = n as usize;
        }
    }

    let mut maps: Vec<Option<ExactMatrix>> = vec![None; poset.covers().len()];
    if let Some(m) = obj.get("maps") {
        let m = m.as_object().ok_or_else(|| malformed("\"maps\" must be an object"))?;
        for (key, rows) in m {
            let (p, q) = key
                .split_once("->")
                .ok_or_else(|| malformed(format!("map key `{key}` is not of the form p->q")))?;
            let (p, q) = (poset.index_of(p.trim())?, poset.index_of(q.trim())?);
            let idx = poset
                .cover_index(p, q)
                .ok_or_else(|| malformed(format!("`{key}` is not a cover")))?;
            maps[idx] = Some(matrix_from_json(rows, field, dims[q], dims[p], key)?);
        }
    }
    let maps = poset
        .covers()
        .iter()
        .zip(maps)
        .map(|(&(p, q), m)| match m {
            Some(m) => Ok(m),
            None if dims[p] == 0 || dims[q] == 0 => Ok(ExactMatrix::zeros(field, dims[q], dims[p])),
            None => Err(malformed(format!("missing map {}->{}", poset.id(p), poset.id(q)))),
        })
        .collect::<Result<Vec<_>>>()?;
    PModule::new(poset, field, dims, maps)
}

fn matrix_from_json(v: &Value, field: FieldSpec, rows: usize, cols: usize, key: &str) -> Result<ExactMatrix> {
    let bad_shape = || malformed(format!("map `{key}` must be {rows}x{cols}"));
    let arr = v.as_array().ok_or_else(bad_shape)?;
    if arr.len() != rows {
        return Err(bad_shape());
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in arr {
        let row = row.as_array().filter(|r| r.len() == cols).ok_or_else(bad_shape)?;
        for e in row {
            let s = match e {
                Value::Number(n) if n.is_i64() => n.to_string(),
                Value::String(s) => s.clone(),
                other => return Err(Error::ScalarParse(other.to_string())),
            };
            data.push(field.parse_scalar(&s)?);
        }
    }
    ExactMatrix::from_scalars(field, rows, cols, data)
}

pub fn module_from_str(text: &str, poset: Option<&Arc<Poset>>, field: Option<FieldSpec>) -> Result<PModule> {
    let v: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    module_from_json(&v, poset, field)
}

/// `builtin:<recipe>` (needs a poset) or a path to a module file.
pub fn load_module(
    source: &str,
    poset: Option<&Arc<Poset>>,
    field: Option<FieldSpec>,
    recipes: &RecipeRegistry,
) -> Result<PModule> {
    match source.strip_prefix("builtin:") {
        Some(spec) => {
            let poset = poset.ok_or_else(|| malformed(format!("`{source}` needs a poset")))?;
            recipes.build(spec, poset, field.unwrap_or_default())
        }
        None => module_from_str(&read(source)?, poset, field),
    }
}

/// Inverse of [`module_from_json`]; the poset is written out in full unless it is a grid.
pub fn module_to_json(m: &PModule) -> Value {
    let poset = m.poset();
    let f = m.field();
    let poset_value = match poset.grid_side() {
        Some(n) => Value::String(format!("grid:{n}")),
        None => poset_to_json(poset),
    };
    let dims: Map<String, Value> = (0..poset.len())
        .map(|v| (poset.id(v).to_string(), json!(m.dim(v))))
        .collect();
    let maps: Map<String, Value> = poset
        .covers()
        .iter()
        .zip(m.maps())
        .filter(|(_, mat)| mat.rows() > 0 && mat.cols() > 0)
        .map(|(&(p, q), mat)| {
            let rows: Vec<Value> = (0..mat.rows())
                .map(|i| Value::Array(mat.row(i).iter().map(|x| scalar_to_json(&f.format(x))).collect()))
                .collect();
            (format!("{}->{}", poset.id(p), poset.id(q)), Value::Array(rows))
        })
        .collect();
    json!({
        "poset": poset_value,
        "field": f.to_string(),
        "dims": dims,
        "maps": maps,
    })
}

fn scalar_to_json(s: &str) -> Value {
    s.parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::String(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: FieldSpec = FieldSpec::Prime(32003);

    #[test]
    fn grid_shorthand() {
        assert_eq!(parse_grid("grid:2").unwrap().unwrap(), Poset::grid(2));
        assert!(parse_grid("grid:x").unwrap().is_err());
        assert!(parse_grid("chain:2").is_none());
    }

    #[test]
    fn poset_round_trip() {
        let p = poset_from_str(r#"{"elements": ["a", "b", "c"], "covers": [["a", "b"], ["a", "c"]]}"#).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(poset_from_json(&poset_to_json(&p)).unwrap(), p);
        assert!(poset_from_str(r#"{"elements": ["a"], "covers": [["a", "z"]]}"#).is_err());
    }

    #[test]
    fn module_round_trip() {
        let sq = Arc::new(Poset::grid(1));
        for field in [F, FieldSpec::Rational] {
            let m = PModule::hook(&sq, field).unwrap().direct_sum(&PModule::interval_full(&sq, field)).unwrap();
            let back = module_from_json(&module_to_json(&m), Some(&sq), None).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn module_file_entries() {
        let text = r#"{"poset": "grid:1", "field": "q",
            "dims": {"(0,0)": 1, "(1,0)": 1, "(0,1)": 1, "(1,1)": 1},
            "maps": {"(0,0)->(1,0)": [["1/2"]], "(0,0)->(0,1)": [[1]],
                     "(1,0)->(1,1)": [[2]], "(0,1)->(1,1)": [[1]]}}"#;
        let m = module_from_str(text, None, None).unwrap();
        assert!(m.is_valid());
        let broken = text.replace("[[2]]", "[[3]]");
        assert!(!module_from_str(&broken, None, None).unwrap().is_valid());
        assert_eq!(module_from_str(text, None, Some(F)), Err(Error::Mismatch));
        let missing = text.replace(r#""(0,1)->(1,1)": [[1]]"#, r#""(1,0)->(1,0)": [[1]]"#);
        assert!(module_from_str(&missing, None, None).is_err());
    }
}
