//! JSON encodings of matroids, chirotopes and matrices.
//!
//! - Matroid: `{"n": 4, "bases": [[1,2],[1,3],...]}`, bases in lexicographic
//!   order, plus `"ground"` when the ground set is not all of `[n]`.
//! - Chirotope: `{"n": 4, "d": 2, "signs": {"1,2": 1, "1,3": -1, ...}}`;
//!   missing keys mean 0, the empty subset is the key `""`.
//! - Matrix: `{"d": 2, "n": 3, "entries": [["1","1","1"],["0","1","2"]]}`
//!   with reduced `p/q` strings (integers without `/1`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chirotope::{Chirotope, ChirotopeError};
use crate::matroid::{Matroid, MatroidError};
use crate::realization::{Rational, RationalMatrix, RealizationError};
use crate::subset::{Subset, MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Chirotope(#[from] ChirotopeError),
    #[error(transparent)]
    Matrix(#[from] RealizationError),
}

fn schema(msg: impl Into<String>) -> IoError {
    IoError::Schema(msg.into())
}

/// What kind of object a JSON document holds, judged by its keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Matroid,
    Chirotope,
    Matrix,
}

pub fn detect(v: &Value) -> Result<Kind, IoError> {
    let obj = v.as_object().ok_or_else(|| schema("expected a JSON object"))?;
    if obj.contains_key("bases") {
        Ok(Kind::Matroid)
    } else if obj.contains_key("signs") {
        Ok(Kind::Chirotope)
    } else if obj.contains_key("entries") {
        Ok(Kind::Matrix)
    } else {
        Err(schema("expected one of the keys \"bases\", \"signs\" or \"entries\""))
    }
}

pub fn parse(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

fn get_usize(v: &Value, key: &str) -> Result<usize, IoError> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| schema(format!("\"{key}\" must be a nonnegative integer")))
}

fn parse_subset(v: &Value) -> Result<Subset, IoError> {
    serde_json::from_value(v.clone()).map_err(|e| schema(format!("bad subset {v}: {e}")))
}

fn ground_of(v: &Value, n: usize) -> Result<Subset, IoError> {
    match v.get("ground") {
        None => Ok(Subset::full(n)),
        Some(g) => parse_subset(g),
    }
}

pub fn matroid_to_json(m: &Matroid) -> Value {
    let mut v = json!({ "n": m.n(), "bases": m.bases_lex() });
    if m.ground() != Subset::full(m.n()) {
        v["ground"] = json!(m.ground());
    }
    v
}

/// Parses the matroid encoding. Bases must be sorted lists, listed in
/// strictly increasing lexicographic order.
pub fn matroid_from_json(v: &Value) -> Result<Matroid, IoError> {
    let n = get_usize(v, "n")?;
    if n > MAX_N {
        return Err(MatroidError::GroundTooLarge(n).into());
    }
    let ground = ground_of(v, n)?;
    let list = v
        .get("bases")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("\"bases\" must be an array"))?;
    let bases = list.iter().map(parse_subset).collect::<Result<Vec<_>, _>>()?;
    if let Some(w) = bases.windows(2).find(|w| w[0].lex_cmp(w[1]) != std::cmp::Ordering::Less) {
        return Err(schema(format!("bases must be strictly increasing in lexicographic order: {} then {}", w[0], w[1])));
    }
    Ok(Matroid::on_ground(n, ground, bases)?)
}

fn subset_key(s: Subset) -> String {
    s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

pub fn chirotope_to_json(chi: &Chirotope) -> Value {
    let signs: BTreeMap<String, i8> = chi.nonzero_lex().into_iter().map(|(s, x)| (subset_key(s), x)).collect();
    let mut v = json!({ "n": chi.n(), "d": chi.rank(), "signs": signs });
    if chi.ground() != Subset::full(chi.n()) {
        v["ground"] = json!(chi.ground());
    }
    v
}

pub fn chirotope_from_json(v: &Value) -> Result<Chirotope, IoError> {
    let n = get_usize(v, "n")?;
    let d = get_usize(v, "d")?;
    if n > MAX_N {
        return Err(ChirotopeError::GroundTooLarge(n).into());
    }
    let ground = ground_of(v, n)?;
    let obj = v
        .get("signs")
        .and_then(Value::as_object)
        .ok_or_else(|| schema("\"signs\" must be an object"))?;
    let mut table: BTreeMap<Subset, i8> = BTreeMap::new();
    for (key, val) in obj {
        let elems = if key.is_empty() {
            Vec::new()
        } else {
            key.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| schema(format!("bad subset key \"{key}\""))))
                .collect::<Result<Vec<_>, _>>()?
        };
        let s = parse_subset(&json!(elems))?;
        if s.len() != d || !s.is_subset_of(ground) {
            return Err(schema(format!("key \"{key}\" is not a {d}-subset of the ground set")));
        }
        let x = val
            .as_i64()
            .filter(|x| (-1..=1).contains(x))
            .ok_or_else(|| schema(format!("sign for \"{key}\" must be -1, 0 or 1")))?;
        table.insert(s, x as i8);
    }
    Ok(Chirotope::validate_on(n, ground, d, |s| table.get(&s).copied().unwrap_or(0))?)
}

pub fn rational_to_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, IoError> {
    let bad = || schema(format!("bad rational \"{s}\""));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub fn matrix_to_json(a: &RationalMatrix) -> Value {
    let entries: Vec<Vec<String>> = (0..a.rows()).map(|r| a.row(r).iter().map(rational_to_string).collect()).collect();
    json!({ "d": a.rows(), "n": a.cols(), "entries": entries })
}

pub fn matrix_from_json(v: &Value) -> Result<RationalMatrix, IoError> {
    let d = get_usize(v, "d")?;
    let n = get_usize(v, "n")?;
    let rows = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("\"entries\" must be an array of rows"))?;
    if rows.len() != d {
        return Err(schema(format!("expected {d} rows, got {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(d * n);
    for row in rows {
        let row = row.as_array().ok_or_else(|| schema("each row must be an array"))?;
        if row.len() != n {
            return Err(schema(format!("expected {n} entries per row, got {}", row.len())));
        }
        for x in row {
            let r = match x {
                Value::String(s) => parse_rational(s)?,
                Value::Number(num) if num.is_i64() => Rational::from_integer(num.as_i64().unwrap().into()),
                other => return Err(schema(format!("bad matrix entry {other}"))),
            };
            entries.push(r);
        }
    }
    Ok(RationalMatrix::with_shape(d, n, entries)?)
}
