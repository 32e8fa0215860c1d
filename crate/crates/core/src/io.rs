//! JSON wire formats.
//!
//! Scalars are strings: `"p/q"`, integers, decimals, or `"inf"`. Ground
//! elements carry external labels (default `"1"`, `"2"`, …); the extension
//! element is always labelled `"*"`. Sets are written as label lists, and
//! as comma-joined keys in value maps (`"1,2"`).

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::extension::{CertificateBasis, ExtensionColumn, NormalizedExtension};
use crate::matroid::{Matroid, SetSystem};
use crate::presentation::ApexDecomposition;
use crate::set::{check_ground, ElementSet};
use crate::trop::{Trop, TropMatrix, TropVector};
use crate::valuated::ValuatedMatroid;
use crate::{Rational, Scalar};

pub const STAR: &str = "*";

/// External names of the ground elements, by internal index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
}

impl Labels {
    pub fn numbered(n: usize) -> Self {
        Labels {
            names: (1..=n).map(|k| k.to_string()).collect(),
        }
    }

    pub fn new(names: Vec<String>) -> Result<Self> {
        check_ground(names.len())?;
        for (k, a) in names.iter().enumerate() {
            if a.is_empty() || a.contains(',') {
                return Err(Error::Parse(format!(
                    "labels[{k}]: labels must be nonempty and comma-free"
                )));
            }
            if names[..k].contains(a) {
                return Err(Error::Parse(format!("labels[{k}]: duplicate label {a:?}")));
            }
        }
        Ok(Labels { names })
    }

    /// These labels followed by `*`.
    pub fn with_star(&self) -> Result<Self> {
        if self.names.iter().any(|a| a == STAR) {
            return Err(Error::Parse(
                "label \"*\" is reserved for the extension element".into(),
            ));
        }
        let mut names = self.names.clone();
        names.push(STAR.to_string());
        Labels::new(names)
    }

    /// Drops a trailing `*`.
    pub fn without_star(&self) -> Self {
        let mut names = self.names.clone();
        if names.last().map(String::as_str) == Some(STAR) {
            names.pop();
        }
        Labels { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::Parse(format!("unknown element label {name:?}")))
    }

    pub fn set_names(&self, s: ElementSet) -> Vec<String> {
        s.iter().map(|e| self.names[e].clone()).collect()
    }

    pub fn set_key(&self, s: ElementSet) -> String {
        self.set_names(s).join(",")
    }

    pub fn parse_key(&self, key: &str) -> Result<ElementSet> {
        if key.trim().is_empty() {
            return Ok(ElementSet::EMPTY);
        }
        let mut s = ElementSet::EMPTY;
        for part in key.split(',') {
            let e = self.index(part.trim())?;
            if s.contains(e) {
                return Err(Error::Parse(format!("set {key:?} repeats {part:?}")));
            }
            s = s.insert(e);
        }
        Ok(s)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.names
                .iter()
                .enumerate()
                .map(|(k, a)| json!({"index": k + 1, "label": a}))
                .collect(),
        )
    }

    fn from_field(obj: &Map<String, Value>, n: usize) -> Result<Self> {
        match obj.get("labels") {
            None => Ok(Labels::numbered(n)),
            Some(Value::Array(items)) => {
                let names = items
                    .iter()
                    .enumerate()
                    .map(|(k, v)| match v {
                        Value::String(s) => Ok(s.clone()),
                        Value::Object(o) => o
                            .get("label")
                            .and_then(Value::as_str)
                            .map(str::to_string)
                            .ok_or_else(|| Error::Parse(format!("labels[{k}]: missing \"label\""))),
                        _ => Err(Error::Parse(format!("labels[{k}]: expected a string"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                if names.len() != n {
                    return Err(Error::Parse(format!(
                        "labels: expected {n} labels, got {}",
                        names.len()
                    )));
                }
                Labels::new(names)
            }
            Some(_) => Err(Error::Parse("labels: expected an array".into())),
        }
    }
}

pub fn trop_to_json<T: Scalar>(v: &Trop<T>) -> Value {
    Value::String(v.to_text())
}

pub fn trop_from_json<T: Scalar>(v: &Value, at: &str) -> Result<Trop<T>> {
    match v {
        Value::String(s) => Trop::parse(s).map_err(|e| Error::Parse(format!("{at}: {e}"))),
        Value::Number(num) => {
            Trop::parse(&num.to_string()).map_err(|e| Error::Parse(format!("{at}: {e}")))
        }
        _ => Err(Error::Parse(format!("{at}: expected a scalar string"))),
    }
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse(format!("{what}: expected a JSON object")))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| Error::Parse(format!("field {key:?}: expected a nonnegative integer")))
}

fn array_field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Vec<Value>> {
    obj.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("field {key:?}: expected an array")))
}

fn vector_from_json<T: Scalar>(v: &Value, at: &str) -> Result<Vec<Trop<T>>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{at}: expected an array")))?
        .iter()
        .enumerate()
        .map(|(j, e)| trop_from_json(e, &format!("{at}[{j}]")))
        .collect()
}

fn vector_to_json<T: Scalar>(v: &TropVector<T>) -> Value {
    Value::Array(v.entries().iter().map(trop_to_json).collect())
}

/// `{"d":2,"n":3,"rows":[["0","0","inf"],["0","inf","0"]]}`, optional `"labels"`.
pub fn matrix_from_json<T: Scalar>(v: &Value) -> Result<(TropMatrix<T>, Labels)> {
    let obj = object(v, "matrix")?;
    let rows = array_field(obj, "rows")?;
    let parsed: Vec<Vec<Trop<T>>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| vector_from_json(r, &format!("rows[{i}]")))
        .collect::<Result<_>>()?;
    if parsed.is_empty() {
        return Err(Error::Parse("rows: a matrix needs at least one row".into()));
    }
    let n = parsed[0].len();
    if let Some(d) = obj.get("d") {
        if d.as_u64() != Some(parsed.len() as u64) {
            return Err(Error::Parse(format!(
                "field \"d\": {d} does not match {} rows",
                parsed.len()
            )));
        }
    }
    if let Some(nv) = obj.get("n") {
        if nv.as_u64() != Some(n as u64) {
            return Err(Error::Parse(format!(
                "field \"n\": {nv} does not match {n} columns"
            )));
        }
    }
    if let Some((i, r)) = parsed.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::Parse(format!(
            "rows[{i}]: expected {n} entries, got {}",
            r.len()
        )));
    }
    let labels = Labels::from_field(obj, n)?;
    Ok((TropMatrix::new(parsed)?, labels))
}

pub fn matrix_to_json<T: Scalar>(a: &TropMatrix<T>) -> Value {
    json!({
        "d": a.nrows(),
        "n": a.ncols(),
        "rows": a.rows().iter().map(vector_to_json).collect::<Vec<_>>(),
    })
}

/// `{"n":3,"d":2,"values":{"1,2":"0",…}}`; absent sets are `inf`.
pub fn valuated_from_json<T: Scalar>(v: &Value) -> Result<(ValuatedMatroid<T>, Labels)> {
    let obj = object(v, "valuated matroid")?;
    let n = usize_field(obj, "n")?;
    let d = usize_field(obj, "d")?;
    check_ground(n)?;
    if d == 0 || d > n {
        return Err(Error::RankExceedsGround { rank: d, n });
    }
    let labels = Labels::from_field(obj, n)?;
    let values = values_from_json(obj, &labels, d)?;
    Ok((
        ValuatedMatroid::from_partial(ElementSet::full(n), d, values)?,
        labels,
    ))
}

/// A function on `d`-sets read from the valuated-matroid format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction<T: Scalar> {
    pub n: usize,
    pub d: usize,
    pub values: BTreeMap<ElementSet, Trop<T>>,
    pub labels: Labels,
}

/// Parses a function on `d`-sets without checking any axioms.
pub fn set_function_from_json<T: Scalar>(v: &Value) -> Result<SetFunction<T>> {
    let obj = object(v, "set function")?;
    let n = usize_field(obj, "n")?;
    let d = usize_field(obj, "d")?;
    check_ground(n)?;
    if d == 0 || d > n {
        return Err(Error::RankExceedsGround { rank: d, n });
    }
    let labels = Labels::from_field(obj, n)?;
    let values = values_from_json(obj, &labels, d)?;
    Ok(SetFunction {
        n,
        d,
        values,
        labels,
    })
}

/// The `"values"` map of a function on `d`-sets, without validation.
pub fn values_from_json<T: Scalar>(
    obj: &Map<String, Value>,
    labels: &Labels,
    d: usize,
) -> Result<BTreeMap<ElementSet, Trop<T>>> {
    let map = obj
        .get("values")
        .and_then(Value::as_object)
        .ok_or_else(|| {
            Error::Parse(
                "field \"values\": expected an object keyed by comma-separated labels".into(),
            )
        })?;
    let mut values = BTreeMap::new();
    for (k, val) in map {
        let s = labels
            .parse_key(k)
            .map_err(|e| Error::Parse(format!("values[{k:?}]: {e}")))?;
        if s.len() != d {
            return Err(Error::Parse(format!("values[{k:?}]: expected a {d}-set")));
        }
        values.insert(s, trop_from_json(val, &format!("values[{k:?}]"))?);
    }
    Ok(values)
}

pub fn values_to_json<T: Scalar>(values: &BTreeMap<ElementSet, Trop<T>>, labels: &Labels) -> Value {
    let mut keyed: Vec<(Vec<usize>, String, Value)> = values
        .iter()
        .map(|(s, v)| (s.to_vec(), labels.set_key(*s), trop_to_json(v)))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Value::Object(keyed.into_iter().map(|(_, k, v)| (k, v)).collect())
}

pub fn valuated_to_json<T: Scalar>(mu: &ValuatedMatroid<T>, labels: &Labels) -> Value {
    json!({
        "n": mu.ground().len(),
        "d": mu.rank(),
        "values": values_to_json(mu.values(), labels),
    })
}

/// `{"n":3,"d":2,"bases":[["1","2"],…]}`.
pub fn matroid_to_json(m: &Matroid, labels: &Labels) -> Value {
    let mut bases: Vec<ElementSet> = m.bases().to_vec();
    bases.sort_by(|a, b| a.lex_cmp(*b));
    json!({
        "n": m.ground().len(),
        "ground": labels.set_names(m.ground()),
        "d": m.rank(),
        "bases": bases.iter().map(|b| labels.set_names(*b)).collect::<Vec<_>>(),
    })
}

pub fn matroid_from_json(v: &Value) -> Result<(Matroid, Labels)> {
    let obj = object(v, "matroid")?;
    let n = usize_field(obj, "n")?;
    let d = usize_field(obj, "d")?;
    check_ground(n)?;
    let labels = Labels::from_field(obj, n)?;
    let bases = array_field(obj, "bases")?
        .iter()
        .enumerate()
        .map(|(k, b)| set_from_json(b, &labels, &format!("bases[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok((Matroid::new(ElementSet::full(n), d, bases)?, labels))
}

fn set_from_json(v: &Value, labels: &Labels, at: &str) -> Result<ElementSet> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{at}: expected an array of labels")))?;
    let mut s = ElementSet::EMPTY;
    for it in items {
        let name = match it {
            Value::String(s) => s.clone(),
            Value::Number(k) => k.to_string(),
            _ => return Err(Error::Parse(format!("{at}: expected label strings"))),
        };
        s = s.insert(
            labels
                .index(&name)
                .map_err(|e| Error::Parse(format!("{at}: {e}")))?,
        );
    }
    Ok(s)
}

pub fn set_system_to_json(s: &SetSystem, labels: &Labels) -> Value {
    json!({ "sets": s.sets().iter().map(|a| labels.set_names(*a)).collect::<Vec<_>>() })
}

/// `{"x":["1","0"]}`.
pub fn column_from_json<T: Scalar>(v: &Value) -> Result<ExtensionColumn<T>> {
    let obj = object(v, "extension column")?;
    let x = obj
        .get("x")
        .ok_or_else(|| Error::Parse("field \"x\": missing".into()))?;
    Ok(ExtensionColumn::from_trops(vector_from_json(x, "x")?))
}

pub fn column_to_json<T: Scalar>(x: &ExtensionColumn<T>) -> Value {
    json!({ "x": vector_to_json(&x.x) })
}

pub fn extension_to_json<T: Scalar>(e: &NormalizedExtension<T>, labels: &Labels) -> Value {
    let star = labels.with_star().unwrap_or_else(|_| labels.clone());
    json!({
        "n": e.valuated().ground().len(),
        "d": e.valuated().rank(),
        "values": values_to_json(e.values(), &star),
    })
}

pub fn certificates_to_json<T: Scalar>(certs: &[CertificateBasis<T>], labels: &Labels) -> Value {
    let star = labels.with_star().unwrap_or_else(|_| labels.clone());
    Value::Array(
        certs
            .iter()
            .map(|c| json!({"row": c.row + 1, "basis": star.set_names(c.basis), "a": trop_to_json(&c.a)}))
            .collect(),
    )
}

pub fn decomposition_to_json<T: Scalar>(dec: &ApexDecomposition<T>, labels: &Labels) -> Value {
    let rows: Vec<Value> = dec
        .rows
        .iter()
        .map(|r| {
            let m = &dec.classes[r.class].matroid;
            json!({
                "F": labels.set_names(r.flat),
                "apex": vector_to_json(dec.apices.row(r.apex)),
                "apex_index": r.apex + 1,
                "matroid": matroid_to_json(m, labels),
                "class": r.class + 1,
                "lambda": r.lambda.to_text(),
                "component_shifts": r.shifts.iter().map(|(c, l)| json!({"component": labels.set_names(*c), "lambda": l.to_text()})).collect::<Vec<_>>(),
                "J": labels.set_names(r.bump_set()),
                "alpha": r.bumps.iter().map(|(_, a)| trop_to_json(a)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let classes: Vec<Value> = dec
        .classes
        .iter()
        .enumerate()
        .map(|(k, c)| json!({"class": k + 1, "matroid": matroid_to_json(&c.matroid, labels), "multiplicity": c.multiplicity}))
        .collect();
    json!({ "apices": matrix_to_json(&dec.apices), "classes": classes, "rows": rows })
}

/// Parses a scalar list such as a value grid.
pub fn rationals_from_json(v: &Value, at: &str) -> Result<Vec<Rational>> {
    vector_from_json::<Rational>(v, at)?
        .into_iter()
        .enumerate()
        .map(|(k, t)| match t {
            Trop::Fin(q) => Ok(q),
            Trop::Inf => Err(Error::Parse(format!("{at}[{k}]: expected a finite value"))),
        })
        .collect()
}
