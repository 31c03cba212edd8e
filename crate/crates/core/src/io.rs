//! JSON forms of scalars, polynomials, matrices and matrix documents.
//!
//! Rationals are always strings (`"p/q"` or `"p"`), never JSON numbers, so
//! round trips are exact. A [`MultiQuad`] is an object from basis label to
//! rational string, with `"1"` for the rational part. Polynomials are
//! arrays of coefficient strings indexed by degree. Matrices are arrays of
//! rows.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{parse_rational, rational_to_string, Field, MultiQuad, Rational};

fn parse_err(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(rational_to_string(q))
}

/// Accepts a rational string or a JSON integer.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        _ => Err(parse_err(format!("expected a rational string, found {v}"))),
    }
}

pub fn multiquad_to_json(x: &MultiQuad) -> Value {
    let map: Map<String, Value> = x
        .coordinates()
        .iter()
        .map(|(label, c)| (label.to_string(), rational_to_json(c)))
        .collect();
    Value::Object(map)
}

/// Accepts the labelled object form, or a plain rational.
pub fn multiquad_from_json(v: &Value) -> Result<MultiQuad> {
    match v {
        Value::Object(map) => {
            let mut terms = Vec::with_capacity(map.len());
            for (k, c) in map {
                let label: i64 = k
                    .parse()
                    .map_err(|_| parse_err(format!("invalid radicand label {k:?}")))?;
                terms.push((label, rational_from_json(c)?));
            }
            MultiQuad::from_terms(terms).map_err(|e| parse_err(e.to_string()))
        }
        _ => Ok(MultiQuad::from_rational(rational_from_json(v)?)),
    }
}

pub fn poly_to_json(p: &Poly<Rational>) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn poly_from_json(v: &Value) -> Result<Poly<Rational>> {
    let items = v
        .as_array()
        .ok_or_else(|| parse_err("polynomial must be an array of coefficients"))?;
    Ok(Poly::new(
        items
            .iter()
            .map(rational_from_json)
            .collect::<Result<_>>()?,
    ))
}

/// Polynomial as both coefficient array and text.
pub fn poly_summary(p: &Poly<Rational>) -> Value {
    json!({ "coeffs": poly_to_json(p), "text": p.to_text() })
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>, entry: impl Fn(&F) -> Value) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(&entry).collect()))
            .collect(),
    )
}

pub fn matrix_from_json<F: Field>(
    v: &Value,
    entry: impl Fn(&Value) -> Result<F>,
) -> Result<Matrix<F>> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err("matrix must be an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| parse_err("matrix row must be an array"))?;
        out.push(row.iter().map(&entry).collect::<Result<Vec<F>>>()?);
    }
    Matrix::from_rows(out).map_err(|e| parse_err(e.to_string()))
}

pub fn rational_matrix_to_json(m: &Matrix<Rational>) -> Value {
    matrix_to_json(m, rational_to_json)
}

pub fn rational_matrix_from_json(v: &Value) -> Result<Matrix<Rational>> {
    matrix_from_json(v, rational_from_json)
}

pub fn multiquad_matrix_to_json(m: &Matrix<MultiQuad>) -> Value {
    matrix_to_json(m, multiquad_to_json)
}

pub fn multiquad_matrix_from_json(v: &Value) -> Result<Matrix<MultiQuad>> {
    matrix_from_json(v, multiquad_from_json)
}

/// Entries of a [`MatrixDocument`].
#[derive(Clone, Debug, PartialEq)]
pub enum Entries {
    Rational(Matrix<Rational>),
    MultiQuad(Matrix<MultiQuad>),
}

/// A matrix with optional provenance metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixDocument {
    pub entries: Entries,
    pub label: Option<String>,
    pub seed: Option<u64>,
    /// Text form of the minimal polynomial known by construction.
    pub minpoly: Option<String>,
}

impl MatrixDocument {
    pub fn rational(m: Matrix<Rational>) -> Self {
        MatrixDocument {
            entries: Entries::Rational(m),
            label: None,
            seed: None,
            minpoly: None,
        }
    }

    pub fn order(&self) -> usize {
        match &self.entries {
            Entries::Rational(m) => m.order(),
            Entries::MultiQuad(m) => m.order(),
        }
    }

    /// The rational matrix, or an error if some entry is irrational.
    pub fn rational_matrix(&self) -> Result<Matrix<Rational>> {
        match &self.entries {
            Entries::Rational(m) => Ok(m.clone()),
            Entries::MultiQuad(m) => m
                .as_rational()
                .ok_or_else(|| parse_err("expected a matrix with rational entries")),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("order".into(), json!(self.order()));
        let entries = match &self.entries {
            Entries::Rational(m) => rational_matrix_to_json(m),
            Entries::MultiQuad(m) => multiquad_matrix_to_json(m),
        };
        map.insert("entries".into(), entries);
        if let Some(label) = &self.label {
            map.insert("label".into(), json!(label));
        }
        if let Some(seed) = self.seed {
            map.insert("seed".into(), json!(seed));
        }
        if let Some(minpoly) = &self.minpoly {
            map.insert("minpoly".into(), json!(minpoly));
        }
        Value::Object(map)
    }

    /// Accepts a document object or a bare array of rows. Entries that are
    /// all rational yield [`Entries::Rational`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let (rows, meta) = match v {
            Value::Array(_) => (v, None),
            Value::Object(map) => (
                map.get("entries")
                    .ok_or_else(|| parse_err("matrix document lacks \"entries\""))?,
                Some(map),
            ),
            _ => return Err(parse_err("expected a matrix document")),
        };
        let mq = multiquad_matrix_from_json(rows)?;
        let entries = match mq.as_rational() {
            Some(m) => Entries::Rational(m),
            None => Entries::MultiQuad(mq),
        };
        let mut doc = MatrixDocument {
            entries,
            label: None,
            seed: None,
            minpoly: None,
        };
        if let Some(map) = meta {
            if let Some(order) = map.get("order") {
                let order = order
                    .as_u64()
                    .ok_or_else(|| parse_err("\"order\" must be a positive integer"))?;
                if order as usize != doc.order() {
                    return Err(parse_err(format!(
                        "declared order {order} but entries have order {}",
                        doc.order()
                    )));
                }
            }
            doc.label = map.get("label").and_then(Value::as_str).map(str::to_owned);
            doc.seed = map.get("seed").and_then(Value::as_u64);
            doc.minpoly = map
                .get("minpoly")
                .and_then(Value::as_str)
                .map(str::to_owned);
        }
        Ok(doc)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        MatrixDocument::from_json(&v)
    }
}
