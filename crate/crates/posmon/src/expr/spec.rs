//! The on-disk monoid spec document.
//!
//! A spec is a single JSON object selecting the ambient field and either an
//! explicit generator list or a parametric family:
//!
//! ```text
//! {"field": "Q",  "generators": ["3", "5"]}
//! {"field": "Q",  "family": {"terms": ["1/p(n)"], "n_start": 1}}
//! {"field": "QX", "generators": ["X^3", "X+1*X^2", "X+2*X^2"]}
//! ```
//!
//! `family` accepts `"term"` (one string) or `"terms"` (a list); `n_start`
//! defaults to 1. Under `"field": "Q"` no expression may mention `X`, and
//! explicit generators may never mention `n`. Violations are reported with
//! a path into the document, e.g. `generators[0]`.

use serde_json::Value;

use super::{parse_expr, Expr};
use crate::error::{Error, Result};
use crate::field::FieldTag;

/// A validated spec document: the ambient field plus the generator source.
#[derive(Debug, Clone, PartialEq)]
pub struct MonoidSpec {
    pub field: FieldTag,
    pub source: SpecSource,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecSource {
    /// Fixed generator list, one expression per generator.
    Explicit(Vec<Expr>),
    /// Parametric family: every term is evaluated at n = n_start, n_start+1, ...
    Family { terms: Vec<Expr>, n_start: u32 },
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema { path: path.to_string(), message: message.into() }
}

fn parse_term(path: &str, v: &Value, field: FieldTag, explicit: bool) -> Result<Expr> {
    let src = v.as_str().ok_or_else(|| schema(path, "expected a string expression"))?;
    let expr = parse_expr(src).map_err(|e| schema(path, e.to_string()))?;
    if field == FieldTag::Q && expr.contains_x() {
        return Err(schema(path, "X is not allowed when field is Q"));
    }
    if explicit && expr.contains_n() {
        return Err(schema(path, "n is not allowed in an explicit generator list"));
    }
    Ok(expr)
}

/// Parses and validates a spec document.
pub fn parse_spec(doc: &str) -> Result<MonoidSpec> {
    let value: Value =
        serde_json::from_str(doc).map_err(|e| schema("$", format!("invalid JSON: {e}")))?;
    let obj = value.as_object().ok_or_else(|| schema("$", "expected a JSON object"))?;

    for key in obj.keys() {
        if !matches!(key.as_str(), "field" | "generators" | "family") {
            return Err(schema(key, "unknown key"));
        }
    }

    let field = match obj.get("field") {
        None => return Err(schema("field", "missing required key")),
        Some(Value::String(s)) if s == "Q" => FieldTag::Q,
        Some(Value::String(s)) if s == "QX" => FieldTag::QX,
        Some(Value::String(s)) => {
            return Err(schema("field", format!("unknown field tag {s:?} (expected \"Q\" or \"QX\")")))
        }
        Some(_) => return Err(schema("field", "expected a string")),
    };

    let generators = obj.get("generators");
    let family = obj.get("family");
    let source = match (generators, family) {
        (Some(_), Some(_)) => {
            return Err(schema("$", "exactly one of \"generators\" and \"family\" is required"))
        }
        (None, None) => {
            return Err(schema("$", "exactly one of \"generators\" and \"family\" is required"))
        }
        (Some(gens), None) => {
            let arr = gens
                .as_array()
                .ok_or_else(|| schema("generators", "expected an array of strings"))?;
            if arr.is_empty() {
                return Err(schema("generators", "expected at least one generator"));
            }
            let mut exprs = Vec::with_capacity(arr.len());
            for (i, v) in arr.iter().enumerate() {
                exprs.push(parse_term(&format!("generators[{i}]"), v, field, true)?);
            }
            SpecSource::Explicit(exprs)
        }
        (None, Some(fam)) => {
            let fam_obj = fam.as_object().ok_or_else(|| schema("family", "expected an object"))?;
            for key in fam_obj.keys() {
                if !matches!(key.as_str(), "term" | "terms" | "n_start") {
                    return Err(schema(&format!("family.{key}"), "unknown key"));
                }
            }
            let terms = match (fam_obj.get("term"), fam_obj.get("terms")) {
                (Some(_), Some(_)) => {
                    return Err(schema("family", "give either \"term\" or \"terms\", not both"))
                }
                (Some(t), None) => vec![parse_term("family.term", t, field, false)?],
                (None, Some(Value::Array(arr))) => {
                    if arr.is_empty() {
                        return Err(schema("family.terms", "expected at least one term"));
                    }
                    let mut terms = Vec::with_capacity(arr.len());
                    for (i, v) in arr.iter().enumerate() {
                        terms.push(parse_term(&format!("family.terms[{i}]"), v, field, false)?);
                    }
                    terms
                }
                (None, Some(_)) => return Err(schema("family.terms", "expected an array of strings")),
                (None, None) => return Err(schema("family", "missing \"term\" or \"terms\"")),
            };
            let n_start = match fam_obj.get("n_start") {
                None => 1,
                Some(v) => match v.as_u64() {
                    Some(k) if k >= 1 && k <= u32::MAX as u64 => k as u32,
                    _ => return Err(schema("family.n_start", "expected a positive integer")),
                },
            };
            SpecSource::Family { terms, n_start }
        }
    };

    Ok(MonoidSpec { field, source })
}
