//! Edge-list and assignment file formats.
//!
//! Edge list: an optional header `n <count>`, then one arc `u v` per line
//! (0-based). Blank lines and lines starting with `#` are ignored. Without
//! a header the vertex count is one more than the largest index.
//!
//! Assignment: `{"mu": "p/q", "w": "p/q", "x": {"x11": "p/q", ...}}`;
//! missing `x` keys are zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::csp::{AssignmentX, CspParams, VARIABLE_NAMES};
use crate::digraph::{GraphError, OrientedDigraph};
use crate::field::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

fn at(line: usize, msg: impl ToString) -> FormatError {
    FormatError::Line {
        line,
        msg: msg.to_string(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<OrientedDigraph, FormatError> {
    let mut declared: Option<usize> = None;
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["n", count] => {
                if declared.is_some() || !arcs.is_empty() {
                    return Err(at(line_no, "header must come first and only once"));
                }
                declared = Some(count.parse().map_err(|_| at(line_no, format!("bad vertex count {count:?}")))?);
            }
            [u, v] => {
                let parse = |s: &str| s.parse::<usize>().map_err(|_| at(line_no, format!("bad vertex {s:?}")));
                arcs.push((line_no, parse(u)?, parse(v)?));
            }
            _ => return Err(at(line_no, format!("expected `u v` or `n <count>`, got {line:?}"))),
        }
    }
    let n = declared.unwrap_or_else(|| arcs.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0));
    let mut g = OrientedDigraph::empty(n);
    for (line_no, u, v) in arcs {
        g.add_arc(u, v).map_err(|e: GraphError| at(line_no, e))?;
    }
    Ok(g)
}

pub fn write_edge_list(g: &OrientedDigraph) -> String {
    let mut s = format!("n {}\n", g.n());
    for (u, v) in g.arcs() {
        writeln!(s, "{u} {v}").expect("writing to a String");
    }
    s
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAssignment {
    mu: String,
    w: String,
    #[serde(default)]
    x: BTreeMap<String, String>,
}

/// Contents of an assignment file.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentFile {
    pub params: CspParams<Rational>,
    pub x: AssignmentX<Rational>,
}

pub fn parse_assignment(text: &str) -> Result<AssignmentFile, FormatError> {
    let raw: RawAssignment =
        serde_json::from_str(text).map_err(|e| FormatError::Invalid(format!("assignment JSON: {e}")))?;
    let num = |what: &str, s: &str| {
        parse_rational(s).map_err(|_| FormatError::Invalid(format!("{what}: cannot parse {s:?} as a rational")))
    };
    if let Some(k) = raw.x.keys().find(|k| !VARIABLE_NAMES.contains(&k.as_str())) {
        return Err(FormatError::Invalid(format!("unknown variable {k:?}")));
    }
    let values = VARIABLE_NAMES.map(|name| match raw.x.get(name) {
        Some(s) => num(name, s),
        None => Ok(Rational::from_integer(0.into())),
    });
    let mut out = Vec::with_capacity(11);
    for v in values {
        out.push(v?);
    }
    Ok(AssignmentFile {
        params: CspParams {
            mu: num("mu", &raw.mu)?,
            w: num("w", &raw.w)?,
        },
        x: AssignmentX::from_array(out.try_into().expect("eleven values")),
    })
}

/// JSON object `{"x11": "p/q", ...}` with all eleven keys in order.
pub fn assignment_json(x: &AssignmentX<Rational>) -> serde_json::Value {
    let mut m = serde_json::Map::new();
    for (name, v) in VARIABLE_NAMES.iter().zip(x.to_array()) {
        m.insert(name.to_string(), format_rational(&v).into());
    }
    serde_json::Value::Object(m)
}

pub fn write_assignment(file: &AssignmentFile) -> String {
    let v = serde_json::json!({
        "mu": format_rational(&file.params.mu),
        "w": format_rational(&file.params.w),
        "x": assignment_json(&file.x),
    });
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}
