//! The versioned JSON report and its conversions from library types.

use apolar::exactalg::{parse_rat, Rat, UniPoly};
use apolar::forms::{format_form, Form, ProjPoint};
use apolar::tensor3::Tensor3;
use apolar::waring::PointedScheme;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub certificates: Vec<Value>,
    pub warnings: Vec<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Indented `key: value` listing for terminals.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} (report {})\n", self.command, self.version);
        render(&mut out, "input", &self.input, 0);
        render(&mut out, "result", &self.result, 0);
        for (i, c) in self.certificates.iter().enumerate() {
            render(&mut out, &format!("certificate {}", i + 1), c, 0);
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.push_str(&format!("elapsed: {} ms\n", self.elapsed_ms));
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar_text(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                render(out, k, x, depth + 1);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                render(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}

pub fn rat(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn point(p: &ProjPoint) -> Value {
    rats(p.coords())
}

pub fn form(f: &Form) -> Value {
    Value::String(format_form(f))
}

pub fn poly(p: &UniPoly) -> Value {
    let coeffs: Map<String, Value> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(k, c)| (format!("t^{k}"), rat(c)))
        .collect();
    json!({ "text": p.to_string(), "coefficients": coeffs })
}

pub fn scheme(s: &PointedScheme) -> Value {
    Value::Array(
        s.entries()
            .iter()
            .map(|(x, t)| json!({ "point": point(x), "tangent": t.as_ref().map(point) }))
            .collect(),
    )
}

pub fn tensor(t: &Tensor3) -> Value {
    let support: Vec<Value> = t.support().into_iter().map(|(idx, v)| json!({ "index": idx, "value": rat(v) })).collect();
    json!({ "dims": t.dims(), "nonzero": support.len(), "support": support })
}

/// A rational given as a string `"p"`/`"p/q"` or as a JSON integer.
pub fn parse_rat_value(v: &Value) -> CliResult<Rat> {
    match v {
        Value::String(s) => parse_rat(s.trim()).ok_or_else(|| CliError::Input(format!("not a rational number: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rat::from_integer(i.into()))
            .ok_or_else(|| CliError::Input(format!("only integer JSON numbers are accepted, got {n}"))),
        other => Err(CliError::Input(format!("expected a rational, got {other}"))),
    }
}
