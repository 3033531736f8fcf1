//! Shared rendering helpers: output formats, CSV quoting, and the small
//! conversions between exact values and their serialized forms.

use clap::ValueEnum;
use fibkit_core::exactmath::{BivarPoly, RationalFunction};
use fibkit_core::valuations::Valuation;
use fibkit_core::{Integer, Rational};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Polynomial in the rendering selected by --latex.
pub fn poly_str(p: &BivarPoly, latex: bool) -> String {
    if latex {
        p.to_latex()
    } else {
        p.to_text()
    }
}

pub fn ratfunc_str(r: &RationalFunction, latex: bool) -> String {
    if latex {
        r.to_latex()
    } else {
        r.to_text()
    }
}

/// Valuations serialize as strings so that "inf" and large finite values
/// live in one column type.
pub fn valuation_str(v: Valuation) -> String {
    v.to_string()
}

/// Exact fractions are always "p/q" text, never floats.
pub fn rational_str(x: &Rational) -> String {
    x.to_string()
}

pub fn integer_str(x: &Integer) -> String {
    x.to_string()
}

pub fn opt_i64(v: Option<i64>) -> Value {
    match v {
        Some(x) => Value::from(x),
        None => Value::Null,
    }
}

/// One JSON document per invocation, pretty-printed, trailing newline.
pub fn json_doc(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
    s.push('\n');
    s
}

fn csv_field(f: &str) -> String {
    if f.contains(',') || f.contains('"') || f.contains('\n') || f.contains('\r') {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

pub fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
    let mut line = quoted.join(",");
    line.push('\n');
    line
}

pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = csv_line(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        out.push_str(&csv_line(row));
    }
    out
}
