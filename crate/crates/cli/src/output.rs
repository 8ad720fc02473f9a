//! Rendering helpers shared by the subcommands.

use anyhow::{bail, Result};
use serde_json::{json, Value};
use selalg_core::exactnum::{to_decimal_string, to_fraction_string, Rational};

use crate::args::Format;

/// What a command produced and whether it is a domain rejection.
#[derive(Debug)]
pub struct Output {
    pub body: String,
    pub rejected: bool,
}

impl Output {
    pub fn ok(body: String) -> Self {
        Self { body, rejected: false }
    }

    pub fn rejected(body: String) -> Self {
        Self { body, rejected: true }
    }
}

/// `p/q (decimal)`.
pub fn exact(x: &Rational) -> String {
    format!("{} ({})", to_fraction_string(x), to_decimal_string(x))
}

pub fn decimal(x: &Rational) -> String {
    to_decimal_string(x)
}

/// The 12-significant-digit decimal as a JSON number.
pub fn decimal_json(x: &Rational) -> Value {
    number(&to_decimal_string(x))
}

pub fn number(text: &str) -> Value {
    text.parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

/// `{"exact": "p/q", "decimal": 0.123}`.
pub fn rational_json(x: &Rational) -> Value {
    json!({ "exact": to_fraction_string(x), "decimal": decimal_json(x) })
}

pub fn rationals_json(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational_json).collect())
}

pub fn list(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(to_fraction_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialise")
}

pub fn csv<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.into_iter().collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

pub fn no_csv(format: Format, command: &str) -> Result<()> {
    if format == Format::Csv {
        bail!("{command} has no CSV form; use --format text or json");
    }
    Ok(())
}
