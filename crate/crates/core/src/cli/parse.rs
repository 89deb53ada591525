use serde_json::Value;

use crate::charpoly::Matrix;
use crate::error::{Error, Result};
use crate::exact_arith::{parse_rational, Rational};

/// Reads a matrix from either `{"entries": [[...], ...]}` JSON (integers or
/// `"p/q"` strings) or plain text rows of whitespace-separated rationals.
///
/// Blank lines and lines starting with `#` are skipped in the plain form.
pub fn parse_matrix_input(text: &[u8]) -> Result<Matrix> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Parse(format!("input is not UTF-8: {e}")))?;
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_rows(text)
    }
}

fn parse_json(text: &str) -> Result<Matrix> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let rows = value
        .get("entries")
        .ok_or_else(|| Error::Parse("missing \"entries\" field".into()))?
        .as_array()
        .ok_or_else(|| Error::Parse("\"entries\" must be an array of rows".into()))?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| Error::Parse(format!("row {} is not an array", i + 1)))?
                .iter()
                .map(json_entry)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

fn json_entry(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(Error::Parse(format!("{n} is not an integer; write fractions as \"p/q\"")))
            }
        }
        other => Err(Error::Parse(format!("unsupported matrix entry {other}"))),
    }
}

fn parse_rows(text: &str) -> Result<Matrix> {
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}
