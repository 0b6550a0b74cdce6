//! Lexer for the flat `key=value` text format used by instance and
//! experiment files.
//!
//! One binding per line. Blank lines and lines starting with `#` are
//! skipped. Keys and values are trimmed; all errors carry 1-based line
//! numbers.

use crate::error::{Error, Result};
use crate::Scalar;

/// One `key=value` binding with its source line.
#[derive(Debug, Clone)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

/// Splits text into ordered entries. Malformed lines (no `=`, empty key)
/// are reported with their line number.
pub fn lex(text: &str) -> Result<Vec<Entry>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(eq) = trimmed.find('=') else {
            return Err(Error::parse(line, format!("expected key=value, got `{trimmed}`")));
        };
        let key = trimmed[..eq].trim();
        let value = trimmed[eq + 1..].trim();
        if key.is_empty() {
            return Err(Error::parse(line, "empty key"));
        }
        entries.push(Entry { line, key: key.to_string(), value: value.to_string() });
    }
    Ok(entries)
}

/// Rejects repeated keys, naming both offending lines. Keys listed in
/// `exempt` may repeat (used for `rows` marker lines).
pub fn reject_duplicates(entries: &[Entry], exempt: &[&str]) -> Result<()> {
    let mut seen: Vec<(&str, usize)> = Vec::new();
    for e in entries {
        if exempt.contains(&e.key.as_str()) {
            continue;
        }
        if let Some((_, first)) = seen.iter().find(|(k, _)| *k == e.key) {
            return Err(Error::parse(
                e.line,
                format!("duplicate key `{}` (lines {} and {})", e.key, first, e.line),
            ));
        }
        seen.push((&e.key, e.line));
    }
    Ok(())
}

pub fn parse_scalar<T: Scalar>(e: &Entry) -> Result<T> {
    let v: f64 = e
        .value
        .parse()
        .map_err(|_| Error::parse(e.line, format!("key `{}`: expected a number, got `{}`", e.key, e.value)))?;
    Ok(T::c(v))
}

pub fn parse_u64(e: &Entry) -> Result<u64> {
    e.value
        .parse()
        .map_err(|_| Error::parse(e.line, format!("key `{}`: expected a non-negative integer, got `{}`", e.key, e.value)))
}

pub fn parse_usize(e: &Entry) -> Result<usize> {
    e.value
        .parse()
        .map_err(|_| Error::parse(e.line, format!("key `{}`: expected a non-negative integer, got `{}`", e.key, e.value)))
}

/// Comma-separated list of numbers.
pub fn parse_number_list(e: &Entry) -> Result<Vec<f64>> {
    if e.value.is_empty() {
        return Err(Error::parse(e.line, format!("key `{}`: empty list", e.key)));
    }
    e.value
        .split(',')
        .map(|tok| {
            tok.trim().parse::<f64>().map_err(|_| {
                Error::parse(e.line, format!("key `{}`: expected a number, got `{}`", e.key, tok.trim()))
            })
        })
        .collect()
}

/// Comma-separated list of unsigned integers.
pub fn parse_u64_list(e: &Entry) -> Result<Vec<u64>> {
    if e.value.is_empty() {
        return Err(Error::parse(e.line, format!("key `{}`: empty list", e.key)));
    }
    e.value
        .split(',')
        .map(|tok| {
            tok.trim().parse::<u64>().map_err(|_| {
                Error::parse(e.line, format!("key `{}`: expected an integer, got `{}`", e.key, tok.trim()))
            })
        })
        .collect()
}
