//! Text forms of vectors.
//!
//! Block form: one `key<TAB>coefficient` pair per line, `#` comments and
//! blank lines ignored. Inline form (used inside other TSV files):
//! `key=coefficient` pairs separated by commas, or `0` for the zero vector.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::{BasisKey, SparseVec};
use crate::error::{Error, Result};

fn parse_coefficient(s: &str, line: usize) -> Result<f64> {
    let c: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid coefficient `{}`", s.trim())))?;
    if !c.is_finite() {
        return Err(Error::parse(line, "coefficient must be finite"));
    }
    Ok(c)
}

fn parse_key(s: &str, line: usize) -> Result<BasisKey> {
    s.parse().map_err(|e| Error::parse(line, format!("{e}")))
}

pub fn parse_vector(text: &str) -> Result<SparseVec> {
    let mut seen = BTreeSet::new();
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim_end_matches('\r');
        if l.trim().is_empty() || l.trim_start().starts_with('#') {
            continue;
        }
        let (k, c) = l
            .split_once('\t')
            .ok_or_else(|| Error::parse(line, "expected `key<TAB>coefficient`"))?;
        let key = parse_key(k, line)?;
        if !seen.insert(key.clone()) {
            return Err(Error::parse(line, format!("duplicate key `{key}`")));
        }
        pairs.push((key, parse_coefficient(c, line)?));
    }
    Ok(SparseVec::from_pairs(pairs))
}

pub fn format_vector(v: &SparseVec) -> String {
    let mut out = String::new();
    for (k, c) in v {
        let _ = writeln!(out, "{k}\t{c}");
    }
    out
}

/// Parses the inline form. `line` is used for error positions only.
pub fn parse_inline(s: &str, line: usize) -> Result<SparseVec> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(SparseVec::zero());
    }
    let mut pairs = Vec::new();
    for item in s.split(',') {
        let (k, c) = item.rsplit_once('=').ok_or_else(|| {
            Error::parse(line, format!("expected `key=coefficient`, got `{item}`"))
        })?;
        pairs.push((parse_key(k.trim(), line)?, parse_coefficient(c, line)?));
    }
    Ok(SparseVec::from_pairs(pairs))
}

pub fn format_inline(v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".to_owned();
    }
    v.iter()
        .map(|(k, c)| format!("{k}={c}"))
        .collect::<Vec<_>>()
        .join(",")
}
