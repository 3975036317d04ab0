//! Grid files: one parameter set per line.
//!
//! ```text
//! # comment
//! GR-3.434.2 a=1 b=2
//! R-3.6 p=3, q=1
//! ```
//!
//! Pairs are separated by commas, whitespace or both. Blank lines and
//! anything after `#` are ignored.

use thiserror::Error;

use crate::record::Params;

#[derive(Debug, Clone, PartialEq)]
pub struct GridLine {
    pub entry: String,
    pub params: Params,
    /// 1-based line number in the source file.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("line {line}: expected name=value, found `{token}`")]
    MalformedPair { line: usize, token: String },
    #[error("line {line}: `{text}` is not a number")]
    BadNumber { line: usize, text: String },
    #[error("line {line}: `{name}` given twice")]
    Duplicate { line: usize, name: String },
}

/// Parses `name=value` pairs separated by commas and/or whitespace.
pub fn parse_pairs(text: &str, line: usize) -> Result<Params, GridError> {
    let mut out: Vec<(String, f64)> = Vec::new();
    for token in text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let Some((name, value)) = token.split_once('=') else {
            return Err(GridError::MalformedPair {
                line,
                token: token.to_owned(),
            });
        };
        let name = name.trim();
        if name.is_empty() {
            return Err(GridError::MalformedPair {
                line,
                token: token.to_owned(),
            });
        }
        let value: f64 = value.trim().parse().map_err(|_| GridError::BadNumber {
            line,
            text: value.to_owned(),
        })?;
        if out.iter().any(|(k, _)| k == name) {
            return Err(GridError::Duplicate {
                line,
                name: name.to_owned(),
            });
        }
        out.push((name.to_owned(), value));
    }
    Ok(Params(out))
}

pub fn parse_grid_file(text: &str) -> Result<Vec<GridLine>, GridError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (entry, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        lines.push(GridLine {
            entry: entry.to_owned(),
            params: parse_pairs(rest, i + 1)?,
            line: i + 1,
        });
    }
    Ok(lines)
}
