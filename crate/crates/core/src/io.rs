//! The `QT1` text format.
//!
//! ```text
//! QT1
//! n1 n2 n3
//! w x y z        <- entry (i, j, k), one per line
//! ...
//! ```
//!
//! Entries run with `k` outermost, then `i`, then `j`. Components are written
//! with 17 significant digits, so parsing a serialized tensor reproduces it
//! bit for bit. Lines whose first non-blank character is `#` and blank lines
//! are ignored anywhere in the document.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::quaternion::Quaternion;
use crate::tensor::QTensor;

pub const MAGIC: &str = "QT1";

/// Parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: expected magic `QT1`, found `{found}`")]
    BadMagic {
        line: usize,
        column: usize,
        found: String,
    },
    #[error("line {line}, column {column}: bad dimensions: {reason}")]
    BadDims {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("line {line}, column {column}: expected {expected} entries, found {found}")]
    EntryCountMismatch {
        line: usize,
        column: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: malformed number `{token}`: {reason}")]
    MalformedNumber {
        line: usize,
        column: usize,
        token: String,
        reason: String,
    },
}

#[derive(Debug, Error)]
pub enum QtError {
    #[error("{path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error("{path}: {err}")]
    Parse { path: String, err: ParseError },
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim_start();
        (!t.is_empty() && !t.starts_with('#')).then_some((i + 1, l))
    })
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (line[..s].chars().count() + 1, t))
        .collect()
}

pub fn parse_qt(text: &str) -> Result<QTensor, ParseError> {
    let last_line = text.lines().count().max(1);
    let mut lines = content_lines(text);

    let (ln, line) = lines.next().ok_or_else(|| ParseError::BadMagic {
        line: last_line,
        column: 1,
        found: String::new(),
    })?;
    let toks = tokens(line);
    if toks.len() != 1 || toks[0].1 != MAGIC {
        return Err(ParseError::BadMagic {
            line: ln,
            column: toks.first().map_or(1, |t| t.0),
            found: line.trim().to_string(),
        });
    }

    let (ln, line) = lines.next().ok_or_else(|| ParseError::BadDims {
        line: last_line,
        column: 1,
        reason: "missing dimension line".into(),
    })?;
    let toks = tokens(line);
    if toks.len() != 3 {
        return Err(ParseError::BadDims {
            line: ln,
            column: toks.get(3).map_or(line.chars().count() + 1, |t| t.0),
            reason: format!("expected 3 dimensions, found {}", toks.len()),
        });
    }
    let mut dims = [0usize; 3];
    for (d, &(col, tok)) in dims.iter_mut().zip(&toks) {
        *d = match tok.parse::<usize>() {
            Ok(v) if v > 0 => v,
            Ok(_) => {
                return Err(ParseError::BadDims {
                    line: ln,
                    column: col,
                    reason: "dimensions must be positive".into(),
                })
            }
            Err(e) => {
                return Err(ParseError::BadDims {
                    line: ln,
                    column: col,
                    reason: format!("`{tok}`: {e}"),
                })
            }
        };
    }
    let [n1, n2, n3] = dims;
    let expected = n1
        .checked_mul(n2)
        .and_then(|v| v.checked_mul(n3))
        .filter(|v| v.checked_mul(std::mem::size_of::<Quaternion>()).is_some())
        .ok_or_else(|| ParseError::BadDims {
            line: ln,
            column: toks[0].0,
            reason: format!("{n1}×{n2}×{n3} overflows"),
        })?;

    let mut data = Vec::with_capacity(expected.min(1 << 20));
    for (ln, line) in lines {
        if data.len() == expected {
            return Err(ParseError::EntryCountMismatch {
                line: ln,
                column: tokens(line)[0].0,
                expected,
                found: expected + 1 + content_lines(text).filter(|(l, _)| *l > ln).count(),
            });
        }
        data.push(parse_entry(ln, line)?);
    }
    if data.len() != expected {
        return Err(ParseError::EntryCountMismatch {
            line: last_line,
            column: 1,
            expected,
            found: data.len(),
        });
    }
    Ok(QTensor::from_entries(n1, n2, n3, data).expect("entry count checked"))
}

fn parse_entry(ln: usize, line: &str) -> Result<Quaternion, ParseError> {
    let toks = tokens(line);
    if toks.len() != 4 {
        let column = toks.get(4).map_or(line.chars().count() + 1, |t| t.0);
        return Err(ParseError::MalformedNumber {
            line: ln,
            column,
            token: toks.get(4).map_or(String::new(), |t| t.1.to_string()),
            reason: format!("expected 4 components, found {}", toks.len()),
        });
    }
    let mut c = [0.0f64; 4];
    for (v, &(col, tok)) in c.iter_mut().zip(&toks) {
        *v = match tok.parse::<f64>() {
            Ok(x) if x.is_finite() => x,
            Ok(_) => {
                return Err(ParseError::MalformedNumber {
                    line: ln,
                    column: col,
                    token: tok.to_string(),
                    reason: "not finite".into(),
                })
            }
            Err(e) => {
                return Err(ParseError::MalformedNumber {
                    line: ln,
                    column: col,
                    token: tok.to_string(),
                    reason: e.to_string(),
                })
            }
        };
    }
    Ok(Quaternion::new(c[0], c[1], c[2], c[3]))
}

pub fn serialize_qt(a: &QTensor) -> String {
    let (n1, n2, n3) = a.dims();
    let mut out = String::with_capacity(16 + a.entries().len() * 100);
    let _ = writeln!(out, "{MAGIC}\n{n1} {n2} {n3}");
    for q in a.entries() {
        let _ = writeln!(out, "{:.16e} {:.16e} {:.16e} {:.16e}", q.w, q.x, q.y, q.z);
    }
    out
}

pub fn read_qt(path: impl AsRef<Path>) -> Result<QTensor, QtError> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|err| QtError::Io {
        path: shown.clone(),
        err,
    })?;
    parse_qt(&text).map_err(|err| QtError::Parse { path: shown, err })
}

pub fn write_qt(path: impl AsRef<Path>, a: &QTensor) -> Result<(), QtError> {
    let path = path.as_ref();
    std::fs::write(path, serialize_qt(a)).map_err(|err| QtError::Io {
        path: path.display().to_string(),
        err,
    })
}
