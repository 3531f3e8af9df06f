//! The BT1 table format.
//!
//! ```text
//! BT1
//! # i j value
//! 0 0 1
//! 1 2 10/3
//! ```
//!
//! The first significant line is the literal header `BT1`. Every other
//! significant line is a record `i j v` with `i >= 0`, `j` any integer and
//! `v` a positive integer or fraction. Lines starting with `#` and blank lines
//! are skipped. Each `(i, j)` may appear once.

use std::fmt::Write as _;
use std::path::Path;

use betti_core::rational;
use betti_core::BettiTable;
use num_traits::Signed;

pub const HEADER: &str = "BT1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing BT1 header")]
    MissingHeader,
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line { line, message: message.into() }
}

pub fn parse(text: &str) -> Result<BettiTable, ParseError> {
    let mut table = BettiTable::new();
    let mut seen_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_header {
            if line != HEADER {
                return Err(at(line_no, format!("expected header {HEADER}, found {line:?}")));
            }
            seen_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [i, j, v] = fields[..] else {
            return Err(at(line_no, format!("expected `i j value`, found {} fields", fields.len())));
        };
        let i: usize = i
            .parse()
            .map_err(|_| at(line_no, format!("homological index {i:?} is not a nonnegative integer")))?;
        let j: i64 = j
            .parse()
            .map_err(|_| at(line_no, format!("degree {j:?} is not an integer")))?;
        let value = rational::parse(v)
            .ok_or_else(|| at(line_no, format!("value {v:?} is not an integer or num/den")))?;
        if !value.is_positive() {
            return Err(at(line_no, format!("value {v} must be positive")));
        }
        if table.get(i, j).is_some() {
            return Err(at(line_no, format!("duplicate entry ({i}, {j})")));
        }
        table
            .insert(i, j, value)
            .map_err(|e| at(line_no, e.to_string()))?;
    }
    if !seen_header {
        return Err(ParseError::MissingHeader);
    }
    Ok(table)
}

pub fn read(path: &Path) -> Result<BettiTable, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse(&text)
}

/// Serializes `t` in canonical order (by `i`, then `j`).
pub fn write(t: &BettiTable) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for (i, j, v) in t.iter() {
        let _ = writeln!(out, "{i} {j} {}", rational::render(v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use betti_core::rational::{from_int, ratio};

    #[test]
    fn parses_with_comments() {
        let t = parse("# example\n\nBT1\n0 0 1\n# middle\n1 2 10/3\n  2 4 5  \n3 5 16/6\n").unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.get(1, 2), Some(&ratio(10, 3)));
        assert_eq!(t.get(3, 5), Some(&ratio(8, 3)));
        assert_eq!(t.get(2, 4), Some(&from_int(5)));
    }

    #[test]
    fn negative_degrees_are_allowed() {
        let t = parse("BT1\n0 -2 1\n1 -1 2\n").unwrap();
        assert_eq!(t.get(0, -2), Some(&from_int(1)));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("", ParseError::MissingHeader),
            ("# only\n", ParseError::MissingHeader),
            ("BT2\n", at(1, "")),
            ("BT1\n0 0\n", at(2, "")),
            ("BT1\n0 0 1 2\n", at(2, "")),
            ("BT1\n-1 0 1\n", at(2, "")),
            ("BT1\n0 x 1\n", at(2, "")),
            ("BT1\n0 0 0\n", at(2, "")),
            ("BT1\n0 0 -1/2\n", at(2, "")),
            ("BT1\n0 0 1/0\n", at(2, "")),
            ("BT1\n0 0 1.5\n", at(2, "")),
            ("BT1\n0 0 1\n\n0 0 2\n", at(4, "")),
        ];
        for (text, want) in cases {
            let got = parse(text).unwrap_err();
            match (&got, &want) {
                (ParseError::Line { line: a, .. }, ParseError::Line { line: b, .. }) => {
                    assert_eq!(a, b, "{text:?}: {got}")
                }
                _ => assert_eq!(got, want, "{text:?}"),
            }
        }
    }

    #[test]
    fn write_then_parse() {
        let t = parse("BT1\n3 6 1\n0 0 1\n1 3 4\n").unwrap();
        let text = write(&t);
        assert_eq!(text, "BT1\n0 0 1\n1 3 4\n3 6 1\n");
        assert_eq!(parse(&text).unwrap(), t);
    }
}
