//! Newline-delimited datasets and query lists.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hash::hash_token;

/// How non-numeric tokens are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TokenMode {
    /// Every token must be an unsigned integer below `n`.
    #[default]
    Numeric,
    /// Integers are taken as-is; anything else is hashed into `[0, n)`.
    HashText,
}

/// One token per line; blank lines and surrounding whitespace are ignored.
pub fn parse_token(token: &str, n: u64, mode: TokenMode) -> std::result::Result<u64, String> {
    match token.parse::<u64>() {
        Ok(x) if x < n => Ok(x),
        Ok(x) => Err(format!("value {x} outside universe [0, {n})")),
        Err(_) if mode == TokenMode::HashText => Ok(hash_token(token, n)),
        Err(_) => Err(format!("`{token}` is not an unsigned integer")),
    }
}

/// Parses a whole dataset; the first bad line aborts with its line number.
pub fn parse_dataset(text: &str, n: u64, mode: TokenMode) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        let x = parse_token(token, n, mode).map_err(|message| Error::Parse {
            line: i + 1,
            message,
        })?;
        out.push(x);
    }
    Ok(out)
}

pub fn read_dataset(path: &Path, n: u64, mode: TokenMode) -> Result<Vec<u64>> {
    parse_dataset(&fs::read_to_string(path)?, n, mode)
}

/// A query line that could not be parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadLine {
    pub line: usize,
    pub message: String,
}

/// Parses a query list, collecting bad lines instead of stopping at them.
/// Returns `(raw token, value)` pairs.
pub fn parse_queries(text: &str, n: u64, mode: TokenMode) -> (Vec<(String, u64)>, Vec<BadLine>) {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        match parse_token(token, n, mode) {
            Ok(x) => ok.push((token.to_string(), x)),
            Err(message) => bad.push(BadLine {
                line: i + 1,
                message,
            }),
        }
    }
    (ok, bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_dataset() {
        let d = parse_dataset("1\n  2 \n\n3\n", 10, TokenMode::Numeric).unwrap();
        assert_eq!(d, vec![1, 2, 3]);
        assert!(parse_dataset("", 10, TokenMode::Numeric)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_dataset("1\n2\nfoo\n", 10, TokenMode::Numeric) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_dataset("1\n\n10\n", 10, TokenMode::Numeric) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("outside"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hashed_tokens_land_in_universe() {
        let d = parse_dataset("apple\nbanana\n7\napple\n", 1000, TokenMode::HashText).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.iter().all(|&x| x < 1000));
        assert_eq!(d[0], d[3]);
        assert_eq!(d[2], 7);
    }

    #[test]
    fn queries_continue_past_bad_lines() {
        let (ok, bad) = parse_queries("5\nx\n6\n-1\n", 10, TokenMode::Numeric);
        assert_eq!(ok, vec![("5".to_string(), 5), ("6".to_string(), 6)]);
        assert_eq!(bad.iter().map(|b| b.line).collect::<Vec<_>>(), vec![2, 4]);
    }
}
