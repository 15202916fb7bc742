//! Text formats.
//!
//! Permutation-set files:
//!
//! ```text
//! # comment lines start with '#'
//! n=5
//! 12345
//! 24153
//! ```
//!
//! The first non-comment line is the header `n=<degree>`; every further line
//! holds one permutation in one-line notation, space or comma separated, or as
//! contiguous digits when `n ≤ 9`. Blank lines are ignored. Sets are written
//! sorted.
//!
//! Latin squares are one row per line in the same row syntax, the order being
//! the number of rows.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::perm::{format_one_line, parse_one_line};
use crate::permset::PermSet;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: &str) -> Result<usize> {
    let invalid = || Error::InvalidHeader {
        text: line.to_string(),
    };
    let (key, value) = line.split_once('=').ok_or_else(invalid)?;
    if key.trim() != "n" {
        return Err(invalid());
    }
    let n: usize = value.trim().parse().map_err(|_| invalid())?;
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(n)
}

pub fn parse_permset(text: &str) -> Result<PermSet> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(Error::MissingHeader)?;
    let n = parse_header(header).map_err(|e| e.at_line(header_line))?;
    let mut perms = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (line_no, line) in lines {
        let perm = parse_one_line(line, n).map_err(|e| e.at_line(line_no))?;
        if seen.insert(perm.clone(), line_no).is_some() {
            return Err(Error::DuplicatePermutation {
                perm: perm.to_string(),
            }
            .at_line(line_no));
        }
        perms.push(perm);
    }
    PermSet::new(perms)
}

pub fn format_permset(d: &PermSet) -> String {
    let mut out = format!("n={}\n", d.degree());
    for sigma in d {
        out.push_str(&format_one_line(sigma));
        out.push('\n');
    }
    out
}

pub fn load_permset(path: &Path) -> Result<PermSet> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_permset(&text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn store_permset(d: &PermSet, path: &Path) -> Result<()> {
    fs::write(path, format_permset(d))
        .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
}

/// Parses the rows of a square array. Shape and Latin property are checked
/// by [`crate::construct::from_latin_square`].
pub fn parse_latin_square(text: &str) -> Result<Vec<Vec<usize>>> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let n = lines.len();
    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let row: Result<Vec<usize>> = if tokens.len() == 1 && n > 1 && n <= 9 {
            tokens[0]
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidToken {
                            token: tokens[0].to_string(),
                        })
                })
                .collect()
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::InvalidToken {
                        token: t.to_string(),
                    })
                })
                .collect()
        };
        rows.push(row.map_err(|e| e.at_line(line_no))?);
    }
    Ok(rows)
}

pub fn format_latin_square(rows: &[Vec<usize>]) -> String {
    let n = rows.len();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&if n <= 9 {
            cells.concat()
        } else {
            cells.join(" ")
        });
        out.push('\n');
    }
    out
}
