//! MacKay alist format.
//!
//! ```text
//! n m
//! max_col_degree max_row_degree
//! col degrees (n values)
//! row degrees (m values)
//! n lines: 1-based row indices of each column
//! m lines: 1-based column indices of each row
//! ```
//!
//! Zero entries in the neighbour lists are padding and are skipped. The
//! writer pads every list to the maximum degree.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next non-blank line as parsed integers.
    fn next_numbers(&mut self, what: &str) -> Result<Vec<usize>> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            return line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: i + 1,
                        message: format!("expected a non-negative integer in {what}, got {tok:?}"),
                    })
                })
                .collect();
        }
        Err(Error::Parse {
            line: self.last + 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }

    fn err(&self, message: String) -> Error {
        Error::Parse {
            line: self.last,
            message,
        }
    }

    fn exact(&mut self, count: usize, what: &str) -> Result<Vec<usize>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        let v = self.next_numbers(what)?;
        if v.len() != count {
            return Err(self.err(format!("expected {count} values for {what}, got {}", v.len())));
        }
        Ok(v)
    }
}

pub fn parse_alist(text: &str) -> Result<BinaryMatrix> {
    let mut lines = Lines::new(text);
    let header = lines.exact(2, "header `n m`")?;
    let (n, m) = (header[0], header[1]);
    let maxes = lines.exact(2, "maximum degrees")?;
    let col_degrees = lines.exact(n, "column degrees")?;
    let row_degrees = lines.exact(m, "row degrees")?;

    if col_degrees.iter().copied().max().unwrap_or(0) > maxes[0]
        || row_degrees.iter().copied().max().unwrap_or(0) > maxes[1]
    {
        return Err(lines.err("a degree exceeds the declared maximum".into()));
    }

    let mut entries = Vec::new();
    for (c, &deg) in col_degrees.iter().enumerate() {
        let rows = neighbours(&mut lines, deg, m, &format!("column {}", c + 1))?;
        entries.extend(rows.into_iter().map(|r| (r, c)));
    }
    let mut from_rows = Vec::new();
    for (r, &deg) in row_degrees.iter().enumerate() {
        let cols = neighbours(&mut lines, deg, n, &format!("row {}", r + 1))?;
        from_rows.extend(cols.into_iter().map(|c| (r, c)));
    }

    let by_cols = BinaryMatrix::from_entries(m, n, entries.iter().copied())
        .map_err(|e| lines.err(e.to_string()))?;
    let by_rows = BinaryMatrix::from_entries(m, n, from_rows.iter().copied())
        .map_err(|e| lines.err(e.to_string()))?;
    if by_cols != by_rows {
        return Err(lines.err("column lists and row lists disagree".into()));
    }
    Ok(by_cols)
}

fn neighbours(lines: &mut Lines<'_>, degree: usize, bound: usize, what: &str) -> Result<Vec<usize>> {
    let raw = lines.next_numbers(what)?;
    let list: Vec<usize> = raw.into_iter().filter(|&x| x != 0).collect();
    if list.len() != degree {
        return Err(lines.err(format!(
            "{what} lists {} neighbours, degree is {degree}",
            list.len()
        )));
    }
    if let Some(&bad) = list.iter().find(|&&x| x > bound) {
        return Err(lines.err(format!("{what}: index {bad} exceeds {bound}")));
    }
    Ok(list.into_iter().map(|x| x - 1).collect())
}

pub fn write_alist(mat: &BinaryMatrix) -> String {
    let (m, n) = (mat.rows(), mat.cols());
    let col_deg: Vec<usize> = (0..n).map(|c| mat.col(c).len()).collect();
    let row_deg: Vec<usize> = (0..m).map(|r| mat.row(r).len()).collect();
    let max_col = col_deg.iter().copied().max().unwrap_or(0);
    let max_row = row_deg.iter().copied().max().unwrap_or(0);

    let join = |v: &mut dyn Iterator<Item = usize>| {
        v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    };
    let padded = |list: &[usize], width: usize| {
        let mut it = list
            .iter()
            .map(|x| x + 1)
            .chain(std::iter::repeat_n(0, width.max(1) - list.len()));
        join(&mut it)
    };

    let mut out = String::new();
    let _ = writeln!(out, "{n} {m}");
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(&mut col_deg.iter().copied()));
    let _ = writeln!(out, "{}", join(&mut row_deg.iter().copied()));
    for c in 0..n {
        let _ = writeln!(out, "{}", padded(mat.col(c), max_col));
    }
    for r in 0..m {
        let _ = writeln!(out, "{}", padded(mat.row(r), max_row));
    }
    out
}
