//! Plain-text relation format: `n` on the first line, then `n` lines of `n`
//! characters `0`/`1`, line `z` holding row `z`.

use relmon_core::relation::{Relation, MAX_N};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing size line")]
    MissingSize,
    #[error("invalid size {0:?}")]
    BadSize(String),
    #[error("size {0} exceeds {MAX_N}")]
    TooLarge(usize),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row}: expected {expected} characters of 0/1")]
    BadRow { row: usize, expected: usize },
}

/// Row `z` as a `0`/`1` string, column 0 first.
pub fn row_string(r: &Relation, z: usize) -> String {
    (0..r.len()).map(|x| if r.contains(z, x) { '1' } else { '0' }).collect()
}

pub fn row_strings(r: &Relation) -> Vec<String> {
    (0..r.len()).map(|z| row_string(r, z)).collect()
}

pub fn format_relation(r: &Relation) -> String {
    let mut out = format!("{}\n", r.len());
    for row in row_strings(r) {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn parse_relation(input: &str) -> Result<Relation, ParseError> {
    let mut lines = input.lines();
    let first = lines.next().ok_or(ParseError::MissingSize)?;
    let n: usize = first.trim().parse().map_err(|_| ParseError::BadSize(first.to_string()))?;
    if n > MAX_N {
        return Err(ParseError::TooLarge(n));
    }
    let rows: Vec<&str> = lines.collect();
    // a single trailing empty line is tolerated by `lines`; anything else counts
    if rows.len() != n {
        return Err(ParseError::RowCount { expected: n, found: rows.len() });
    }
    let mut bits = Vec::with_capacity(n);
    for (z, line) in rows.iter().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.len() != n || !line.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(ParseError::BadRow { row: z, expected: n });
        }
        let row = line.bytes().enumerate().fold(0u16, |m, (x, b)| if b == b'1' { m | 1 << x } else { m });
        bits.push(row);
    }
    Ok(Relation::from_rows(&bits).expect("validated"))
}
