//! Text form of logical matrices: `d16[2 4 6 8 ...]`.
//!
//! `d<rows>` followed by the bracketed, space-separated, 1-based row index of
//! each column. A `*` entry marks an undetermined column (partial matrices
//! only).

use crate::error::{Error, Result};

pub(crate) fn parse_delta(text: &str) -> Result<(usize, Vec<Option<usize>>)> {
    let err = |m: &str| Error::DeltaFormat(format!("{m} in {text:?}"));
    let t = text.trim();
    let rest = t
        .strip_prefix('d')
        .ok_or_else(|| err("missing leading 'd'"))?;
    let open = rest.find('[').ok_or_else(|| err("missing '['"))?;
    let body = rest[open + 1..]
        .strip_suffix(']')
        .ok_or_else(|| err("missing trailing ']'"))?;
    let rows: usize = rest[..open].parse().map_err(|_| err("bad domain size"))?;
    if rows == 0 {
        return Err(err("domain size must be positive"));
    }
    let entries = body
        .split_whitespace()
        .map(|tok| {
            if tok == "*" {
                return Ok(None);
            }
            let v: usize = tok
                .parse()
                .map_err(|_| err(&format!("bad entry {tok:?}")))?;
            if v == 0 || v > rows {
                return Err(err(&format!("entry {v} outside [1, {rows}]")));
            }
            Ok(Some(v))
        })
        .collect::<Result<Vec<_>>>()?;
    if entries.is_empty() {
        return Err(err("no columns"));
    }
    Ok((rows, entries))
}

pub(crate) fn parse_full(text: &str) -> Result<(usize, Vec<usize>)> {
    let (rows, entries) = parse_delta(text)?;
    let cols = entries
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::DeltaFormat(format!("undetermined '*' column in {text:?}")))?;
    Ok((rows, cols))
}

pub(crate) fn write_delta(
    f: &mut std::fmt::Formatter<'_>,
    rows: usize,
    entries: impl IntoIterator<Item = Option<usize>>,
) -> std::fmt::Result {
    write!(f, "d{rows}[")?;
    for (i, e) in entries.into_iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        match e {
            Some(v) => write!(f, "{v}")?,
            None => write!(f, "*")?,
        }
    }
    write!(f, "]")
}
