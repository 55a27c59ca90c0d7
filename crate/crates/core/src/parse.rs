// SPDX-License-Identifier: Apache-2.0

//! Text input formats.

use crate::error::{Error, Result};

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .flat_map(|(i, line)| line.split(',').map(str::trim).filter(|t| !t.is_empty()).map(move |t| (i + 1, t)))
}

/// Weights, one per line or comma-separated; blank lines are ignored.
pub fn parse_weights(text: &str) -> Result<Vec<f64>> {
    let w: Vec<f64> = tokens(text)
        .map(|(line, t)| match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            Ok(_) => Err(Error::Parse { line, msg: format!("weight {t:?} is not finite") }),
            Err(e) => Err(Error::Parse { line, msg: format!("{t:?}: {e}") }),
        })
        .collect::<Result<_>>()?;
    if w.is_empty() {
        return Err(Error::Empty);
    }
    Ok(w)
}

/// Integer weights in the same layout as [`parse_weights`].
pub fn parse_int_weights(text: &str) -> Result<Vec<i64>> {
    let w: Vec<i64> = tokens(text)
        .map(|(line, t)| t.parse::<i64>().map_err(|e| Error::Parse { line, msg: format!("{t:?}: {e}") }))
        .collect::<Result<_>>()?;
    if w.is_empty() {
        return Err(Error::Empty);
    }
    Ok(w)
}

/// `label,count` rows, optionally preceded by a `label,count` header.
/// Rows are returned sorted by label; duplicate labels are rejected.
pub fn parse_counts_csv(text: &str) -> Result<(Vec<String>, Vec<u64>)> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(text.as_bytes());
    let mut rows: Vec<(String, u64)> = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(i + 1, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = rec.position().map_or(i + 1, |p| p.line() as usize);
        if rec.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        if rec.len() != 2 {
            return Err(Error::Parse { line, msg: format!("expected 2 fields, found {}", rec.len()) });
        }
        let (label, count) = (&rec[0], rec[1].trim());
        if rows.is_empty() && i == 0 && label.trim() == "label" && count == "count" {
            continue;
        }
        let count = count.parse::<u64>().map_err(|e| Error::Parse { line, msg: format!("count {count:?}: {e}") })?;
        rows.push((label.to_string(), count));
    }
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Parse { line: 0, msg: format!("duplicate label {:?}", w[0].0) });
    }
    Ok(rows.into_iter().unzip())
}
