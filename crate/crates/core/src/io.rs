//! CSV and Wavefront OBJ serialization.
//!
//! Numbers are written with 17 significant digits so that a round trip is exact.

use std::fmt::Write as _;

use crate::error::{GeometryError, Result};

/// Shortest-exact scientific formatting with 17 significant digits.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV text with a header row and one row per record.
pub fn to_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| fmt_num(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Parses numeric CSV with a header line; returns the header and the rows.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| GeometryError::Parse("empty CSV".into()))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let row = line
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| GeometryError::Parse(format!("row {}: {s:?}: {e}", k + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != header.len() {
            return Err(GeometryError::Parse(format!(
                "row {} has {} fields, header has {}",
                k + 1,
                row.len(),
                header.len()
            )));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

/// Extracts named columns from parsed CSV.
pub fn columns(header: &[String], rows: &[Vec<f64>], names: &[&str]) -> Result<Vec<Vec<f64>>> {
    names
        .iter()
        .map(|name| {
            let k = header
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| GeometryError::Parse(format!("missing column {name:?}")))?;
            Ok(rows.iter().map(|r| r[k]).collect())
        })
        .collect()
}

/// OBJ text: `v x y z` lines followed by 1-based `f a b c d` quads.
pub fn to_obj(vertices: &[[f64; 3]], quads: &[[usize; 4]]) -> String {
    let mut out = String::new();
    for v in vertices {
        let _ = writeln!(
            out,
            "v {} {} {}",
            fmt_num(v[0]),
            fmt_num(v[1]),
            fmt_num(v[2])
        );
    }
    for q in quads {
        let _ = writeln!(out, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1);
    }
    out
}
