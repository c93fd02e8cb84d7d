use nalgebra::DMatrix;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_value(field: &str, source: &str, line: usize, column: usize) -> Result<f64> {
    let field = field.trim();
    field.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
        Error::parse(
            format!("{source}:{line}:{column}"),
            format!("expected a finite number, found {field:?}"),
        )
    })
}

/// One value per line. Blank lines and lines starting with `#` are skipped.
pub fn parse_series(text: &str, source: &str) -> Result<Vec<f64>> {
    let values = data_lines(text)
        .map(|(line, l)| {
            if l.contains(',') {
                return Err(Error::parse(format!("{source}:{line}"), "expected one value per line"));
            }
            parse_value(l, source, line, 1)
        })
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::parse(source, "no values"));
    }
    Ok(values)
}

/// Comma-separated rows of equal length.
pub fn parse_matrix(text: &str, source: &str) -> Result<DMatrix<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line, l) in data_lines(text) {
        let row = l
            .split(',')
            .enumerate()
            .map(|(c, f)| parse_value(f, source, line, c + 1))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::parse(
                    format!("{source}:{line}"),
                    format!("row has {} values, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(source, "no rows"));
    }
    let cols = rows[0].len();
    Ok(DMatrix::from_row_iterator(rows.len(), cols, rows.into_iter().flatten()))
}

/// Shortest text that parses back to the same `f64`.
pub fn format_series(values: &[f64]) -> String {
    values.iter().fold(String::new(), |mut out, v| {
        let _ = writeln!(out, "{v}");
        out
    })
}

pub fn format_matrix(matrix: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for row in matrix.row_iter() {
        let fields: Vec<String> = row.iter().map(f64::to_string).collect();
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

pub fn read_series(path: &Path) -> Result<Vec<f64>> {
    parse_series(&super::read_text(path)?, &path.display().to_string())
}

pub fn read_matrix(path: &Path) -> Result<DMatrix<f64>> {
    parse_matrix(&super::read_text(path)?, &path.display().to_string())
}

pub fn write_series(path: &Path, values: &[f64]) -> Result<()> {
    super::write_bytes(path, format_series(values))
}

pub fn write_matrix(path: &Path, matrix: &DMatrix<f64>) -> Result<()> {
    super::write_bytes(path, format_matrix(matrix))
}
