//! Plain-text matrix files.
//!
//! Line 1 holds `rows cols`; each following line holds one row of
//! whitespace-separated decimal literals. Writers use 17 significant digits so
//! values re-read bit-identically.

use std::fs;
use std::path::Path;

use crate::error::{QrError, Result};
use crate::matrix::DenseMatrix;

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(QrError::Parse(msg.into()))
}

pub fn parse_matrix(text: &str) -> Result<DenseMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = match lines.next() {
        Some(h) => h,
        None => return parse_err("empty matrix file"),
    };
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [rows, cols] = dims.as_slice() else {
        return parse_err(format!("header must be `rows cols`, got {header:?}"));
    };
    let rows: usize = rows.parse().map_err(|_| QrError::Parse(format!("bad row count {rows:?}")))?;
    let cols: usize = cols.parse().map_err(|_| QrError::Parse(format!("bad column count {cols:?}")))?;
    if rows == 0 || cols == 0 {
        return parse_err(format!("matrix must be at least 1x1, got {rows}x{cols}"));
    }

    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| QrError::Parse(format!("expected {rows} rows, found {i}")))?;
        let before = data.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| QrError::Parse(format!("row {}: bad number {tok:?}", i + 1)))?;
            data.push(v);
        }
        if data.len() - before != cols {
            return parse_err(format!("row {} has {} entries, expected {cols}", i + 1, data.len() - before));
        }
    }
    if lines.next().is_some() {
        return parse_err(format!("more than {rows} rows"));
    }
    DenseMatrix::new(rows, cols, data).map_err(|e| match e {
        QrError::NonFinite { row, col } => QrError::Parse(format!("entry ({}, {}) is not finite", row + 1, col + 1)),
        other => other,
    })
}

pub fn format_matrix(a: &DenseMatrix) -> String {
    let mut out = format!("{} {}\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_matrix(path: &Path) -> Result<DenseMatrix> {
    let text = fs::read_to_string(path).map_err(|e| QrError::Parse(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

pub fn write_matrix(path: &Path, a: &DenseMatrix) -> Result<()> {
    fs::write(path, format_matrix(a)).map_err(|e| QrError::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scientific_notation() {
        let a = parse_matrix("2 2\n1 2.5e0\n-3E-1   4\n").unwrap();
        assert_eq!(a, DenseMatrix::from_rows(&[[1.0, 2.5], [-0.3, 4.0]]).unwrap());
    }

    #[test]
    fn writes_seventeen_digits() {
        let a = DenseMatrix::from_rows(&[[0.1, -2.0 / 3.0]]).unwrap();
        let text = format_matrix(&a);
        assert_eq!(text, "1 2\n1.0000000000000001e-1 -6.6666666666666663e-1\n");
        assert_eq!(parse_matrix(&text).unwrap(), a);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "2\n1\n2\n",
            "2 1\n1\n",
            "1 2\n1\n",
            "1 1\nx\n",
            "1 1\n1\n2\n",
            "0 1\n",
            "1 1\nnan\n",
        ] {
            assert!(matches!(parse_matrix(bad), Err(QrError::Parse(_))), "{bad:?}");
        }
    }
}
