//! Plain-text matrix and vector files and atomic output.
//!
//! Files are whitespace-delimited rows of numbers. Everything after `#` on a
//! line is a comment; blank lines are skipped. A vector file may spread its
//! entries over any number of rows.

use std::fs;
use std::io::Write;
use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::error::{CliError, CliResult};

fn numeric_rows(text: &str, origin: &str) -> CliResult<Vec<(usize, Vec<f64>)>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        for token in line.split_whitespace() {
            let value: f64 = token.parse().map_err(|_| CliError::Parse {
                path: origin.to_string(),
                line: i + 1,
                message: format!("'{token}' is not a number"),
            })?;
            if !value.is_finite() {
                return Err(CliError::Parse {
                    path: origin.to_string(),
                    line: i + 1,
                    message: format!("'{token}' is not finite"),
                });
            }
            row.push(value);
        }
        if !row.is_empty() {
            rows.push((i + 1, row));
        }
    }
    Ok(rows)
}

pub fn parse_matrix(text: &str, origin: &str) -> CliResult<DMatrix<f64>> {
    let rows = numeric_rows(text, origin)?;
    let Some((_, first)) = rows.first() else {
        return Err(CliError::Parse {
            path: origin.to_string(),
            line: 0,
            message: "no numeric rows".into(),
        });
    };
    let width = first.len();
    if let Some((line, row)) = rows.iter().find(|(_, r)| r.len() != width) {
        return Err(CliError::Parse {
            path: origin.to_string(),
            line: *line,
            message: format!("row has {} entries, expected {width}", row.len()),
        });
    }
    Ok(DMatrix::from_fn(rows.len(), width, |i, j| rows[i].1[j]))
}

pub fn parse_vector(text: &str, origin: &str) -> CliResult<DVector<f64>> {
    let values: Vec<f64> = numeric_rows(text, origin)?
        .into_iter()
        .flat_map(|(_, r)| r)
        .collect();
    if values.is_empty() {
        return Err(CliError::Parse {
            path: origin.to_string(),
            line: 0,
            message: "no numeric entries".into(),
        });
    }
    Ok(DVector::from_vec(values))
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_matrix(path: &Path) -> CliResult<DMatrix<f64>> {
    parse_matrix(&read_text(path)?, &path.display().to_string())
}

pub fn read_vector(path: &Path) -> CliResult<DVector<f64>> {
    parse_vector(&read_text(path)?, &path.display().to_string())
}

/// One entry per line, shortest round-trip formatting.
pub fn format_vector(v: &DVector<f64>) -> String {
    v.iter().map(|x| format!("{x}\n")).collect()
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_with_comments() {
        let m = parse_matrix("# header\n1 2 3\n\n4 5 6 # trailing\n", "m.txt").unwrap();
        assert_eq!(m, DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]));
    }

    #[test]
    fn ragged_row_reports_line() {
        let err = parse_matrix("1 2\n# c\n3\n", "m.txt").unwrap_err();
        assert_eq!(err.to_string(), "m.txt:3: row has 1 entries, expected 2");
        let err = parse_matrix("1 x\n", "m.txt").unwrap_err();
        assert!(err.to_string().starts_with("m.txt:1:"));
        assert!(parse_matrix("# nothing\n", "m.txt").is_err());
        assert!(parse_matrix("1 inf\n", "m.txt").is_err());
    }

    #[test]
    fn vector_any_layout() {
        let v = parse_vector("1 2\n3\n", "v").unwrap();
        assert_eq!(v.as_slice(), &[1.0, 2.0, 3.0]);
        let text = format_vector(&DVector::from_vec(vec![0.1, -2.5e-300]));
        assert_eq!(parse_vector(&text, "v").unwrap().as_slice(), &[0.1, -2.5e-300]);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, "a").unwrap();
        write_atomic(&p, "b").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "b");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
