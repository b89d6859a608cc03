//! Matrix Market and CSV export, and Matrix Market import.
//!
//! The coordinate body always carries decimal values (exact when the
//! expansion terminates, 17 significant digits otherwise). In exact mode
//! each entry is additionally recorded as a `% exact i j p/q` comment line
//! before the size line, so a reader that understands the extension recovers
//! the exact rationals while any other reader still sees a valid file.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::matrix::{DivisorMatrix, SparseMatrix};
use crate::scalar::{format_exact, full_precision_decimal, parse_rational, Scalar};

const BANNER: &str = "%%MatrixMarket matrix coordinate real general";
const EXACT_TAG: &str = "% exact ";

fn decimal(v: &Scalar) -> String {
    match v {
        Scalar::Exact(r) => full_precision_decimal(r),
        Scalar::Approx(x) => format!("{x:.17e}"),
    }
}

/// Writes `m` in Matrix Market coordinate format.
pub fn write_matrix_market(m: &DivisorMatrix, exact_comments: bool, out: &mut dyn Write) -> Result<()> {
    let n = m.n();
    writeln!(out, "{BANNER}")?;
    writeln!(out, "% {}", m.spec().kind)?;
    if exact_comments {
        if !m.is_exact() {
            return Err(m.not_exact());
        }
        for i in 1..=n {
            for (j, v) in m.row_entries(i) {
                let r = v.as_exact().expect("checked exact");
                writeln!(out, "{EXACT_TAG}{i} {j} {}", format_exact(r))?;
            }
        }
    }
    writeln!(out, "{n} {n} {}", m.nnz())?;
    for i in 1..=n {
        for (j, v) in m.row_entries(i) {
            writeln!(out, "{i} {j} {}", decimal(&v))?;
        }
    }
    Ok(())
}

/// Reads a coordinate Matrix Market file. Exact comment lines, when
/// present, take precedence over the decimal body values.
pub fn read_matrix_market(input: &mut dyn BufRead) -> Result<SparseMatrix> {
    let mut lines = input.lines();
    let banner = lines.next().ok_or_else(|| Error::Parse("empty Matrix Market input".into()))??;
    if !banner.to_ascii_lowercase().starts_with("%%matrixmarket matrix coordinate") {
        return Err(Error::Parse(format!("unsupported Matrix Market header: {banner}")));
    }
    let mut exact: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut size: Option<(usize, usize)> = None;
    let mut body: Vec<(usize, usize, Scalar)> = Vec::new();
    for line in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix(EXACT_TAG) {
            exact.push(parse_triplet(rest)?);
            continue;
        }
        if t.starts_with('%') {
            continue;
        }
        match size {
            None => {
                let f: Vec<&str> = t.split_whitespace().collect();
                if f.len() != 3 {
                    return Err(Error::Parse(format!("bad size line: {t}")));
                }
                let rows = parse_index(f[0])?;
                let cols = parse_index(f[1])?;
                if rows != cols {
                    return Err(Error::Parse(format!("matrix is {rows}x{cols}, not square")));
                }
                size = Some((rows, parse_index(f[2])?));
            }
            Some(_) => body.push(parse_triplet(t)?),
        }
    }
    let (n, nnz) = size.ok_or_else(|| Error::Parse("missing size line".into()))?;
    if body.len() != nnz {
        return Err(Error::Parse(format!("expected {nnz} entries, found {}", body.len())));
    }
    let entries = if exact.is_empty() { body } else { exact };
    SparseMatrix::from_triplets(n, entries).map_err(|e| Error::Parse(e.to_string()))
}

fn bad_line(t: &str) -> Error {
    Error::Parse(format!("malformed line: {t}"))
}

fn parse_index(s: &str) -> Result<usize> {
    s.parse::<usize>().map_err(|_| Error::Parse(format!("bad index {s:?}")))
}

fn parse_triplet(t: &str) -> Result<(usize, usize, Scalar)> {
    let f: Vec<&str> = t.split_whitespace().collect();
    if f.len() != 3 {
        return Err(bad_line(t));
    }
    Ok((parse_index(f[0])?, parse_index(f[1])?, Scalar::Exact(parse_rational(f[2])?)))
}

/// Dense CSV: one row per line, exact values as `p/q`.
pub fn write_csv(m: &DivisorMatrix, out: &mut dyn Write) -> Result<()> {
    if m.is_exact() {
        for row in m.dense_exact()? {
            let cells: Vec<String> = row.iter().map(format_exact).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
    } else {
        for row in m.dense_f64()? {
            let cells: Vec<String> = row.iter().map(|x| if *x == 0.0 { "0".into() } else { format!("{x:.17e}") }).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
    }
    Ok(())
}

/// Reads a sequence file: one value per line (`p/q` or decimal); blank lines
/// and `#` comments are ignored.
pub fn read_sequence(input: &mut dyn BufRead) -> Result<Vec<num_rational::BigRational>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        let t = line.split('#').next().unwrap_or("").trim();
        if !t.is_empty() {
            out.push(parse_rational(t)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("sequence file has no values".into()));
    }
    Ok(out)
}
