//! Matrix Market readers for symmetric matrices.
//!
//! Dense matrices load from the `array` format, sparse from `coordinate`.
//! The header `%%MatrixMarket matrix <format> <field> <symmetry>` is parsed
//! per the standard: fields `real`, `integer` and (for coordinate) `pattern`
//! are accepted, symmetries `general` and `symmetric`. A `general` file must
//! still describe a symmetric matrix; mirrored entries may differ by
//! rounding up to 1e-12 relative and are averaged.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::oracle::{DenseMatrix, MatVecOracle, SparseSymmetric};
use crate::Real;

/// A matrix loaded from a Matrix Market file.
#[derive(Clone, Debug)]
pub enum MatrixMarketMatrix<F> {
    Dense(DenseMatrix<F>),
    Sparse(SparseSymmetric<F>),
}

impl<F: Real> MatrixMarketMatrix<F> {
    pub fn dim(&self) -> usize {
        match self {
            MatrixMarketMatrix::Dense(m) => m.dim(),
            MatrixMarketMatrix::Sparse(m) => m.dim(),
        }
    }

    pub fn trace(&self) -> F {
        match self {
            MatrixMarketMatrix::Dense(m) => m.trace(),
            MatrixMarketMatrix::Sparse(m) => m.trace(),
        }
    }

    pub fn as_dense(&self) -> Option<&DenseMatrix<F>> {
        match self {
            MatrixMarketMatrix::Dense(m) => Some(m),
            MatrixMarketMatrix::Sparse(_) => None,
        }
    }

    pub fn oracle(&self) -> &dyn MatVecOracle<F> {
        match self {
            MatrixMarketMatrix::Dense(m) => m,
            MatrixMarketMatrix::Sparse(m) => m,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum MmFormat {
    Array,
    Coordinate,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum MmField {
    Real,
    Integer,
    Pattern,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum MmSymmetry {
    General,
    Symmetric,
}

struct Header {
    format: MmFormat,
    field: MmField,
    symmetry: MmSymmetry,
}

fn parse_header(line: &str) -> Result<Header> {
    let tokens: Vec<String> = line.split_whitespace().map(|t| t.to_lowercase()).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(Error::UnsupportedFormat(format!(
            "expected '%%MatrixMarket matrix <format> <field> <symmetry>' header, got '{line}'"
        )));
    }
    let format = match tokens[2].as_str() {
        "array" => MmFormat::Array,
        "coordinate" => MmFormat::Coordinate,
        other => return Err(Error::UnsupportedFormat(format!("format '{other}'"))),
    };
    let field = match tokens[3].as_str() {
        "real" => MmField::Real,
        "integer" => MmField::Integer,
        "pattern" => MmField::Pattern,
        other => return Err(Error::UnsupportedFormat(format!("field '{other}'"))),
    };
    if field == MmField::Pattern && format == MmFormat::Array {
        return Err(Error::UnsupportedFormat(
            "pattern field requires the coordinate format".into(),
        ));
    }
    let symmetry = match tokens[4].as_str() {
        "general" => MmSymmetry::General,
        "symmetric" => MmSymmetry::Symmetric,
        other => return Err(Error::UnsupportedFormat(format!("symmetry '{other}'"))),
    };
    Ok(Header {
        format,
        field,
        symmetry,
    })
}

fn symmetric_pair<F: Real>(a: F, b: F, i: usize, j: usize) -> Result<F> {
    let tol = F::from_f64(1e-12).unwrap();
    let scale = F::one().max(a.abs()).max(b.abs());
    if (a - b).abs() > tol * scale {
        return Err(Error::NotSymmetric { i, j });
    }
    Ok((a + b) / (F::one() + F::one()))
}

/// Reads a Matrix Market stream: `array` files produce a dense matrix,
/// `coordinate` files a sparse one.
pub fn read_matrix_market<F: Real>(reader: impl BufRead) -> Result<MatrixMarketMatrix<F>> {
    let mut lines = reader.lines().enumerate();

    let (_, header_line) = lines
        .next()
        .ok_or_else(|| Error::UnsupportedFormat("empty input".into()))?;
    let header = parse_header(&header_line?)?;

    // Skip comments and blanks up to the size line.
    let mut size_line = None;
    for (index, line) in lines.by_ref() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        size_line = Some((index + 1, text.to_string()));
        break;
    }
    let (size_number, size_text) =
        size_line.ok_or_else(|| Error::UnsupportedFormat("missing size line".into()))?;

    let sizes: Vec<usize> = size_text
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(size_number, format!("'{t}' is not a size")))
        })
        .collect::<Result<_>>()?;

    let mut values = Vec::new();
    for (index, line) in lines {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        values.push((index + 1, text.to_string()));
    }

    match header.format {
        MmFormat::Array => {
            let (rows, cols) = match sizes[..] {
                [rows, cols] => (rows, cols),
                _ => {
                    return Err(Error::parse(
                        size_number,
                        "array size line must hold 'rows cols'",
                    ))
                }
            };
            if rows != cols {
                return Err(Error::UnsupportedFormat(format!(
                    "matrix must be square, got {rows}x{cols}"
                )));
            }
            read_array(rows, header.symmetry, &values).map(MatrixMarketMatrix::Dense)
        }
        MmFormat::Coordinate => {
            let (rows, cols, nnz) = match sizes[..] {
                [rows, cols, nnz] => (rows, cols, nnz),
                _ => {
                    return Err(Error::parse(
                        size_number,
                        "coordinate size line must hold 'rows cols nnz'",
                    ))
                }
            };
            if rows != cols {
                return Err(Error::UnsupportedFormat(format!(
                    "matrix must be square, got {rows}x{cols}"
                )));
            }
            read_coordinate(rows, nnz, header.field, header.symmetry, &values)
                .map(MatrixMarketMatrix::Sparse)
        }
    }
}

fn parse_value<F: Real>(token: &str, line: usize) -> Result<F> {
    let v: f64 = token
        .parse()
        .map_err(|_| Error::parse(line, format!("'{token}' is not a number")))?;
    Ok(F::from_f64(v).unwrap())
}

fn read_array<F: Real>(
    n: usize,
    symmetry: MmSymmetry,
    values: &[(usize, String)],
) -> Result<DenseMatrix<F>> {
    let expected = match symmetry {
        MmSymmetry::General => n * n,
        MmSymmetry::Symmetric => n * (n + 1) / 2,
    };
    let mut parsed = Vec::with_capacity(expected);
    for (line, text) in values {
        for token in text.split_whitespace() {
            parsed.push((*line, parse_value::<F>(token, *line)?));
        }
    }
    if parsed.len() != expected {
        return Err(Error::UnsupportedFormat(format!(
            "expected {expected} array values, found {}",
            parsed.len()
        )));
    }

    let mut entries = vec![F::zero(); n * n];
    match symmetry {
        MmSymmetry::General => {
            // Column-major on disk.
            for (k, (_, v)) in parsed.iter().enumerate() {
                let col = k / n;
                let row = k % n;
                entries[row * n + col] = *v;
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = symmetric_pair(entries[i * n + j], entries[j * n + i], i, j)?;
                    entries[i * n + j] = v;
                    entries[j * n + i] = v;
                }
            }
        }
        MmSymmetry::Symmetric => {
            // Lower triangle, column-major.
            let mut iter = parsed.iter();
            for col in 0..n {
                for row in col..n {
                    let (_, v) = iter.next().unwrap();
                    entries[row * n + col] = *v;
                    entries[col * n + row] = *v;
                }
            }
        }
    }
    DenseMatrix::from_rows(n, entries)
}

fn read_coordinate<F: Real>(
    n: usize,
    nnz: usize,
    field: MmField,
    symmetry: MmSymmetry,
    values: &[(usize, String)],
) -> Result<SparseSymmetric<F>> {
    if values.len() != nnz {
        return Err(Error::UnsupportedFormat(format!(
            "expected {nnz} coordinate entries, found {}",
            values.len()
        )));
    }
    let mut triples: Vec<(usize, usize, F)> = Vec::with_capacity(nnz);
    for (line, text) in values {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let expected_tokens = if field == MmField::Pattern { 2 } else { 3 };
        if tokens.len() != expected_tokens {
            return Err(Error::parse(
                *line,
                format!("expected {expected_tokens} tokens, got '{text}'"),
            ));
        }
        let i: usize = tokens[0]
            .parse()
            .map_err(|_| Error::parse(*line, format!("'{}' is not an index", tokens[0])))?;
        let j: usize = tokens[1]
            .parse()
            .map_err(|_| Error::parse(*line, format!("'{}' is not an index", tokens[1])))?;
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::parse(*line, format!("index ({i}, {j}) out of range")));
        }
        let v = if field == MmField::Pattern {
            F::one()
        } else {
            parse_value::<F>(tokens[2], *line)?
        };
        // One-based on disk.
        triples.push((i - 1, j - 1, v));
    }

    match symmetry {
        MmSymmetry::Symmetric => SparseSymmetric::new(n, triples),
        MmSymmetry::General => {
            // Off-diagonal entries must come in matching mirrored pairs.
            let mut map = std::collections::BTreeMap::new();
            for (i, j, v) in triples {
                if map.insert((i, j), v).is_some() {
                    return Err(Error::DuplicateEntry { i, j });
                }
            }
            let mut folded = Vec::new();
            for (&(i, j), &v) in &map {
                match i.cmp(&j) {
                    std::cmp::Ordering::Equal => folded.push((i, j, v)),
                    std::cmp::Ordering::Less => {
                        let mirror = *map.get(&(j, i)).ok_or(Error::NotSymmetric { i, j })?;
                        folded.push((i, j, symmetric_pair(v, mirror, i, j)?));
                    }
                    std::cmp::Ordering::Greater => {
                        if !map.contains_key(&(j, i)) {
                            return Err(Error::NotSymmetric { i: j, j: i });
                        }
                    }
                }
            }
            SparseSymmetric::new(n, folded)
        }
    }
}

/// Reads a Matrix Market file from disk.
pub fn read_matrix_market_file<F: Real>(path: impl AsRef<Path>) -> Result<MatrixMarketMatrix<F>> {
    read_matrix_market(BufReader::new(File::open(path)?))
}
