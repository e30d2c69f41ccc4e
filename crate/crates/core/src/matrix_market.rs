//! Matrix Market reading (array and coordinate, real or integer, general or
//! symmetric) and writing (array, real, general).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    Array,
    Coordinate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Spec(format!("Matrix Market: {}", msg.into()))
}

fn parse_header(line: &str) -> Result<(Layout, Symmetry)> {
    let words: Vec<String> = line
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(bad(format!("bad banner '{line}'")));
    }
    let layout = match words[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        f => return Err(bad(format!("unsupported format '{f}'"))),
    };
    match words[3].as_str() {
        "real" | "integer" | "double" => {}
        f => return Err(bad(format!("unsupported field '{f}'"))),
    }
    let symmetry = match words[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        s => return Err(bad(format!("unsupported symmetry '{s}'"))),
    };
    Ok((layout, symmetry))
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| bad(format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| bad(format!("cannot parse {what} '{tok}'")))
}

/// Parses a square real matrix into dense row-major form.
pub fn read_matrix_market(text: &str) -> Result<DenseMatrix> {
    let mut lines = text.lines();
    let banner = lines.next().ok_or_else(|| bad("empty input"))?;
    let (layout, symmetry) = parse_header(banner)?;
    let mut body = lines
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('%'));
    let size = body.next().ok_or_else(|| bad("missing size line"))?;
    let mut toks = size.split_whitespace();
    let rows: usize = parse_num(toks.next(), "row count")?;
    let cols: usize = parse_num(toks.next(), "column count")?;
    if rows != cols {
        return Err(Error::Dimension(format!(
            "matrix is {rows}x{cols}, not square"
        )));
    }
    let n = rows;
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    let mut data = vec![0.0; n * n];
    let mut put = |i: usize, j: usize, v: f64| {
        data[i * n + j] = v;
        if symmetry == Symmetry::Symmetric {
            data[j * n + i] = v;
        }
    };
    match layout {
        Layout::Coordinate => {
            let nnz: usize = parse_num(toks.next(), "entry count")?;
            let mut seen = 0;
            for line in body {
                let mut t = line.split_whitespace();
                let i: usize = parse_num(t.next(), "row index")?;
                let j: usize = parse_num(t.next(), "column index")?;
                let v: f64 = parse_num(t.next(), "value")?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(bad(format!("index ({i}, {j}) out of range")));
                }
                if symmetry == Symmetry::Symmetric && j > i {
                    return Err(bad("symmetric storage must hold the lower triangle"));
                }
                put(i - 1, j - 1, v);
                seen += 1;
            }
            if seen != nnz {
                return Err(bad(format!("expected {nnz} entries, found {seen}")));
            }
        }
        Layout::Array => {
            // column-major; symmetric stores the lower triangle only
            let mut values = body.flat_map(str::split_whitespace);
            for j in 0..n {
                let start = if symmetry == Symmetry::Symmetric {
                    j
                } else {
                    0
                };
                for i in start..n {
                    put(i, j, parse_num(values.next(), "value")?);
                }
            }
            if values.next().is_some() {
                return Err(bad("trailing values"));
            }
        }
    }
    DenseMatrix::new(n, data)
}

/// Writes `m` as `array real general`, with round-trip exact values.
pub fn write_matrix_market(m: &DenseMatrix) -> String {
    let n = m.n();
    let mut out = String::from("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(out, "{n} {n}");
    for j in 0..n {
        for i in 0..n {
            let _ = writeln!(out, "{:e}", m.get(i, j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_symmetric() {
        let text = "%%MatrixMarket matrix coordinate real symmetric\n% c\n3 3 4\n1 1 2\n2 1 -1\n3 2 -1\n3 3 2.5\n";
        let m = read_matrix_market(text).unwrap();
        assert_eq!(
            m.to_rows(),
            vec![
                vec![2.0, -1.0, 0.0],
                vec![-1.0, 0.0, -1.0],
                vec![0.0, -1.0, 2.5]
            ]
        );
    }

    #[test]
    fn array_general_is_column_major() {
        let text = "%%MatrixMarket matrix array integer general\n2 2\n1\n3\n2\n4\n";
        let m = read_matrix_market(text).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
    }

    #[test]
    fn array_symmetric() {
        let text = "%%MatrixMarket matrix array real symmetric\n2 2\n1\n5\n4\n";
        let m = read_matrix_market(text).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1.0, 5.0], vec![5.0, 4.0]]);
    }

    #[test]
    fn round_trip() {
        let m = DenseMatrix::from_rows(&[vec![0.1, -2.5e-300], vec![1.0 / 3.0, 7.0]]).unwrap();
        assert_eq!(read_matrix_market(&write_matrix_market(&m)).unwrap(), m);
    }

    #[test]
    fn rejects() {
        for text in [
            "",
            "%%MatrixMarket matrix array complex general\n1 1\n1\n",
            "%%MatrixMarket matrix array real general\n2 3\n",
            "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n",
            "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n",
            "%%MatrixMarket matrix array real general\n1 1\n1\n2\n",
            "%%MatrixMarket matrix array real general\n1 1\nnan\n",
        ] {
            assert!(read_matrix_market(text).is_err(), "{text:?}");
        }
    }
}
