//! Matrix Market coordinate I/O (`complex general`, 1-based indices).

use std::io::{BufRead, Write};

use num_complex::Complex;

use crate::error::{CoreError, Result};
use crate::scalar::Real;
use crate::sparse::SparseComplexMatrix;

pub fn write_matrix_market<T: Real, W: Write>(m: &SparseComplexMatrix<T>, mut w: W) -> Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate complex general")?;
    writeln!(w, "{} {} {}", m.nrows(), m.ncols(), m.nnz())?;
    for (r, c, v) in m.triplets() {
        writeln!(w, "{} {} {:e} {:e}", r + 1, c + 1, v.re.to_f64().unwrap_or(f64::NAN), v.im.to_f64().unwrap_or(f64::NAN))?;
    }
    Ok(())
}

/// Reads `complex`, `real` or `integer` coordinate files with `general` symmetry.
pub fn read_matrix_market<T: Real, R: BufRead>(r: R) -> Result<SparseComplexMatrix<T>> {
    let bad = |s: &str| CoreError::MatrixMarket(s.to_string());
    let mut lines = r.lines();
    let header = lines.next().ok_or_else(|| bad("empty file"))??;
    let h: Vec<String> = header.split_whitespace().map(|s| s.to_ascii_lowercase()).collect();
    if h.len() < 5 || h[0] != "%%matrixmarket" || h[1] != "matrix" || h[2] != "coordinate" {
        return Err(bad("unsupported header"));
    }
    let complex = match h[3].as_str() {
        "complex" => true,
        "real" | "integer" => false,
        other => return Err(bad(&format!("unsupported field `{other}`"))),
    };
    if h[4] != "general" {
        return Err(bad("only general symmetry is supported"));
    }
    let mut data = lines.filter_map(|l| match l {
        Ok(l) if l.trim().is_empty() || l.trim_start().starts_with('%') => None,
        other => Some(other),
    });
    let size = data.next().ok_or_else(|| bad("missing size line"))??;
    let dims: Vec<usize> = size.split_whitespace().map(|t| t.parse().map_err(|_| bad("bad size line"))).collect::<Result<_>>()?;
    if dims.len() != 3 {
        return Err(bad("bad size line"));
    }
    let parse = |t: &str| -> Result<T> {
        let x: f64 = t.parse().map_err(|_| bad(&format!("bad number `{t}`")))?;
        Ok(T::lit(x))
    };
    let mut trip = Vec::with_capacity(dims[2]);
    for line in data {
        let line = line?;
        let t: Vec<&str> = line.split_whitespace().collect();
        let need = if complex { 4 } else { 3 };
        if t.len() < need {
            return Err(bad("short entry line"));
        }
        let i: usize = t[0].parse().map_err(|_| bad("bad row index"))?;
        let j: usize = t[1].parse().map_err(|_| bad("bad column index"))?;
        if i == 0 || j == 0 {
            return Err(bad("indices are 1-based"));
        }
        let im = if complex { parse(t[3])? } else { T::zero() };
        trip.push((i - 1, j - 1, Complex::new(parse(t[2])?, im)));
    }
    if trip.len() != dims[2] {
        return Err(bad("entry count does not match size line"));
    }
    SparseComplexMatrix::from_triplets(dims[0], dims[1], trip)
}

pub fn save_matrix_market<T: Real>(m: &SparseComplexMatrix<T>, path: &std::path::Path) -> Result<()> {
    let f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_matrix_market(m, f)
}

pub fn load_matrix_market<T: Real>(path: &std::path::Path) -> Result<SparseComplexMatrix<T>> {
    read_matrix_market(std::io::BufReader::new(std::fs::File::open(path)?))
}
