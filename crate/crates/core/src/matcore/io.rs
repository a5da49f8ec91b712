//! Matrix file format: a JSON document `{"dim": d, "entries": [[[re, im], ...], ...]}`
//! holding `d` rows of `d` complex entries.

use std::path::Path;

use serde::Deserialize;

use super::matrix::{c64, check_square_finite, CMatrix};
use crate::{Error, Result};

#[derive(Deserialize)]
struct MatrixFile {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

/// Parses the matrix document, rejecting ragged, non-square or non-finite data.
pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let doc: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.dim == 0 {
        return Err(Error::Parse("dim must be positive".into()));
    }
    if doc.entries.len() != doc.dim {
        return Err(Error::Parse(format!(
            "expected {} rows, found {}",
            doc.dim,
            doc.entries.len()
        )));
    }
    for (r, row) in doc.entries.iter().enumerate() {
        if row.len() != doc.dim {
            return Err(Error::Parse(format!(
                "row {r} has {} entries, expected {}",
                row.len(),
                doc.dim
            )));
        }
    }
    let m = CMatrix::from_fn(doc.dim, doc.dim, |r, c| {
        let [re, im] = doc.entries[r][c];
        c64(re, im)
    });
    check_square_finite(&m).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(m)
}

/// Serializes with one matrix row per line; numbers round-trip exactly.
pub fn write_matrix(m: &CMatrix) -> String {
    let mut out = format!("{{\n  \"dim\": {},\n  \"entries\": [\n", m.nrows());
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|c| format!("[{:?}, {:?}]", m[(r, c)].re, m[(r, c)].im))
            .collect();
        out.push_str("    [");
        out.push_str(&row.join(", "));
        out.push(']');
        if r + 1 < m.nrows() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn read_matrix_file(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

pub fn write_matrix_file(path: &Path, m: &CMatrix) -> std::io::Result<()> {
    std::fs::write(path, write_matrix(m))
}
