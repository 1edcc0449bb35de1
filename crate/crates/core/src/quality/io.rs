//! Quality matrices on disk as a sorted coordinate list.
//!
//! Layout, all little-endian:
//!
//! | bytes | content |
//! |-------|---------|
//! | 8     | magic `b"IPQMAT01"` |
//! | 8     | `k` (rows, model points) as u64 |
//! | 8     | `n` (columns, view poses) as u64 |
//! | 8     | rate kind as u64: 0 unknown, 1 coverage, 2 projected area |
//! | 8     | rate parameter as f64 (max angle in degrees or minimum distance in m) |
//! | 8     | number of entries as u64 |
//! | 24·nnz | `(row u64, column u64, value f64)` sorted by row, then column |

use std::path::Path;

use super::{QualityError, QualityMatrix, QualityRateFunction};

pub const QUALITY_MAGIC: &[u8; 8] = b"IPQMAT01";

pub fn write_quality_matrix(q: &QualityMatrix, path: impl AsRef<Path>) -> std::io::Result<()> {
    let triplets = q.triplets_row_major();
    let mut buf = Vec::with_capacity(48 + 24 * triplets.len());
    let (kind, param) = match q.rate() {
        None => (0u64, 0.0),
        Some(QualityRateFunction::Coverage { max_angle }) => (1, *max_angle),
        Some(QualityRateFunction::ProjectedArea { min_distance }) => (2, *min_distance),
    };
    buf.extend_from_slice(QUALITY_MAGIC);
    for word in [q.rows() as u64, q.cols() as u64, kind] {
        buf.extend_from_slice(&word.to_le_bytes());
    }
    buf.extend_from_slice(&param.to_le_bytes());
    buf.extend_from_slice(&(triplets.len() as u64).to_le_bytes());
    for (r, c, v) in triplets {
        buf.extend_from_slice(&(r as u64).to_le_bytes());
        buf.extend_from_slice(&(c as u64).to_le_bytes());
        buf.extend_from_slice(&v.to_le_bytes());
    }
    std::fs::write(path, buf)
}

pub fn read_quality_matrix(path: impl AsRef<Path>) -> Result<QualityMatrix, QualityError> {
    let path = path.as_ref();
    let corrupt = |why: &str| QualityError::CorruptFile(format!("{}: {why}", path.display()));
    let bytes = std::fs::read(path).map_err(|e| corrupt(&e.to_string()))?;
    if bytes.len() < 48 || &bytes[..8] != QUALITY_MAGIC {
        return Err(corrupt("bad header"));
    }
    let word = |i: usize| u64::from_le_bytes(bytes[8 * i..8 * i + 8].try_into().unwrap());
    let (rows, cols, kind) = (word(1) as usize, word(2) as usize, word(3));
    let param = f64::from_bits(word(4));
    let nnz = word(5) as usize;
    let body = &bytes[48..];
    if Some(body.len()) != nnz.checked_mul(24) {
        return Err(corrupt("entry count does not match file length"));
    }
    let triplets = body
        .chunks_exact(24)
        .map(|c| {
            let r = u64::from_le_bytes(c[0..8].try_into().unwrap()) as usize;
            let col = u64::from_le_bytes(c[8..16].try_into().unwrap()) as usize;
            let v = f64::from_le_bytes(c[16..24].try_into().unwrap());
            (r, col, v)
        })
        .collect();
    let matrix = QualityMatrix::from_triplets(rows, cols, triplets)?;
    Ok(match kind {
        0 => matrix,
        1 => matrix.with_rate(QualityRateFunction::Coverage { max_angle: param }),
        2 => matrix.with_rate(QualityRateFunction::ProjectedArea {
            min_distance: param,
        }),
        _ => return Err(corrupt("unknown rate kind")),
    })
}
