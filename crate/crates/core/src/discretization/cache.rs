//! Distance matrices on disk: a 16-byte header (`b"IPDMAT01"`, then the
//! dimension as a little-endian u64) followed by `dim²` little-endian f64
//! values in row-major order.

use std::io::{Read, Write};
use std::path::Path;

use super::{DiscretizationError, DistanceMatrix};

pub const MATRIX_MAGIC: &[u8; 8] = b"IPDMAT01";

pub fn write_matrix(matrix: &DistanceMatrix, path: impl AsRef<Path>) -> std::io::Result<()> {
    let mut buf = Vec::with_capacity(16 + 8 * matrix.as_slice().len());
    buf.extend_from_slice(MATRIX_MAGIC);
    buf.extend_from_slice(&(matrix.dim() as u64).to_le_bytes());
    for v in matrix.as_slice() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(&buf)
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<DistanceMatrix, DiscretizationError> {
    let path = path.as_ref();
    let corrupt = |why: &str| DiscretizationError::CorruptCache(format!("{}: {why}", path.display()));
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| corrupt(&e.to_string()))?;
    if bytes.len() < 16 || &bytes[..8] != MATRIX_MAGIC {
        return Err(corrupt("bad header"));
    }
    let dim = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as usize;
    let body = &bytes[16..];
    if body.len() != dim.checked_mul(dim).and_then(|n| n.checked_mul(8)).ok_or_else(|| corrupt("bad dimension"))? {
        return Err(corrupt("length does not match dimension"));
    }
    let data = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(DistanceMatrix::from_row_major(dim, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.bin");
        let m = DistanceMatrix::from_fn(5, |i, j| (i as f64 - j as f64).abs().sqrt() / 3.0);
        write_matrix(&m, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(bytes.len(), 16 + 25 * 8);
        assert_eq!(&bytes[..8], MATRIX_MAGIC);
        assert_eq!(read_matrix(&path).unwrap(), m);
    }

    #[test]
    fn truncated_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.bin");
        let m = DistanceMatrix::from_fn(3, |i, j| (i + j) as f64);
        write_matrix(&m, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 4]).unwrap();
        assert!(read_matrix(&path).is_err());
    }
}
