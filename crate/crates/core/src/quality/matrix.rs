use rayon::prelude::*;

use super::{quality_rate, QualityError, QualityRateFunction};
use crate::discretization::PoseGraph;
use crate::geometry::{in_frustum, Frustum, ModelPoint, Pose, RayCaster};

/// Rates at or below this value are not stored.
pub const MIN_STORED_RATE: f64 = 1e-12;

/// Sparse `k × n` matrix of quality rates `q_m(v)`, stored column-wise so a
/// pose's contributions can be scanned in one pass.
#[derive(Clone, Debug, PartialEq)]
pub struct QualityMatrix {
    rows: usize,
    col_start: Vec<usize>,
    row_idx: Vec<u32>,
    values: Vec<f64>,
    rate: Option<QualityRateFunction>,
}

impl QualityMatrix {
    /// Assemble from `(row, column, value)` triples. Values at or below
    /// [`MIN_STORED_RATE`] are dropped; duplicates are rejected.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        mut triplets: Vec<(usize, usize, f64)>,
    ) -> Result<Self, QualityError> {
        if rows > u32::MAX as usize {
            return Err(QualityError::TooManyRows(rows));
        }
        if let Some(&(r, c, _)) = triplets.iter().find(|&&(r, c, _)| r >= rows || c >= cols) {
            return Err(QualityError::EntryOutOfRange { row: r, col: c });
        }
        if let Some(&(r, c, v)) = triplets.iter().find(|t| !t.2.is_finite() || t.2 < 0.0) {
            return Err(QualityError::InvalidValue { row: r, col: c, value: v });
        }
        triplets.retain(|t| t.2 > MIN_STORED_RATE);
        triplets.sort_unstable_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));
        if let Some(w) = triplets.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(QualityError::DuplicateEntry {
                row: w[0].0,
                col: w[0].1,
            });
        }

        let mut col_start = vec![0usize; cols + 1];
        for &(_, c, _) in &triplets {
            col_start[c + 1] += 1;
        }
        for c in 0..cols {
            col_start[c + 1] += col_start[c];
        }
        Ok(Self {
            rows,
            col_start,
            row_idx: triplets.iter().map(|t| t.0 as u32).collect(),
            values: triplets.iter().map(|t| t.2).collect(),
            rate: None,
        })
    }

    /// Dense column-major input, mostly for tests: `dense[col][row]`.
    pub fn from_dense_columns(rows: usize, dense: &[Vec<f64>]) -> Result<Self, QualityError> {
        let triplets = dense
            .iter()
            .enumerate()
            .flat_map(|(c, col)| {
                debug_assert_eq!(col.len(), rows);
                col.iter().enumerate().map(move |(r, &v)| (r, c, v))
            })
            .collect();
        Self::from_triplets(rows, dense.len(), triplets)
    }

    pub fn with_rate(mut self, rate: QualityRateFunction) -> Self {
        self.rate = Some(rate);
        self
    }

    /// The rate function that produced the matrix, if known.
    pub fn rate(&self) -> Option<&QualityRateFunction> {
        self.rate.as_ref()
    }

    /// Number of model points `k`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of view poses `n`.
    pub fn cols(&self) -> usize {
        self.col_start.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn column(&self, col: usize) -> (&[u32], &[f64]) {
        let range = self.col_start[col]..self.col_start[col + 1];
        (&self.row_idx[range.clone()], &self.values[range])
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        let (rows, vals) = self.column(col);
        rows.binary_search(&(row as u32))
            .map(|i| vals[i])
            .unwrap_or(0.0)
    }

    /// `(row, column, value)` triples sorted by row, then column.
    pub fn triplets_row_major(&self) -> Vec<(usize, usize, f64)> {
        let mut out: Vec<(usize, usize, f64)> = (0..self.cols())
            .flat_map(|c| {
                let (rows, vals) = self.column(c);
                rows.iter()
                    .zip(vals)
                    .map(move |(&r, &v)| (r as usize, c, v))
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        out
    }

    pub fn is_all_zero(&self) -> bool {
        self.values.is_empty()
    }
}

/// Counters from a matrix build.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub ray_casts: usize,
    pub visible_pairs: usize,
}

/// Three-step quality matrix construction.
///
/// 1. Visibility per (position, point) pair: one ray cast each, since it
///    does not depend on orientation (`l × k` casts in total).
/// 2. Frustum test for every orientation at a visible position.
/// 3. Quality rate for the surviving pose/point pairs.
///
/// Positions are processed in parallel; the result does not depend on the
/// thread count.
pub fn build_quality_matrix(
    points: &[ModelPoint],
    graph: &PoseGraph,
    caster: &RayCaster,
    frustum: &Frustum,
    rate: &QualityRateFunction,
) -> Result<(QualityMatrix, BuildStats), QualityError> {
    let s = graph.n_orientations();
    let per_position: Vec<(Vec<(usize, usize, f64)>, BuildStats)> = (0..graph.n_positions())
        .into_par_iter()
        .map(|p| {
            let position = graph.positions()[p];
            let mut entries = Vec::new();
            let mut stats = BuildStats::default();
            for (m, point) in points.iter().enumerate() {
                stats.ray_casts += 1;
                if !caster.visible(&position, &point.position) {
                    continue;
                }
                stats.visible_pairs += 1;
                let q = quality_rate(point, &position, rate);
                if q <= MIN_STORED_RATE {
                    continue;
                }
                for (o, orientation) in graph.orientations().iter().enumerate() {
                    let pose = Pose::new(position, *orientation);
                    if in_frustum(&pose, &point.position, frustum) {
                        entries.push((m, p * s + o, q));
                    }
                }
            }
            (entries, stats)
        })
        .collect();

    let mut stats = BuildStats::default();
    let mut triplets = Vec::new();
    for (entries, st) in per_position {
        stats.ray_casts += st.ray_casts;
        stats.visible_pairs += st.visible_pairs;
        triplets.extend(entries);
    }
    let matrix = QualityMatrix::from_triplets(points.len(), graph.n_poses(), triplets)?.with_rate(*rate);
    if matrix.is_all_zero() {
        log::warn!("quality matrix has no nonzero entries");
    }
    Ok((matrix, stats))
}
