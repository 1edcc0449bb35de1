use super::QualityMatrix;

/// Running state of the inspection objective `f(X) = Σ_m f_m(X)` under
/// max-accumulation: each model point keeps the best rate seen so far, so
/// `f_m(X) = max_{w ∈ X} q_m(w)`.
///
/// With a binary (coverage) rate the same rule reduces to "covered or not",
/// and `f` counts covered points.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjectiveState {
    best: Vec<f64>,
    total: f64,
}

impl ObjectiveState {
    pub fn new(points: usize) -> Self {
        Self {
            best: vec![0.0; points],
            total: 0.0,
        }
    }

    pub fn for_matrix(q: &QualityMatrix) -> Self {
        Self::new(q.rows())
    }

    /// Current `f(X)`.
    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn accumulators(&self) -> &[f64] {
        &self.best
    }

    /// `f(X ∪ {v}) − f(X)` without touching the state.
    #[inline]
    pub fn marginal_gain(&self, q: &QualityMatrix, pose: usize) -> f64 {
        let (rows, vals) = q.column(pose);
        rows.iter()
            .zip(vals)
            .map(|(&m, &rate)| (rate - self.best[m as usize]).max(0.0))
            .sum()
    }

    /// Add `pose` to the solution; returns the gain.
    pub fn apply(&mut self, q: &QualityMatrix, pose: usize) -> f64 {
        let (rows, vals) = q.column(pose);
        let mut gain = 0.0;
        for (&m, &rate) in rows.iter().zip(vals) {
            let best = &mut self.best[m as usize];
            if rate > *best {
                gain += rate - *best;
                *best = rate;
            }
        }
        self.total += gain;
        gain
    }

    /// State after applying every pose in `poses`.
    pub fn from_poses(q: &QualityMatrix, poses: &[usize]) -> Self {
        let mut state = Self::for_matrix(q);
        for &v in poses {
            state.apply(q, v);
        }
        state
    }
}

/// `f(X)` for a set of poses.
pub fn total_quality(poses: &[usize], q: &QualityMatrix) -> f64 {
    ObjectiveState::from_poses(q, poses).total()
}
