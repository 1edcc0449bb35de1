//! The view-pose decision space: grid positions, sampled orientations, the
//! fiber graph over positions and its metric closure.
//!
//! A view pose is a (position, orientation) pair. Poses are numbered
//! `position * s + orientation` where `s` is the number of orientations, so
//! all orientations of one position (its fiber) are contiguous.

mod apsp;
mod cache;
mod grid;
mod orientation;
mod reach;

use std::sync::Arc;

use nalgebra::{Point3, UnitQuaternion};
use thiserror::Error;

use crate::geometry::Pose;

pub use apsp::{all_pairs_shortest, shortest_path_matrix, DistanceMatrix};
pub use cache::{read_matrix, write_matrix, MATRIX_MAGIC};
pub use grid::{build_fiber_graph, connected_components, filter_unreachable, Adjacency, FilterOutcome};
pub use orientation::{orientation_distance, sample_orientations};
pub use reach::{AllReachable, FnReachability, ReachabilityPredicate, ReachabilitySpec};

#[derive(Debug, Error)]
pub enum DiscretizationError {
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("position {index} is not aligned to the grid")]
    NotGridAligned { index: usize },
    #[error("position {index} duplicates an earlier grid position")]
    DuplicatePosition { index: usize },
    #[error("no reachable view positions")]
    NoReachablePositions,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("negative edge weight")]
    NegativeWeight,
    #[error("beta must lie in [0, 1], got {0}")]
    BetaOutOfRange(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("corrupt distance cache {0}")]
    CorruptCache(String),
}

/// Index pair identifying one view pose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ViewPose {
    pub position: usize,
    pub orientation: usize,
}

/// Rotation-angle distances between every pair of orientations.
pub fn orientation_metric(orientations: &[UnitQuaternion<f64>]) -> DistanceMatrix {
    DistanceMatrix::from_fn(orientations.len(), |i, j| {
        if i == j {
            0.0
        } else {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            orientation_distance(&orientations[a], &orientations[b])
        }
    })
}

/// View-pose graph with precomputed position and orientation metrics.
///
/// The travel cost between two poses is
/// `(1 − β)·d_t(p_i, p_j) + β·d_o(o_i, o_j)` where `d_t` is the shortest-path
/// distance over the fiber graph and `d_o` the rotation angle.
#[derive(Clone, Debug)]
pub struct PoseGraph {
    positions: Vec<Point3<f64>>,
    orientations: Vec<UnitQuaternion<f64>>,
    adjacency: Adjacency,
    position_metric: Arc<DistanceMatrix>,
    orientation_metric: Arc<DistanceMatrix>,
    beta: f64,
}

impl PoseGraph {
    pub fn new(
        positions: Vec<Point3<f64>>,
        orientations: Vec<UnitQuaternion<f64>>,
        adjacency: Adjacency,
        position_metric: DistanceMatrix,
        orientation_metric: DistanceMatrix,
        beta: f64,
    ) -> Result<Self, DiscretizationError> {
        check_beta(beta)?;
        if positions.is_empty() || orientations.is_empty() {
            return Err(DiscretizationError::NonPositive("pose count"));
        }
        if position_metric.dim() != positions.len() {
            return Err(DiscretizationError::DimensionMismatch(format!(
                "{} positions but a {}×{} position metric",
                positions.len(),
                position_metric.dim(),
                position_metric.dim()
            )));
        }
        if orientation_metric.dim() != orientations.len() {
            return Err(DiscretizationError::DimensionMismatch(format!(
                "{} orientations but a {}×{} orientation metric",
                orientations.len(),
                orientation_metric.dim(),
                orientation_metric.dim()
            )));
        }
        if !adjacency.is_empty() && adjacency.len() != positions.len() {
            return Err(DiscretizationError::DimensionMismatch(
                "adjacency does not cover every position".into(),
            ));
        }
        Ok(Self {
            positions,
            orientations,
            adjacency,
            position_metric: Arc::new(position_metric),
            orientation_metric: Arc::new(orientation_metric),
            beta,
        })
    }

    /// Build from a regular grid: drop unreachable positions, connect the
    /// 26-neighbourhood and close the metric with all-pairs shortest paths.
    pub fn from_grid(
        grid: &[Point3<f64>],
        resolution: f64,
        orientations: Vec<UnitQuaternion<f64>>,
        beta: f64,
        reach: &dyn ReachabilityPredicate,
    ) -> Result<(Self, FilterOutcome), DiscretizationError> {
        check_beta(beta)?;
        let outcome = filter_unreachable(grid, resolution, reach)?;
        let positions: Vec<Point3<f64>> = outcome.retained.iter().map(|&i| grid[i]).collect();
        let adjacency = build_fiber_graph(&positions, resolution)?;
        let position_metric = all_pairs_shortest(&adjacency, &positions)?;
        let orientation_metric = orientation_metric(&orientations);
        let graph = Self::new(
            positions,
            orientations,
            adjacency,
            position_metric,
            orientation_metric,
            beta,
        )?;
        Ok((graph, outcome))
    }

    /// Complete graph with straight-line translation distances.
    pub fn euclidean(
        positions: Vec<Point3<f64>>,
        orientations: Vec<UnitQuaternion<f64>>,
        beta: f64,
    ) -> Result<Self, DiscretizationError> {
        let metric =
            DistanceMatrix::from_fn(positions.len(), |i, j| (positions[i] - positions[j]).norm());
        let o_metric = orientation_metric(&orientations);
        Self::new(positions, orientations, Vec::new(), metric, o_metric, beta)
    }

    /// Same graph with a different β; metrics are shared, not copied.
    pub fn with_beta(&self, beta: f64) -> Result<Self, DiscretizationError> {
        check_beta(beta)?;
        Ok(Self {
            beta,
            ..self.clone()
        })
    }

    pub fn positions(&self) -> &[Point3<f64>] {
        &self.positions
    }

    pub fn orientations(&self) -> &[UnitQuaternion<f64>] {
        &self.orientations
    }

    /// Fiber-graph adjacency; empty for graphs built from a complete metric.
    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn position_metric(&self) -> &DistanceMatrix {
        &self.position_metric
    }

    pub fn orientation_metric(&self) -> &DistanceMatrix {
        &self.orientation_metric
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn n_positions(&self) -> usize {
        self.positions.len()
    }

    pub fn n_orientations(&self) -> usize {
        self.orientations.len()
    }

    /// `|V| = l·s`.
    pub fn n_poses(&self) -> usize {
        self.positions.len() * self.orientations.len()
    }

    #[inline]
    pub fn view_pose(&self, id: usize) -> ViewPose {
        let s = self.orientations.len();
        ViewPose {
            position: id / s,
            orientation: id % s,
        }
    }

    #[inline]
    pub fn pose_id(&self, v: ViewPose) -> usize {
        v.position * self.orientations.len() + v.orientation
    }

    pub fn pose(&self, id: usize) -> Pose {
        let v = self.view_pose(id);
        Pose::new(self.positions[v.position], self.orientations[v.orientation])
    }

    /// Travel cost between two view poses.
    #[inline]
    pub fn pose_cost(&self, a: ViewPose, b: ViewPose) -> f64 {
        (1.0 - self.beta) * self.position_metric.get(a.position, b.position)
            + self.beta * self.orientation_metric.get(a.orientation, b.orientation)
    }

    /// Travel cost between two pose ids.
    #[inline]
    pub fn cost(&self, a: usize, b: usize) -> f64 {
        self.pose_cost(self.view_pose(a), self.view_pose(b))
    }
}

fn check_beta(beta: f64) -> Result<(), DiscretizationError> {
    if (0.0..=1.0).contains(&beta) {
        Ok(())
    } else {
        Err(DiscretizationError::BetaOutOfRange(beta))
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_2;

    use nalgebra::Vector3;

    use super::*;

    fn two_position_graph(beta: f64, d_t: f64) -> PoseGraph {
        let positions = vec![Point3::origin(), Point3::new(d_t, 0.0, 0.0)];
        let orientations = vec![
            UnitQuaternion::identity(),
            UnitQuaternion::from_axis_angle(&Vector3::z_axis(), FRAC_PI_2),
        ];
        PoseGraph::euclidean(positions, orientations, beta).unwrap()
    }

    #[test]
    fn beta_zero_is_pure_translation() {
        let g = two_position_graph(0.0, 2.0);
        let a = ViewPose { position: 0, orientation: 0 };
        let b = ViewPose { position: 1, orientation: 1 };
        assert_eq!(g.pose_cost(a, b), 2.0);
    }

    #[test]
    fn beta_one_is_pure_rotation() {
        let g = two_position_graph(1.0, 2.0);
        let a = ViewPose { position: 0, orientation: 0 };
        let b = ViewPose { position: 0, orientation: 1 };
        assert!((g.pose_cost(a, b) - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn weighted_mix() {
        let positions = vec![Point3::origin(), Point3::new(1.0, 0.0, 0.0)];
        let orientations = vec![
            UnitQuaternion::identity(),
            UnitQuaternion::from_axis_angle(&Vector3::x_axis(), 0.5),
        ];
        let g = PoseGraph::euclidean(positions, orientations, 0.01).unwrap();
        let c = g.pose_cost(
            ViewPose { position: 0, orientation: 0 },
            ViewPose { position: 1, orientation: 1 },
        );
        assert!((c - 0.995).abs() < 1e-12);
    }

    #[test]
    fn pose_numbering_groups_fibers() {
        let g = two_position_graph(0.5, 1.0);
        assert_eq!(g.n_poses(), 4);
        assert_eq!(g.view_pose(3), ViewPose { position: 1, orientation: 1 });
        assert_eq!(g.pose_id(ViewPose { position: 1, orientation: 0 }), 2);
        assert_eq!(g.cost(0, 0), 0.0);
    }

    #[test]
    fn invalid_beta() {
        assert!(matches!(
            PoseGraph::euclidean(vec![Point3::origin()], vec![UnitQuaternion::identity()], 1.5),
            Err(DiscretizationError::BetaOutOfRange(_))
        ));
    }
}
