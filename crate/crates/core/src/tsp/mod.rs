//! Travelling cost of a pose subset: nearest-neighbour upper bound, exact
//! dynamic programming for small subsets and the Held–Karp lower bound.
//!
//! Tours run on the metric closure of the pose graph, so revisiting graph
//! nodes between two selected poses is implicit in the shortest-path costs.

mod exact;
mod held_karp;
mod nn;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discretization::{DistanceMatrix, PoseGraph};

pub use exact::{exact_tsp, EXACT_TSP_LIMIT};
pub use held_karp::{held_karp_bound, HELD_KARP_ITERATIONS};
pub use nn::nn_tour;

/// Subsets up to this size use the exact solver under [`Estimator::Auto`].
pub const AUTO_EXACT_LIMIT: usize = 12;

#[derive(Debug, Error, PartialEq)]
pub enum TspError {
    #[error("exact TSP limited to {limit} nodes, got {size}")]
    TooLarge { size: usize, limit: usize },
    #[error("invalid cost model: {0}")]
    InvalidCostModel(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TourKind {
    NearestNeighbor,
    Exact,
    HeldKarpBound,
}

/// A tour over the nodes of a cost matrix. Bounds carry no order.
#[derive(Clone, Debug, PartialEq)]
pub struct TourEstimate {
    pub order: Vec<usize>,
    pub travel_cost: f64,
    pub kind: TourKind,
}

impl TourEstimate {
    fn empty(kind: TourKind) -> Self {
        Self {
            order: Vec::new(),
            travel_cost: 0.0,
            kind,
        }
    }
}

/// How `c(X)` is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    Nn,
    Exact,
    /// Exact up to [`AUTO_EXACT_LIMIT`] poses, nearest neighbour beyond.
    #[default]
    Auto,
}

impl std::str::FromStr for Estimator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nn" => Ok(Estimator::Nn),
            "exact" => Ok(Estimator::Exact),
            "auto" => Ok(Estimator::Auto),
            other => Err(format!("unknown estimator `{other}` (nn, exact, auto)")),
        }
    }
}

/// Whether the inspection walk returns to its start.
///
/// `Open` is evaluated as a closed tour through an extra depot node at zero
/// distance from every pose, which turns every tour routine into its
/// open-path counterpart.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum TourShape {
    #[default]
    Closed,
    Open,
}

/// `C(X) = c(X) + α·|X|` with budget `B`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    pub alpha: f64,
    pub budget: f64,
    #[serde(default)]
    pub shape: TourShape,
}

impl CostModel {
    pub fn new(alpha: f64, budget: f64) -> Result<Self, TspError> {
        let model = Self {
            alpha,
            budget,
            shape: TourShape::Closed,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn with_shape(mut self, shape: TourShape) -> Self {
        self.shape = shape;
        self
    }

    pub fn validate(&self) -> Result<(), TspError> {
        if !(self.alpha >= 0.0) || !self.alpha.is_finite() {
            return Err(TspError::InvalidCostModel(format!("alpha = {}", self.alpha)));
        }
        if !(self.budget >= 0.0) {
            return Err(TspError::InvalidCostModel(format!("budget = {}", self.budget)));
        }
        Ok(())
    }

    /// `C` from a travel cost and a subset size.
    #[inline]
    pub fn total(&self, travel: f64, size: usize) -> f64 {
        travel + self.alpha * size as f64
    }
}

/// Pairwise travel costs between the poses of `subset`, in subset order.
pub fn subset_cost_matrix(subset: &[usize], graph: &PoseGraph) -> DistanceMatrix {
    let vps: Vec<_> = subset.iter().map(|&v| graph.view_pose(v)).collect();
    DistanceMatrix::from_fn(vps.len(), |i, j| {
        if i == j {
            0.0
        } else {
            graph.pose_cost(vps[i], vps[j])
        }
    })
}

fn with_depot(d: &DistanceMatrix) -> DistanceMatrix {
    DistanceMatrix::from_fn(d.dim() + 1, |i, j| {
        if i == 0 || j == 0 {
            0.0
        } else {
            d.get(i - 1, j - 1)
        }
    })
}

fn strip_depot(mut tour: TourEstimate) -> TourEstimate {
    if let Some(at) = tour.order.iter().position(|&v| v == 0) {
        tour.order.rotate_left(at);
        tour.order.remove(0);
    }
    tour.order.iter_mut().for_each(|v| *v -= 1);
    tour
}

/// Tour over a cost matrix by the chosen estimator.
pub fn tour(d: &DistanceMatrix, shape: TourShape, estimator: Estimator) -> TourEstimate {
    let use_exact = match estimator {
        Estimator::Nn => false,
        Estimator::Exact => true,
        Estimator::Auto => d.dim() <= AUTO_EXACT_LIMIT,
    };
    let solve = |m: &DistanceMatrix| {
        if use_exact {
            // Oversized exact requests fall back to nearest neighbour.
            exact_tsp(m).unwrap_or_else(|_| nn_tour(m))
        } else {
            nn_tour(m)
        }
    };
    match shape {
        TourShape::Closed => solve(d),
        TourShape::Open if d.dim() == 0 => solve(d),
        TourShape::Open => strip_depot(solve(&with_depot(d))),
    }
}

/// Held–Karp lower bound on `c(X)` for the given tour shape.
pub fn travel_lower_bound(d: &DistanceMatrix, shape: TourShape, iterations: usize) -> f64 {
    match shape {
        TourShape::Closed => held_karp_bound(d, iterations),
        TourShape::Open if d.dim() <= 1 => 0.0,
        TourShape::Open => held_karp_bound(&with_depot(d), iterations),
    }
}

/// Travel cost `c(X)` over a pose subset.
pub fn travel_cost(
    subset: &[usize],
    graph: &PoseGraph,
    shape: TourShape,
    estimator: Estimator,
) -> f64 {
    if subset.len() <= 1 {
        return 0.0;
    }
    let use_nn = match estimator {
        Estimator::Nn => true,
        Estimator::Exact => false,
        Estimator::Auto => subset.len() > AUTO_EXACT_LIMIT,
    };
    if use_nn {
        nn_travel_cost(subset, graph, shape)
    } else {
        tour(&subset_cost_matrix(subset, graph), shape, estimator).travel_cost
    }
}

/// Nearest-neighbour travel cost without materialising the cost matrix.
pub fn nn_travel_cost(subset: &[usize], graph: &PoseGraph, shape: TourShape) -> f64 {
    thread_local! {
        static SCRATCH: std::cell::RefCell<Vec<bool>> = const { std::cell::RefCell::new(Vec::new()) };
    }
    SCRATCH.with(|s| {
        let mut visited = s.borrow_mut();
        match shape {
            TourShape::Closed => nn::nn_cost_with(subset, |a, b| graph.cost(a, b), &mut visited),
            TourShape::Open => {
                // Depot at zero distance: the closing edge back to the first pose vanishes.
                let first = subset.first().copied();
                nn::nn_cost_with(
                    subset,
                    |a, b| {
                        if Some(b) == first && a != b {
                            0.0
                        } else {
                            graph.cost(a, b)
                        }
                    },
                    &mut visited,
                )
            }
        }
    })
}

/// `C(X) = c(X) + α·|X|`; `C(∅) = 0`.
pub fn walk_cost(
    subset: &[usize],
    graph: &PoseGraph,
    model: &CostModel,
    estimator: Estimator,
) -> f64 {
    if subset.is_empty() {
        return 0.0;
    }
    model.total(travel_cost(subset, graph, model.shape, estimator), subset.len())
}

/// Visiting order of a subset (as pose ids) together with its travel cost.
pub fn walk_order(
    subset: &[usize],
    graph: &PoseGraph,
    shape: TourShape,
    estimator: Estimator,
) -> (Vec<usize>, f64) {
    let t = tour(&subset_cost_matrix(subset, graph), shape, estimator);
    (t.order.iter().map(|&i| subset[i]).collect(), t.travel_cost)
}

#[cfg(test)]
mod tests {
    use nalgebra::{Point3, UnitQuaternion};

    use super::*;

    fn line_graph() -> PoseGraph {
        let positions = (0..4).map(|i| Point3::new(i as f64, 0.0, 0.0)).collect();
        PoseGraph::euclidean(positions, vec![UnitQuaternion::identity()], 0.0).unwrap()
    }

    #[test]
    fn walk_cost_basics() {
        let g = line_graph();
        let model = CostModel::new(0.05, 10.0).unwrap();
        assert_eq!(walk_cost(&[], &g, &model, Estimator::Auto), 0.0);
        assert_eq!(walk_cost(&[2], &g, &model, Estimator::Auto), 0.05);
        let c = walk_cost(&[0, 3], &g, &model, Estimator::Auto);
        assert!((c - (6.0 + 0.1)).abs() < 1e-12);
    }

    #[test]
    fn subset_matrix_shapes() {
        let g = line_graph();
        assert_eq!(subset_cost_matrix(&[1], &g).as_slice(), &[0.0]);
        let m = subset_cost_matrix(&[0, 2], &g);
        assert_eq!(m.as_slice(), &[0.0, 2.0, 2.0, 0.0]);
    }

    #[test]
    fn open_walk_drops_the_return_leg() {
        let g = line_graph();
        let subset = [0, 3, 1, 2];
        for est in [Estimator::Nn, Estimator::Exact] {
            assert!((travel_cost(&subset, &g, TourShape::Open, est) - 3.0).abs() < 1e-12);
            assert!((travel_cost(&subset, &g, TourShape::Closed, est) - 6.0).abs() < 1e-12);
        }
        let d = subset_cost_matrix(&subset, &g);
        assert!(travel_lower_bound(&d, TourShape::Open, 100) <= 3.0 + 1e-9);
        let (order, cost) = walk_order(&subset, &g, TourShape::Open, Estimator::Exact);
        assert_eq!(order.len(), 4);
        assert!((cost - 3.0).abs() < 1e-12);
    }

    #[test]
    fn nn_fast_path_matches_matrix_version() {
        let g = line_graph();
        let subset = [2, 0, 3, 1];
        let d = subset_cost_matrix(&subset, &g);
        for shape in [TourShape::Closed, TourShape::Open] {
            let fast = nn_travel_cost(&subset, &g, shape);
            let slow = tour(&d, shape, Estimator::Nn).travel_cost;
            assert!((fast - slow).abs() < 1e-12, "{shape:?}: {fast} vs {slow}");
        }
    }

    #[test]
    fn estimator_parsing() {
        assert_eq!("auto".parse::<Estimator>().unwrap(), Estimator::Auto);
        assert!("fast".parse::<Estimator>().is_err());
    }
}
