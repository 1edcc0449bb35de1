//! Budgeted inspection planning: the generalized cost-benefit greedy (GCB),
//! the benefit-only swap improvement (GCB+), the coverage-first greedy
//! baseline and the per-instance upper bound OPT derived from the GCB trace.
//!
//! Every returned solution respects `C(X) ≤ B` under the problem's
//! estimator policy. The planner does not check that the robot can execute
//! the final tour between poses; callers validate the reported tour
//! externally.

mod bound;
mod brute;
mod gcb;
mod greedy;
mod incremental;
mod lazy;
mod plus;
mod report;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discretization::{AllReachable, PoseGraph, ReachabilityPredicate};
use crate::quality::QualityMatrix;
use crate::tsp::{self, CostModel, Estimator, HELD_KARP_ITERATIONS};

pub use bound::{opt_bound, OptBound, ONE_MINUS_INV_E};
pub use brute::{brute_force_optimum, BRUTE_FORCE_LIMIT};
pub use gcb::{gcb, GcbOutcome, SolutionTrace, TraceStep};
pub use greedy::greedy_baseline;
pub use incremental::NnPath;
pub use lazy::{exhaustive_argmax, lazy_argmax, LazyCandidate, LazyOutcome};
pub use plus::{gcb_plus, PlusStats};
pub use report::{plan, AlgorithmResult, PlanReport};

/// Quality changes at or below this are treated as no change.
pub const QUALITY_EPS: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum PlannerError {
    #[error("quality matrix has {quality} columns but the pose graph has {graph} poses")]
    DimensionMismatch { quality: usize, graph: usize },
    #[error(transparent)]
    Cost(#[from] tsp::TspError),
    #[error("brute force limited to {limit} poses, got {size}")]
    TooLarge { size: usize, limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, JsonSchema)]
pub enum Algorithm {
    #[serde(rename = "greedy")]
    Greedy,
    #[serde(rename = "greedy+")]
    GreedyPlus,
    #[serde(rename = "gcb")]
    Gcb,
    #[serde(rename = "gcb+")]
    GcbPlus,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Greedy,
        Algorithm::GreedyPlus,
        Algorithm::Gcb,
        Algorithm::GcbPlus,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::GreedyPlus => "greedy+",
            Algorithm::Gcb => "gcb",
            Algorithm::GcbPlus => "gcb+",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}` (greedy, greedy+, gcb, gcb+)"))
    }
}

static ALL_REACHABLE: AllReachable = AllReachable;

/// One submodular orienteering instance: maximise `f(X)` subject to
/// `C(X) ≤ B`.
#[derive(Clone, Copy)]
pub struct Problem<'a> {
    quality: &'a QualityMatrix,
    graph: &'a PoseGraph,
    cost: CostModel,
    reach: &'a dyn ReachabilityPredicate,
    estimator: Estimator,
    hk_iterations: usize,
}

impl<'a> Problem<'a> {
    pub fn new(
        quality: &'a QualityMatrix,
        graph: &'a PoseGraph,
        cost: CostModel,
    ) -> Result<Self, PlannerError> {
        if quality.cols() != graph.n_poses() {
            return Err(PlannerError::DimensionMismatch {
                quality: quality.cols(),
                graph: graph.n_poses(),
            });
        }
        cost.validate()?;
        Ok(Self {
            quality,
            graph,
            cost,
            reach: &ALL_REACHABLE,
            estimator: Estimator::Auto,
            hk_iterations: HELD_KARP_ITERATIONS,
        })
    }

    pub fn with_reachability(mut self, reach: &'a dyn ReachabilityPredicate) -> Self {
        self.reach = reach;
        self
    }

    pub fn with_estimator(mut self, estimator: Estimator) -> Self {
        self.estimator = estimator;
        self
    }

    pub fn with_hk_iterations(mut self, iterations: usize) -> Self {
        self.hk_iterations = iterations;
        self
    }

    pub fn quality(&self) -> &'a QualityMatrix {
        self.quality
    }

    pub fn graph(&self) -> &'a PoseGraph {
        self.graph
    }

    pub fn cost_model(&self) -> &CostModel {
        &self.cost
    }

    pub fn budget(&self) -> f64 {
        self.cost.budget
    }

    pub fn estimator(&self) -> Estimator {
        self.estimator
    }

    pub fn n_poses(&self) -> usize {
        self.quality.cols()
    }

    /// `c(X)` under the estimator policy.
    pub fn travel(&self, subset: &[usize]) -> f64 {
        tsp::travel_cost(subset, self.graph, self.cost.shape, self.estimator)
    }

    /// `C(X)` under the estimator policy.
    pub fn walk_cost(&self, subset: &[usize]) -> f64 {
        tsp::walk_cost(subset, self.graph, &self.cost, self.estimator)
    }

    /// Whether `C` of a subset of this size is evaluated by the exact solver.
    pub fn policy_is_exact(&self, size: usize) -> bool {
        match self.estimator {
            Estimator::Nn => false,
            Estimator::Exact => size <= tsp::EXACT_TSP_LIMIT,
            Estimator::Auto => size <= tsp::AUTO_EXACT_LIMIT,
        }
    }

    /// Held–Karp lower bound on `C(X)`.
    pub fn walk_lower_bound(&self, subset: &[usize]) -> f64 {
        if subset.is_empty() {
            return 0.0;
        }
        let d = tsp::subset_cost_matrix(subset, self.graph);
        self.cost.total(
            tsp::travel_lower_bound(&d, self.cost.shape, self.hk_iterations),
            subset.len(),
        )
    }

    pub(crate) fn reach(&self) -> &dyn ReachabilityPredicate {
        self.reach
    }
}

/// Lazily evaluated pose reachability; a rejected pose stays rejected for
/// the rest of the run.
pub(crate) struct ReachCache {
    state: Vec<u8>,
    pub rejected: usize,
}

impl ReachCache {
    const UNKNOWN: u8 = 0;
    const REACHABLE: u8 = 1;
    const REJECTED: u8 = 2;

    pub fn new(n: usize) -> Self {
        Self {
            state: vec![Self::UNKNOWN; n],
            rejected: 0,
        }
    }

    pub fn is_rejected(&self, pose: usize) -> bool {
        self.state[pose] == Self::REJECTED
    }

    pub fn check(&mut self, problem: &Problem<'_>, pose: usize) -> bool {
        match self.state[pose] {
            Self::REACHABLE => true,
            Self::REJECTED => false,
            _ => {
                let ok = problem.reach().pose_reachable(&problem.graph().pose(pose));
                if ok {
                    self.state[pose] = Self::REACHABLE;
                } else {
                    self.state[pose] = Self::REJECTED;
                    self.rejected += 1;
                    log::debug!("pose {pose} rejected by the reachability check");
                }
                ok
            }
        }
    }
}
