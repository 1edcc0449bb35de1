use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{NnPath, Problem, ReachCache};
use crate::quality::ObjectiveState;

/// One partial solution `X_k` of a greedy run: the pose added at step `k`
/// and `f`, `c`, `C` of the set after adding it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub pose: usize,
    pub quality: f64,
    pub travel: f64,
    pub cost: f64,
}

/// Partial solutions `X_1, …, X_{t+1}`. When `violated` is set the last
/// step is the first one over budget; otherwise the run ran out of useful
/// candidates before reaching the budget.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolutionTrace {
    pub steps: Vec<TraceStep>,
    pub violated: bool,
}

impl SolutionTrace {
    /// Poses of `X_k`.
    pub fn subset(&self, k: usize) -> Vec<usize> {
        self.steps[..k].iter().map(|s| s.pose).collect()
    }

    /// Number of feasible steps `t`.
    pub fn feasible_len(&self) -> usize {
        self.steps.len() - usize::from(self.violated)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GcbOutcome {
    pub solution: Vec<usize>,
    pub trace: SolutionTrace,
    pub rejected_poses: usize,
}

/// Candidate ordering: larger ratio, then larger gain, then lower pose.
fn better(a: (f64, f64, usize), b: (f64, f64, usize)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && (a.1 > b.1 || (a.1 == b.1 && a.2 < b.2)))
}

/// Generalized cost-benefit greedy.
///
/// Each step adds the pose maximising `Δf / ΔČ` where `ΔČ` is the change
/// of the nearest-neighbour tour cost plus `α`, until `C(X) > B`. The
/// violating pose is dropped from the returned solution but kept in the
/// trace.
pub fn gcb(problem: &Problem<'_>) -> GcbOutcome {
    let q = problem.quality();
    let n = problem.n_poses();
    let alpha = problem.cost_model().alpha;
    let budget = problem.budget();
    let mut reach = ReachCache::new(n);
    let mut state = ObjectiveState::for_matrix(q);
    let mut path = NnPath::new(problem.graph(), problem.cost_model().shape);
    let mut in_set = vec![false; n];
    let mut trace = SolutionTrace::default();

    loop {
        let base = path.travel();
        let mut scored: Vec<(f64, f64, usize)> = (0..n)
            .into_par_iter()
            .filter(|&v| !in_set[v] && !reach.is_rejected(v))
            .filter_map(|v| {
                let gain = state.marginal_gain(q, v);
                if gain <= 0.0 {
                    return None;
                }
                let delta = path.travel_with(v) - base + alpha;
                let ratio = if delta <= 0.0 {
                    f64::INFINITY
                } else {
                    gain / delta
                };
                Some((ratio, gain, v))
            })
            .collect();
        scored.sort_unstable_by(|a, b| {
            if better(*a, *b) {
                std::cmp::Ordering::Less
            } else if better(*b, *a) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        });
        let Some(&(_, _, chosen)) = scored.iter().find(|c| reach.check(problem, c.2)) else {
            break;
        };

        in_set[chosen] = true;
        state.apply(q, chosen);
        path.push(chosen);
        let subset = path.nodes();
        let travel = problem.travel(subset);
        let cost = problem.cost_model().total(travel, subset.len());
        trace.steps.push(TraceStep {
            pose: chosen,
            quality: state.total(),
            travel,
            cost,
        });
        if cost > budget {
            trace.violated = true;
            break;
        }
    }

    let solution = trace.subset(trace.feasible_len());
    if solution.is_empty() {
        log::warn!("gcb found no feasible nonempty solution");
    }
    GcbOutcome {
        solution,
        trace,
        rejected_poses: reach.rejected,
    }
}
