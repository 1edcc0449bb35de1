use super::{PlannerError, Problem};
use crate::quality::total_quality;
use crate::tsp::{self, Estimator};

/// Largest pose set accepted by [`brute_force_optimum`].
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Exhaustive optimum over all reachable pose subsets with exact tour costs.
///
/// Subsets are visited in order of decreasing `f` (ties by subset bitmask),
/// so the first affordable one is optimal and most tour costs are never
/// computed.
pub fn brute_force_optimum(problem: &Problem<'_>) -> Result<(Vec<usize>, f64), PlannerError> {
    let n = problem.n_poses();
    if n > BRUTE_FORCE_LIMIT {
        return Err(PlannerError::TooLarge {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let reachable: Vec<usize> = (0..n)
        .filter(|&v| problem.reach().pose_reachable(&problem.graph().pose(v)))
        .collect();
    let subset_of = |mask: usize| -> Vec<usize> {
        reachable
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    };

    let mut ranked: Vec<(f64, usize)> = (0..1usize << reachable.len())
        .map(|mask| (total_quality(&subset_of(mask), problem.quality()), mask))
        .collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    for (f, mask) in ranked {
        let subset = subset_of(mask);
        let cost = tsp::walk_cost(&subset, problem.graph(), problem.cost_model(), Estimator::Exact);
        if cost <= problem.budget() {
            return Ok((subset, f));
        }
    }
    Ok((Vec::new(), 0.0))
}
