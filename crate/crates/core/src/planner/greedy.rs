use rayon::prelude::*;

use super::{Problem, ReachCache};
use crate::quality::ObjectiveState;

/// Coverage-first baseline: add the pose of largest marginal gain, ignoring
/// travel, until the tour through the selection exceeds the budget; the pose
/// that broke the budget is dropped.
pub fn greedy_baseline(problem: &Problem<'_>) -> Vec<usize> {
    let q = problem.quality();
    let n = problem.n_poses();
    let mut reach = ReachCache::new(n);
    let mut state = ObjectiveState::for_matrix(q);
    let mut in_set = vec![false; n];
    let mut x = Vec::new();

    loop {
        let mut scored: Vec<(f64, usize)> = (0..n)
            .into_par_iter()
            .filter(|&v| !in_set[v] && !reach.is_rejected(v))
            .filter_map(|v| {
                let gain = state.marginal_gain(q, v);
                (gain > 0.0).then_some((gain, v))
            })
            .collect();
        scored.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let Some(&(_, chosen)) = scored.iter().find(|c| reach.check(problem, c.1)) else {
            break;
        };
        x.push(chosen);
        if problem.walk_cost(&x) > problem.budget() {
            x.pop();
            break;
        }
        in_set[chosen] = true;
        state.apply(q, chosen);
    }
    if x.is_empty() {
        log::warn!("greedy baseline found no feasible nonempty solution");
    }
    x
}
