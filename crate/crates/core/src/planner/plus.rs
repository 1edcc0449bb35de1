use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{lazy_argmax, LazyCandidate, Problem, ReachCache, QUALITY_EPS};
use crate::quality::{total_quality, ObjectiveState};
use crate::tsp::TourShape;

/// Safety cap on improvement sweeps.
const MAX_SWEEPS: usize = 1000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlusStats {
    pub sweeps: usize,
    pub replacements: usize,
    pub bound_evaluations: usize,
    pub exact_evaluations: usize,
    pub rejected_poses: usize,
}

/// Swap improvement of a feasible solution by benefit alone.
///
/// Each element `x` of `X` in turn is taken out, and the pose of largest
/// gain w.r.t. `X \ {x}` that keeps the set affordable takes its slot
/// (possibly `x` itself). Sweeps repeat until one raises `f` by no more
/// than [`QUALITY_EPS`].
pub fn gcb_plus(problem: &Problem<'_>, initial: &[usize]) -> (Vec<usize>, PlusStats) {
    let q = problem.quality();
    let graph = problem.graph();
    let model = *problem.cost_model();
    let budget = problem.budget();
    let n = problem.n_poses();
    let mut reach = ReachCache::new(n);
    let mut stats = PlusStats::default();
    let mut x = initial.to_vec();
    if x.is_empty() {
        return (x, stats);
    }

    let mut f = total_quality(&x, q);
    loop {
        if stats.sweeps == MAX_SWEEPS {
            log::warn!("gcb+ stopped after {MAX_SWEEPS} sweeps");
            break;
        }
        stats.sweeps += 1;
        let before = f;
        for i in 0..x.len() {
            let removed = x[i];
            let mut minus = x.clone();
            minus.remove(i);
            let state = ObjectiveState::from_poses(q, &minus);
            let mut in_minus = vec![false; n];
            minus.iter().for_each(|&v| in_minus[v] = true);

            let candidates: Vec<LazyCandidate> = (0..n)
                .into_par_iter()
                .filter(|&v| !in_minus[v] && !reach.is_rejected(v))
                .map(|v| LazyCandidate {
                    pose: v,
                    gain: state.marginal_gain(q, v),
                })
                .collect();

            let with = |v: usize| {
                let mut s = minus.clone();
                s.insert(i, v);
                s
            };
            // Tours through X⁻ ∪ {v} cost at least the optimal tour through
            // X⁻ and at least the round trip to the farthest member of X⁻.
            // Held–Karp refines this only where the policy cost is the exact
            // solver; a nearest-neighbour cost is cheaper than the bound.
            let use_held_karp = problem.policy_is_exact(minus.len() + 1);
            let members: Vec<_> = minus.iter().map(|&u| graph.view_pose(u)).collect();
            let base_bound = if use_held_karp {
                problem.walk_lower_bound(&minus) + model.alpha
            } else {
                0.0
            };
            let legs = match model.shape {
                TourShape::Closed => 2.0,
                TourShape::Open => 1.0,
            };
            let size_cost = model.alpha * (minus.len() + 1) as f64;
            let lower_bound = |v: usize| {
                let vp = graph.view_pose(v);
                let far = members
                    .iter()
                    .map(|&u| graph.pose_cost(u, vp))
                    .fold(0.0, f64::max);
                let cheap = base_bound.max(legs * far + size_cost);
                if cheap > budget || !use_held_karp {
                    cheap
                } else {
                    problem.walk_lower_bound(&with(v))
                }
            };
            let exact_cost = |v: usize| {
                if !reach.check(problem, v) {
                    return f64::INFINITY;
                }
                problem.walk_cost(&with(v))
            };
            let outcome = lazy_argmax(&candidates, budget, lower_bound, exact_cost);
            stats.bound_evaluations += outcome.bound_evaluations;
            stats.exact_evaluations += outcome.exact_evaluations;
            match outcome.pose {
                Some(v) => {
                    if v != removed {
                        stats.replacements += 1;
                    }
                    x[i] = v;
                }
                None => {
                    log::warn!("gcb+ found no affordable pose for slot {i}, keeping pose {removed}");
                }
            }
        }
        f = total_quality(&x, q);
        if f - before <= QUALITY_EPS {
            break;
        }
    }
    stats.rejected_poses = reach.rejected;
    (x, stats)
}

#[cfg(test)]
mod tests {
    use nalgebra::{Point3, UnitQuaternion};

    use super::*;
    use crate::discretization::PoseGraph;
    use crate::quality::QualityMatrix;
    use crate::tsp::CostModel;

    fn line(xs: &[f64]) -> PoseGraph {
        let positions = xs.iter().map(|&x| Point3::new(x, 0.0, 0.0)).collect();
        PoseGraph::euclidean(positions, vec![UnitQuaternion::identity()], 0.0).unwrap()
    }

    #[test]
    fn swaps_in_a_better_pose() {
        // Pose 2 sees twice as much as pose 1 and is just as affordable.
        let g = line(&[0.0, 1.0, 1.0]);
        let q = QualityMatrix::from_dense_columns(
            2,
            &[vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 2.0]],
        )
        .unwrap();
        let p = Problem::new(&q, &g, CostModel::new(0.0, 2.0).unwrap()).unwrap();
        let (x, stats) = gcb_plus(&p, &[0, 1]);
        assert_eq!(x, vec![0, 2]);
        assert_eq!(stats.replacements, 1);
        assert_eq!(stats.sweeps, 2);
    }

    #[test]
    fn optimal_input_is_a_fixed_point() {
        let g = line(&[0.0, 1.0, 5.0]);
        let q = QualityMatrix::from_dense_columns(
            2,
            &[vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 0.5]],
        )
        .unwrap();
        let p = Problem::new(&q, &g, CostModel::new(0.0, 2.0).unwrap()).unwrap();
        let (x, stats) = gcb_plus(&p, &[0, 1]);
        assert_eq!(x, vec![0, 1]);
        assert_eq!(stats.sweeps, 1);
        assert_eq!(stats.replacements, 0);
    }
}
