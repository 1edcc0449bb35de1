use std::cmp::Ordering;

/// A replacement candidate with its marginal gain `Δf` w.r.t. `X⁻`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LazyCandidate {
    pub pose: usize,
    pub gain: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LazyOutcome {
    pub pose: Option<usize>,
    pub bound_evaluations: usize,
    pub exact_evaluations: usize,
}

fn by_gain(a: &LazyCandidate, b: &LazyCandidate) -> Ordering {
    b.gain.total_cmp(&a.gain).then(a.pose.cmp(&b.pose))
}

/// Best affordable candidate by gain, evaluating costs only as needed.
///
/// Candidates are taken in order of decreasing gain (ties to the lower
/// pose). One whose lower bound on `C(X⁻ ∪ {v})` exceeds the budget is
/// discarded without computing its policy cost; otherwise the policy cost
/// decides. The first affordable candidate wins.
///
/// `lower_bound` may be a precomputed lookup or computed on demand; it is
/// only called for candidates reached by the scan.
pub fn lazy_argmax(
    candidates: &[LazyCandidate],
    budget: f64,
    mut lower_bound: impl FnMut(usize) -> f64,
    mut exact_cost: impl FnMut(usize) -> f64,
) -> LazyOutcome {
    let mut order = candidates.to_vec();
    order.sort_by(by_gain);
    let mut outcome = LazyOutcome::default();
    for c in order {
        outcome.bound_evaluations += 1;
        if lower_bound(c.pose) > budget {
            continue;
        }
        outcome.exact_evaluations += 1;
        if exact_cost(c.pose) <= budget {
            outcome.pose = Some(c.pose);
            return outcome;
        }
    }
    outcome
}

/// Reference for [`lazy_argmax`]: policy cost of every candidate, then the
/// affordable one of maximal gain.
pub fn exhaustive_argmax(
    candidates: &[LazyCandidate],
    budget: f64,
    mut exact_cost: impl FnMut(usize) -> f64,
) -> LazyOutcome {
    let mut best: Option<LazyCandidate> = None;
    for c in candidates {
        if exact_cost(c.pose) <= budget
            && best.is_none_or(|b| by_gain(c, &b) == Ordering::Less)
        {
            best = Some(*c);
        }
    }
    LazyOutcome {
        pose: best.map(|b| b.pose),
        bound_evaluations: 0,
        exact_evaluations: candidates.len(),
    }
}
