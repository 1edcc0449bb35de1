use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{gcb, gcb_plus, greedy_baseline, opt_bound, Algorithm, OptBound, PlusStats, Problem, SolutionTrace};
use crate::quality::total_quality;
use crate::tsp;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmResult {
    pub algorithm: Algorithm,
    /// Selected poses in selection order.
    pub poses: Vec<usize>,
    /// The same poses in visiting order. Executability of the legs between
    /// them is not checked here.
    pub tour: Vec<usize>,
    pub quality: f64,
    pub travel: f64,
    pub cost: f64,
    /// `f(X) / OPT`, 0 when OPT is 0.
    pub ratio: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub improvement: Option<PlusStats>,
    /// Wall time in seconds including the runs this one builds on.
    #[serde(skip)]
    pub runtime: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanReport {
    pub budget: f64,
    pub opt: OptBound,
    pub gcb_trace: SolutionTrace,
    pub results: Vec<AlgorithmResult>,
    pub warnings: Vec<String>,
}

impl PlanReport {
    pub fn result(&self, algorithm: Algorithm) -> Option<&AlgorithmResult> {
        self.results.iter().find(|r| r.algorithm == algorithm)
    }
}

fn describe(
    problem: &Problem<'_>,
    algorithm: Algorithm,
    poses: Vec<usize>,
    opt: f64,
    runtime: f64,
    warnings: &mut Vec<String>,
) -> AlgorithmResult {
    let quality = total_quality(&poses, problem.quality());
    let (tour, travel) = if poses.is_empty() {
        (Vec::new(), 0.0)
    } else {
        tsp::walk_order(&poses, problem.graph(), problem.cost_model().shape, problem.estimator())
    };
    let cost = if poses.is_empty() {
        0.0
    } else {
        problem.cost_model().total(travel, poses.len())
    };
    let ratio = if opt > 0.0 { quality / opt } else { 0.0 };
    if ratio > 1.0 {
        warnings.push(format!("{algorithm}: f/OPT = {ratio} exceeds 1"));
    }
    if cost > problem.budget() {
        warnings.push(format!("{algorithm}: cost {cost} exceeds the budget"));
    }
    AlgorithmResult {
        algorithm,
        poses,
        tour,
        quality,
        travel,
        cost,
        ratio,
        improvement: None,
        runtime,
    }
}

/// Run the requested algorithms on one problem and rate them against OPT.
///
/// GCB always runs since OPT comes from its trace.
pub fn plan(problem: &Problem<'_>, algorithms: &[Algorithm]) -> PlanReport {
    let wants = |a: Algorithm| algorithms.contains(&a);
    let mut warnings = Vec::new();

    let start = Instant::now();
    let gcb_out = gcb(problem);
    let gcb_time = start.elapsed().as_secs_f64();
    let opt = opt_bound(&gcb_out.trace, problem.budget());
    warnings.extend(opt.warnings.iter().cloned());

    let mut results = Vec::new();
    let mut greedy_run = None;
    for &algorithm in &Algorithm::ALL {
        if !wants(algorithm) {
            continue;
        }
        let (poses, runtime, improvement) = match algorithm {
            Algorithm::Gcb => (gcb_out.solution.clone(), gcb_time, None),
            Algorithm::GcbPlus => {
                let start = Instant::now();
                let (x, stats) = gcb_plus(problem, &gcb_out.solution);
                (x, gcb_time + start.elapsed().as_secs_f64(), Some(stats))
            }
            Algorithm::Greedy | Algorithm::GreedyPlus => {
                let (base, base_time) = greedy_run.get_or_insert_with(|| {
                    let start = Instant::now();
                    let x = greedy_baseline(problem);
                    (x, start.elapsed().as_secs_f64())
                });
                if algorithm == Algorithm::Greedy {
                    (base.clone(), *base_time, None)
                } else {
                    let start = Instant::now();
                    let (x, stats) = gcb_plus(problem, base);
                    (x, *base_time + start.elapsed().as_secs_f64(), Some(stats))
                }
            }
        };
        let mut result = describe(problem, algorithm, poses, opt.value, runtime, &mut warnings);
        result.improvement = improvement;
        results.push(result);
    }
    for w in &warnings {
        log::warn!("{w}");
    }

    PlanReport {
        budget: problem.budget(),
        opt,
        gcb_trace: gcb_out.trace,
        results,
        warnings,
    }
}
