// Cost-benefit planning on a small synthetic instance: the greedy trace,
// the bound on the optimum and the swap improvement.

use inspection_planner::discretization::{sample_orientations, PoseGraph};
use inspection_planner::planner::{gcb, gcb_plus, greedy_baseline, opt_bound, Problem};
use inspection_planner::quality::{total_quality, QualityMatrix};
use inspection_planner::tsp::CostModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let positions = (0..20)
        .map(|_| [rng.random_range(0.0..4.0), rng.random_range(0.0..4.0), 1.0].into())
        .collect();
    let graph = PoseGraph::euclidean(positions, sample_orientations(4, 1)?, 0.1)?;
    let columns: Vec<Vec<f64>> = (0..graph.n_poses())
        .map(|_| {
            (0..60)
                .map(|_| if rng.random_bool(0.15) { rng.random() } else { 0.0 })
                .collect()
        })
        .collect();
    let q = QualityMatrix::from_dense_columns(60, &columns)?;
    let problem = Problem::new(&q, &graph, CostModel::new(0.1, 6.0)?)?;

    let run = gcb(&problem);
    for (k, s) in run.trace.steps.iter().enumerate() {
        println!("X_{:<2} + pose {:>2}  f = {:.3}  C = {:.3}", k + 1, s.pose, s.quality, s.cost);
    }
    let bound = opt_bound(&run.trace, problem.budget());
    let f_gcb = total_quality(&run.solution, &q);
    println!("gcb: {} poses, f = {f_gcb:.3}, OPT <= {:.3}", run.solution.len(), bound.value);

    let (plus, stats) = gcb_plus(&problem, &run.solution);
    let f_plus = total_quality(&plus, &q);
    println!(
        "gcb+: f = {f_plus:.3} after {} sweeps and {} replacements, C = {:.3}",
        stats.sweeps,
        stats.replacements,
        problem.walk_cost(&plus)
    );
    let greedy = greedy_baseline(&problem);
    println!("greedy: f = {:.3}", total_quality(&greedy, &q));
    assert!(f_plus >= f_gcb);
    Ok(())
}

fn main() {
    run_example().expect("gcb planning example");
}
