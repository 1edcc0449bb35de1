// Visibility, frustum and quality rate combined into the sparse quality
// matrix, and the max-accumulated objective over a few poses.

use inspection_planner::discretization::{sample_orientations, PoseGraph, ReachabilitySpec};
use inspection_planner::geometry::{inflated_hull_grid, sample_surface, Frustum, RayCaster, TriangleMesh};
use inspection_planner::quality::{build_quality_matrix, total_quality, ObjectiveState, QualityRateFunction};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let part = TriangleMesh::cuboid([0.0, 0.0, 0.0].into(), [0.3, 0.3, 0.2].into());
    let points = sample_surface(&part, 200, 5)?;
    let grid = inflated_hull_grid(&part, 0.2, 0.1)?;
    let (graph, _) = PoseGraph::from_grid(
        &grid,
        0.1,
        sample_orientations(8, 9)?,
        0.05,
        &ReachabilitySpec::All,
    )?;

    let caster = RayCaster::new(&part);
    let frustum = Frustum::new(60.0)?;
    for rate in [
        QualityRateFunction::coverage(80.0),
        QualityRateFunction::projected_area(0.05),
    ] {
        let (q, stats) = build_quality_matrix(&points, &graph, &caster, &frustum, &rate)?;
        println!(
            "{rate:?}: {} x {} matrix, {} nonzeros, {} ray casts",
            q.rows(),
            q.cols(),
            q.nnz(),
            stats.ray_casts
        );

        let mut best: Vec<usize> = (0..q.cols()).collect();
        best.sort_by(|&a, &b| total_quality(&[b], &q).total_cmp(&total_quality(&[a], &q)));
        let mut state = ObjectiveState::for_matrix(&q);
        for &pose in &best[..3] {
            let gain = state.apply(&q, pose);
            println!("  add pose {pose}: gain {gain:.4}, f = {:.4}", state.total());
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("quality matrix example");
}
