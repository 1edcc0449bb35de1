// Candidate view positions around a part and the pose graph over them.

use inspection_planner::discretization::{sample_orientations, PoseGraph, ReachabilitySpec};
use inspection_planner::geometry::{inflated_hull_grid, TriangleMesh};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let part = TriangleMesh::cuboid([0.0, 0.0, 0.0].into(), [0.3, 0.3, 0.2].into());
    let grid = inflated_hull_grid(&part, 0.2, 0.1)?;
    println!("{} grid positions within 0.2 m of the hull", grid.len());

    // Views must stay above the table the part rests on.
    let table = ReachabilitySpec::HalfSpace { axis: 2, offset: 0.05 };
    let orientations = sample_orientations(8, 3)?;
    let (graph, outcome) = PoseGraph::from_grid(&grid, 0.1, orientations, 0.05, &table)?;
    println!(
        "{} reachable positions ({} disconnected), {} orientations, {} poses",
        graph.n_positions(),
        outcome.disconnected,
        graph.n_orientations(),
        graph.n_poses()
    );

    let (a, b) = (0, graph.n_poses() - 1);
    let pa = graph.pose(a).position;
    let pb = graph.pose(b).position;
    println!(
        "pose {a} -> pose {b}: straight line {:.3} m, graph cost {:.3}",
        (pa - pb).norm(),
        graph.cost(a, b)
    );
    assert!(graph.cost(a, b) >= (pa - pb).norm() - 1e-9);
    Ok(())
}

fn main() {
    run_example().expect("view grid example");
}
