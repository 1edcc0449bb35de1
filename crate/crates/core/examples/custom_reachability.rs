// Plug a robot-specific reachability test into planning.

use inspection_planner::discretization::{FnReachability, PoseGraph};
use inspection_planner::geometry::Pose;
use inspection_planner::planner::{plan, Algorithm, Problem};
use inspection_planner::quality::QualityMatrix;
use inspection_planner::tsp::CostModel;
use nalgebra::{Point3, UnitQuaternion};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let positions = (0..6).map(|i| Point3::new(i as f64 * 0.5, 0.0, 0.0)).collect();
    let graph = PoseGraph::euclidean(positions, vec![UnitQuaternion::identity()], 0.0)?;
    let q = QualityMatrix::from_dense_columns(
        3,
        &[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 3.0],
            vec![0.0, 0.5, 0.0],
            vec![0.2, 0.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ],
    )?;
    // The arm cannot get past x = 0.9 and cannot look backwards.
    let arm = FnReachability {
        position: |p: &Point3<f64>| p.x < 0.9,
        pose: |pose: &Pose| pose.optical_axis().x > -0.5,
    };
    let problem = Problem::new(&q, &graph, CostModel::new(0.1, 3.0)?)?.with_reachability(&arm);

    let report = plan(&problem, &[Algorithm::Gcb, Algorithm::GcbPlus]);
    for r in &report.results {
        println!("{}: poses {:?}, f = {:.2}, C = {:.2}", r.algorithm, r.poses, r.quality, r.cost);
        assert!(r.poses.iter().all(|&v| graph.pose(v).position.x < 0.9));
    }
    Ok(())
}

fn main() {
    run_example().expect("custom reachability example");
}
