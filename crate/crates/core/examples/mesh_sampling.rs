// Load a mesh and draw area-uniform surface points with normals.

use inspection_planner::geometry::{load_mesh, sample_surface, TriangleMesh};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/plate.obj");
    let plate = load_mesh(path)?;
    println!("plate: {} triangles, area {:.3} m²", plate.len(), plate.total_area());

    let block = TriangleMesh::cuboid([0.0, 0.0, 0.0].into(), [0.4, 0.2, 0.1].into());
    let points = sample_surface(&block, 1000, 42)?;
    let top = points.iter().filter(|p| p.normal.z > 0.5).count();
    let expected = 1000.0 * 0.4 * 0.2 / block.total_area();
    println!("block: {} points, {top} on the top face (expected about {expected:.0})", points.len());

    let again = sample_surface(&block, 1000, 42)?;
    assert!(points.iter().zip(&again).all(|(a, b)| a.position == b.position));
    println!("same seed, same points");
    Ok(())
}

fn main() {
    run_example().expect("mesh sampling example");
}
