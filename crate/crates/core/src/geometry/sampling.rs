use nalgebra::{Point3, Vector3};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GeometryError, TriangleMesh};

/// A surface sample `m` with the normal of the triangle it was drawn from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelPoint {
    pub position: Point3<f64>,
    pub normal: Vector3<f64>,
    pub source_triangle: usize,
}

/// Draw `count` points uniformly (by area) over the mesh surface.
///
/// Triangles are picked with probability proportional to their area and the
/// point is uniform within the triangle. Output is fully determined by `seed`.
pub fn sample_surface(
    mesh: &TriangleMesh,
    count: usize,
    seed: u64,
) -> Result<Vec<ModelPoint>, GeometryError> {
    if count == 0 {
        return Err(GeometryError::NonPositive("sample count"));
    }
    if mesh.is_empty() || !(mesh.total_area() > 0.0) {
        return Err(GeometryError::DegenerateMesh);
    }
    let picker = WeightedIndex::new(mesh.areas()).map_err(|_| GeometryError::DegenerateMesh)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let points = (0..count)
        .map(|_| {
            let t = picker.sample(&mut rng);
            let [a, b, c] = mesh.corners(t);
            let s = rng.random::<f64>().sqrt();
            let r = rng.random::<f64>();
            let position = Point3::from(
                a.coords * (1.0 - s) + b.coords * (s * (1.0 - r)) + c.coords * (s * r),
            );
            ModelPoint {
                position,
                normal: mesh.normal(t),
                source_triangle: t,
            }
        })
        .collect();
    Ok(points)
}
