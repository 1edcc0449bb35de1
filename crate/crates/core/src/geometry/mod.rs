//! Triangle meshes, surface sampling, ray-cast visibility and frustum tests.

mod frustum;
mod hull;
mod io;
mod mesh;
mod ray;
mod sampling;

use nalgebra::{Point3, UnitQuaternion, Vector3};
use thiserror::Error;

pub use frustum::{in_frustum, Frustum};
pub use hull::{inflated_hull_grid, ConvexHull};
pub use io::{load_mesh, write_obj};
pub use mesh::TriangleMesh;
pub use ray::{ray_visible, segment_hits_triangle, RayCaster};
pub use sampling::{sample_surface, ModelPoint};

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("triangle {triangle} references vertex {index} but the mesh has {vertices} vertices")]
    IndexOutOfRange {
        triangle: usize,
        index: usize,
        vertices: usize,
    },
    #[error("vertex {0} is not finite")]
    NonFiniteVertex(Point3<f64>),
    #[error("mesh has zero total surface area")]
    DegenerateMesh,
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("{name} out of range: {value}")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("cannot read mesh {path}: {message}")]
    Io { path: String, message: String },
    #[error("unsupported mesh format: {0} (expected .stl or .obj)")]
    UnsupportedFormat(String),
    #[error("object `{object}` has a face with {arity} vertices; only triangles are accepted")]
    NonTriangleFace { object: String, arity: usize },
}

/// A sensor pose: position plus orientation. The optical axis is the
/// orientation applied to the local +z axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pose {
    pub position: Point3<f64>,
    pub orientation: UnitQuaternion<f64>,
}

impl Pose {
    pub fn new(position: Point3<f64>, orientation: UnitQuaternion<f64>) -> Self {
        Self {
            position,
            orientation,
        }
    }

    pub fn optical_axis(&self) -> Vector3<f64> {
        self.orientation * Vector3::z()
    }
}
