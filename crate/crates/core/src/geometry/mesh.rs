use nalgebra::{Point3, Vector3};

use super::GeometryError;

/// Indexed triangle mesh in meters.
///
/// Unit normals are derived once at construction from the vertex winding
/// (right-hand rule). Degenerate triangles keep a zero normal and zero area;
/// they are ignored by sampling and ray casting.
#[derive(Clone, Debug, Default)]
pub struct TriangleMesh {
    vertices: Vec<Point3<f64>>,
    triangles: Vec<[usize; 3]>,
    normals: Vec<Vector3<f64>>,
    areas: Vec<f64>,
}

impl TriangleMesh {
    pub fn new(
        vertices: Vec<Point3<f64>>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, GeometryError> {
        for (t, tri) in triangles.iter().enumerate() {
            if let Some(&bad) = tri.iter().find(|&&i| i >= vertices.len()) {
                return Err(GeometryError::IndexOutOfRange {
                    triangle: t,
                    index: bad,
                    vertices: vertices.len(),
                });
            }
        }
        if let Some(p) = vertices.iter().find(|p| !p.coords.iter().all(|c| c.is_finite())) {
            return Err(GeometryError::NonFiniteVertex(*p));
        }

        let mut normals = Vec::with_capacity(triangles.len());
        let mut areas = Vec::with_capacity(triangles.len());
        for tri in &triangles {
            let [a, b, c] = tri.map(|i| vertices[i]);
            let cross = (b - a).cross(&(c - a));
            let norm = cross.norm();
            if norm > 0.0 && norm.is_finite() {
                normals.push(cross / norm);
                areas.push(0.5 * norm);
            } else {
                normals.push(Vector3::zeros());
                areas.push(0.0);
            }
        }

        Ok(Self {
            vertices,
            triangles,
            normals,
            areas,
        })
    }

    /// Axis-aligned box with outward-facing triangles.
    pub fn cuboid(min: Point3<f64>, max: Point3<f64>) -> Self {
        let v = |x: bool, y: bool, z: bool| {
            Point3::new(
                if x { max.x } else { min.x },
                if y { max.y } else { min.y },
                if z { max.z } else { min.z },
            )
        };
        let vertices = vec![
            v(false, false, false),
            v(true, false, false),
            v(true, true, false),
            v(false, true, false),
            v(false, false, true),
            v(true, false, true),
            v(true, true, true),
            v(false, true, true),
        ];
        let triangles = vec![
            [0, 2, 1],
            [0, 3, 2], // z-
            [4, 5, 6],
            [4, 6, 7], // z+
            [0, 1, 5],
            [0, 5, 4], // y-
            [3, 6, 2],
            [3, 7, 6], // y+
            [0, 4, 7],
            [0, 7, 3], // x-
            [1, 2, 6],
            [1, 6, 5], // x+
        ];
        Self::new(vertices, triangles).expect("cuboid indices are valid")
    }

    /// Flat rectangle in the plane `z = height`, normal +z, made of two triangles.
    pub fn plate(width: f64, depth: f64, height: f64) -> Self {
        let vertices = vec![
            Point3::new(0.0, 0.0, height),
            Point3::new(width, 0.0, height),
            Point3::new(width, depth, height),
            Point3::new(0.0, depth, height),
        ];
        Self::new(vertices, vec![[0, 1, 2], [0, 2, 3]]).expect("plate indices are valid")
    }

    pub fn vertices(&self) -> &[Point3<f64>] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn normal(&self, triangle: usize) -> Vector3<f64> {
        self.normals[triangle]
    }

    pub fn area(&self, triangle: usize) -> f64 {
        self.areas[triangle]
    }

    pub fn areas(&self) -> &[f64] {
        &self.areas
    }

    pub fn total_area(&self) -> f64 {
        self.areas.iter().sum()
    }

    pub fn corners(&self, triangle: usize) -> [Point3<f64>; 3] {
        self.triangles[triangle].map(|i| self.vertices[i])
    }

    /// Bounding box of the vertices, `None` for a mesh without vertices.
    pub fn bounds(&self) -> Option<(Point3<f64>, Point3<f64>)> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(lo, hi), p| {
            (lo.inf(p), hi.sup(p))
        }))
    }
}
