use nalgebra::{Point3, Vector3};
use parry3d_f64::math::Vector3 as PVec;
use parry3d_f64::transformation::try_convex_hull;

use super::{GeometryError, TriangleMesh};

/// Tolerance on the dilation test so lattice points exactly on the inflated
/// boundary are kept despite rounding.
const BOUNDARY_TOL: f64 = 1e-9;

/// Convex hull of a point set with exact signed distance queries.
///
/// Inside the hull the distance is the negated distance to the nearest
/// facet plane; outside it is the Euclidean distance to the closest facet.
#[derive(Clone, Debug)]
pub struct ConvexHull {
    facets: Vec<[Point3<f64>; 3]>,
    planes: Vec<(Vector3<f64>, f64)>,
}

impl ConvexHull {
    /// `None` when the points do not span three dimensions.
    pub fn new(points: &[Point3<f64>]) -> Option<Self> {
        if !spans_volume(points) {
            return None;
        }
        let input: Vec<PVec> = points.iter().map(|p| PVec::new(p.x, p.y, p.z)).collect();
        let (vertices, indices) = try_convex_hull(&input).ok()?;
        let vertices: Vec<Point3<f64>> = vertices
            .iter()
            .map(|v| Point3::new(v.x, v.y, v.z))
            .collect();
        let interior = Point3::from(
            vertices.iter().map(|p| p.coords).sum::<Vector3<f64>>() / vertices.len() as f64,
        );

        let mut facets = Vec::with_capacity(indices.len());
        let mut planes = Vec::with_capacity(indices.len());
        for idx in &indices {
            let tri = idx.map(|i| vertices[i as usize]);
            let cross = (tri[1] - tri[0]).cross(&(tri[2] - tri[0]));
            let norm = cross.norm();
            if norm == 0.0 {
                continue;
            }
            let mut n = cross / norm;
            if n.dot(&(interior - tri[0])) > 0.0 {
                n = -n;
            }
            planes.push((n, n.dot(&tri[0].coords)));
            facets.push(tri);
        }
        (!facets.is_empty()).then_some(Self { facets, planes })
    }

    pub fn signed_distance(&self, p: &Point3<f64>) -> f64 {
        let plane_max = self
            .planes
            .iter()
            .map(|(n, d)| n.dot(&p.coords) - d)
            .fold(f64::NEG_INFINITY, f64::max);
        if plane_max <= 0.0 {
            return plane_max;
        }
        self.facets
            .iter()
            .map(|tri| (p - closest_point_on_triangle(p, tri)).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

fn spans_volume(points: &[Point3<f64>]) -> bool {
    let Some(first) = points.first() else {
        return false;
    };
    let scale = points
        .iter()
        .map(|p| (p - first).norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return false;
    }
    let tol = 1e-9 * scale;
    let Some(second) = points.iter().find(|p| (*p - first).norm() > tol) else {
        return false;
    };
    let axis = (second - first).normalize();
    let Some(third) = points
        .iter()
        .find(|p| (*p - first).cross(&axis).norm() > tol)
    else {
        return false;
    };
    let normal = axis.cross(&(third - first)).normalize();
    points.iter().any(|p| (p - first).dot(&normal).abs() > tol)
}

/// Closest point to `p` on a triangle (Ericson, Real-Time Collision Detection 5.1.5).
fn closest_point_on_triangle(p: &Point3<f64>, tri: &[Point3<f64>; 3]) -> Point3<f64> {
    let [a, b, c] = *tri;
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return a;
    }
    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        return a + ab * (d1 / (d1 - d3));
    }
    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        return a + ac * (d2 / (d2 - d6));
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
    }
    let denom = 1.0 / (va + vb + vc);
    a + ab * (vb * denom) + ac * (vc * denom)
}

fn distance_to_box(p: &Point3<f64>, lo: &Point3<f64>, hi: &Point3<f64>) -> f64 {
    let clamped = Point3::from(p.coords.zip_zip_map(&lo.coords, &hi.coords, |x, l, h| {
        x.clamp(l, h)
    }));
    (p - clamped).norm()
}

/// Regular lattice of candidate view positions inside the convex hull of the
/// mesh vertices inflated by `dilation`.
///
/// The lattice is anchored at the minimum corner of the vertex bounding box
/// and has spacing `resolution` along every axis. If the vertices do not span
/// a volume (flat or collinear meshes) the bounding box stands in for the hull.
pub fn inflated_hull_grid(
    mesh: &TriangleMesh,
    dilation: f64,
    resolution: f64,
) -> Result<Vec<Point3<f64>>, GeometryError> {
    if !(resolution > 0.0) || !resolution.is_finite() {
        return Err(GeometryError::NonPositive("grid resolution"));
    }
    if !(dilation >= 0.0) || !dilation.is_finite() {
        return Err(GeometryError::OutOfRange {
            name: "dilation",
            value: dilation,
        });
    }
    let (lo, hi) = mesh.bounds().ok_or(GeometryError::DegenerateMesh)?;
    let hull = ConvexHull::new(mesh.vertices());
    if hull.is_none() {
        log::warn!("mesh vertices do not span a volume; dilating the bounding box instead");
    }

    let range = |axis: usize| {
        let first = (-dilation / resolution - 1e-9).floor() as i64;
        let last = ((hi[axis] - lo[axis] + dilation) / resolution + 1e-9).floor() as i64;
        first..=last
    };

    let mut grid = Vec::new();
    for i in range(0) {
        for j in range(1) {
            for k in range(2) {
                let p = Point3::new(
                    lo.x + i as f64 * resolution,
                    lo.y + j as f64 * resolution,
                    lo.z + k as f64 * resolution,
                );
                let distance = match &hull {
                    Some(h) => h.signed_distance(&p),
                    None => distance_to_box(&p, &lo, &hi),
                };
                if distance <= dilation + BOUNDARY_TOL {
                    grid.push(p);
                }
            }
        }
    }
    Ok(grid)
}
