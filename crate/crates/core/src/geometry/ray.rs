use nalgebra::{Point3, Vector3};

use super::TriangleMesh;

/// Distance kept clear at both segment endpoints so a target does not
/// occlude itself on its own triangle.
pub const SELF_OCCLUSION_EPS: f64 = 1e-6;

/// Watertight segment/triangle test (Woop, Benthin & Wald).
///
/// Returns the segment parameter `t ∈ [0, 1]` of the hit, counting hits on
/// edges and vertices so that adjacent triangles leave no gaps. Degenerate
/// triangles and segments parallel to the triangle plane never hit.
pub fn segment_hits_triangle(
    origin: &Point3<f64>,
    dir: &Vector3<f64>,
    tri: &[Point3<f64>; 3],
) -> Option<f64> {
    let kz = dir.iamax();
    if dir[kz] == 0.0 {
        return None;
    }
    let mut kx = (kz + 1) % 3;
    let mut ky = (kx + 1) % 3;
    if dir[kz] < 0.0 {
        std::mem::swap(&mut kx, &mut ky);
    }
    let sx = dir[kx] / dir[kz];
    let sy = dir[ky] / dir[kz];
    let sz = 1.0 / dir[kz];

    let a = tri[0] - origin;
    let b = tri[1] - origin;
    let c = tri[2] - origin;
    let (ax, ay) = (a[kx] - sx * a[kz], a[ky] - sy * a[kz]);
    let (bx, by) = (b[kx] - sx * b[kz], b[ky] - sy * b[kz]);
    let (cx, cy) = (c[kx] - sx * c[kz], c[ky] - sy * c[kz]);

    let u = cx * by - cy * bx;
    let v = ax * cy - ay * cx;
    let w = bx * ay - by * ax;
    if (u < 0.0 || v < 0.0 || w < 0.0) && (u > 0.0 || v > 0.0 || w > 0.0) {
        return None;
    }
    let det = u + v + w;
    if det == 0.0 {
        return None;
    }
    let t = (u * sz * a[kz] + v * sz * b[kz] + w * sz * c[kz]) / det;
    (0.0..=1.0).contains(&t).then_some(t)
}

fn blocks(t: f64, length: f64) -> bool {
    t * length > SELF_OCCLUSION_EPS && (1.0 - t) * length > SELF_OCCLUSION_EPS
}

/// True iff the open segment `(from, to)` crosses no mesh triangle.
///
/// Brute force over all triangles; use [`RayCaster`] for repeated queries.
pub fn ray_visible(mesh: &TriangleMesh, from: &Point3<f64>, to: &Point3<f64>) -> bool {
    let dir = to - from;
    let length = dir.norm();
    (0..mesh.len())
        .filter(|&t| mesh.area(t) > 0.0)
        .all(|t| match segment_hits_triangle(from, &dir, &mesh.corners(t)) {
            Some(hit) => !blocks(hit, length),
            None => true,
        })
}

#[derive(Clone, Copy, Debug)]
struct Aabb {
    min: Point3<f64>,
    max: Point3<f64>,
}

impl Aabb {
    fn empty() -> Self {
        Self {
            min: Point3::from([f64::INFINITY; 3]),
            max: Point3::from([f64::NEG_INFINITY; 3]),
        }
    }

    fn grow(&mut self, p: &Point3<f64>) {
        self.min = self.min.inf(p);
        self.max = self.max.sup(p);
    }

    fn merge(&mut self, other: &Aabb) {
        self.grow(&other.min);
        self.grow(&other.max);
    }

    /// Slab test against the segment `origin + t·dir`, `t ∈ [0, 1]`.
    fn hit_by_segment(&self, origin: &Point3<f64>, inv_dir: &Vector3<f64>) -> bool {
        let mut t0 = 0.0f64;
        let mut t1 = 1.0f64;
        for k in 0..3 {
            let near = (self.min[k] - origin[k]) * inv_dir[k];
            let far = (self.max[k] - origin[k]) * inv_dir[k];
            // NaN from 0·∞ means the segment runs inside the slab plane.
            let (lo, hi) = if near <= far { (near, far) } else { (far, near) };
            if !lo.is_nan() {
                t0 = t0.max(lo);
            }
            if !hi.is_nan() {
                t1 = t1.min(hi);
            }
            // Padding keeps the test conservative against rounding.
            if t0 > t1 * (1.0 + 4.0 * f64::EPSILON) + 1e-12 {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
enum Node {
    Leaf { bounds: Aabb, start: usize, end: usize },
    Inner { bounds: Aabb, left: usize, right: usize },
}

impl Node {
    fn bounds(&self) -> &Aabb {
        match self {
            Node::Leaf { bounds, .. } | Node::Inner { bounds, .. } => bounds,
        }
    }
}

const LEAF_SIZE: usize = 4;

/// Bounding-volume hierarchy over a mesh for repeated visibility queries.
///
/// Immutable after construction and `Sync`, so a single caster can serve
/// parallel queries.
#[derive(Clone, Debug)]
pub struct RayCaster {
    triangles: Vec<[Point3<f64>; 3]>,
    nodes: Vec<Node>,
}

impl RayCaster {
    pub fn new(mesh: &TriangleMesh) -> Self {
        let mut triangles: Vec<[Point3<f64>; 3]> = (0..mesh.len())
            .filter(|&t| mesh.area(t) > 0.0)
            .map(|t| mesh.corners(t))
            .collect();
        let mut nodes = Vec::new();
        if !triangles.is_empty() {
            let len = triangles.len();
            build(&mut triangles, 0, len, &mut nodes);
        }
        Self { triangles, nodes }
    }

    /// Same contract as [`ray_visible`].
    pub fn visible(&self, from: &Point3<f64>, to: &Point3<f64>) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let dir = to - from;
        let length = dir.norm();
        let inv_dir = dir.map(|d| 1.0 / d);
        let mut stack = vec![0usize];
        while let Some(idx) = stack.pop() {
            let node = &self.nodes[idx];
            if !node.bounds().hit_by_segment(from, &inv_dir) {
                continue;
            }
            match *node {
                Node::Leaf { start, end, .. } => {
                    for tri in &self.triangles[start..end] {
                        if let Some(t) = segment_hits_triangle(from, &dir, tri) {
                            if blocks(t, length) {
                                return false;
                            }
                        }
                    }
                }
                Node::Inner { left, right, .. } => {
                    stack.push(left);
                    stack.push(right);
                }
            }
        }
        true
    }
}

fn centroid(tri: &[Point3<f64>; 3]) -> Point3<f64> {
    Point3::from((tri[0].coords + tri[1].coords + tri[2].coords) / 3.0)
}

fn build(
    triangles: &mut [[Point3<f64>; 3]],
    start: usize,
    end: usize,
    nodes: &mut Vec<Node>,
) -> usize {
    let mut bounds = Aabb::empty();
    let mut centroid_bounds = Aabb::empty();
    for tri in &triangles[start..end] {
        tri.iter().for_each(|p| bounds.grow(p));
        centroid_bounds.grow(&centroid(tri));
    }
    let idx = nodes.len();
    if end - start <= LEAF_SIZE {
        nodes.push(Node::Leaf { bounds, start, end });
        return idx;
    }
    let extent = centroid_bounds.max - centroid_bounds.min;
    let axis = extent.iamax();
    let mid = (start + end) / 2;
    triangles[start..end].select_nth_unstable_by(mid - start, |a, b| {
        centroid(a)[axis].total_cmp(&centroid(b)[axis])
    });
    nodes.push(Node::Leaf { bounds, start, end });
    let left = build(triangles, start, mid, nodes);
    let right = build(triangles, mid, end, nodes);
    let mut merged = *nodes[left].bounds();
    merged.merge(nodes[right].bounds());
    nodes[idx] = Node::Inner {
        bounds: merged,
        left,
        right,
    };
    idx
}
