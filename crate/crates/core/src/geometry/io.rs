use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use nalgebra::Point3;

use super::{GeometryError, TriangleMesh};

/// Load a triangle mesh from an ASCII/binary STL or a Wavefront OBJ file.
///
/// The format is chosen by file extension. OBJ faces must already be
/// triangles; polygons are rejected rather than triangulated.
pub fn load_mesh(path: impl AsRef<Path>) -> Result<TriangleMesh, GeometryError> {
    let path = path.as_ref();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("stl") => load_stl(path),
        Some("obj") => load_obj(path),
        _ => Err(GeometryError::UnsupportedFormat(path.display().to_string())),
    }
}

fn io_err(path: &Path, source: impl std::fmt::Display) -> GeometryError {
    GeometryError::Io {
        path: path.display().to_string(),
        message: source.to_string(),
    }
}

fn load_stl(path: &Path) -> Result<TriangleMesh, GeometryError> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let mut reader = BufReader::new(file);
    let stl = stl_io::read_stl(&mut reader).map_err(|e| io_err(path, e))?;
    let vertices = stl
        .vertices
        .iter()
        .map(|v| Point3::new(v[0] as f64, v[1] as f64, v[2] as f64))
        .collect();
    let triangles = stl.faces.iter().map(|f| f.vertices).collect();
    TriangleMesh::new(vertices, triangles)
}

fn load_obj(path: &Path) -> Result<TriangleMesh, GeometryError> {
    let options = tobj::LoadOptions {
        triangulate: false,
        single_index: false,
        ..Default::default()
    };
    let (models, _materials) = tobj::load_obj(path, &options).map_err(|e| io_err(path, e))?;

    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    for model in &models {
        let mesh = &model.mesh;
        if let Some(&arity) = mesh.face_arities.iter().find(|&&a| a != 3) {
            return Err(GeometryError::NonTriangleFace {
                object: model.name.clone(),
                arity: arity as usize,
            });
        }
        let base = vertices.len();
        vertices.extend(
            mesh.positions
                .chunks_exact(3)
                .map(|c| Point3::new(c[0], c[1], c[2])),
        );
        triangles.extend(mesh.indices.chunks_exact(3).map(|c| {
            [
                base + c[0] as usize,
                base + c[1] as usize,
                base + c[2] as usize,
            ]
        }));
    }
    TriangleMesh::new(vertices, triangles)
}

/// Write a mesh as a minimal Wavefront OBJ document.
pub fn write_obj(mesh: &TriangleMesh, path: impl AsRef<Path>) -> std::io::Result<()> {
    use std::fmt::Write as _;
    let mut out = String::new();
    for v in mesh.vertices() {
        let _ = writeln!(out, "v {} {} {}", v.x, v.y, v.z);
    }
    for t in mesh.triangles() {
        let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    std::fs::write(path, out)
}
