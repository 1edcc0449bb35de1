use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{PipelineError, RunConfig, Stage};
use crate::discretization::{
    all_pairs_shortest, build_fiber_graph, filter_unreachable, orientation_metric, read_matrix,
    sample_orientations, write_matrix, PoseGraph,
};
use crate::geometry::{inflated_hull_grid, load_mesh, sample_surface, Frustum, ModelPoint, RayCaster, TriangleMesh};
use crate::quality::{build_quality_matrix, read_quality_matrix, write_quality_matrix, QualityMatrix};

/// Precomputed inputs of the planner for one configuration.
pub struct Scene {
    pub mesh: TriangleMesh,
    pub mesh_sha256: String,
    pub points: Vec<ModelPoint>,
    pub grid_positions: usize,
    pub disconnected_positions: usize,
    pub graph: PoseGraph,
    pub quality: QualityMatrix,
    pub distance_cache_hit: bool,
    pub quality_cache_hit: bool,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    hex(&h.finalize())
}

/// Cache keys of the position metric and the quality matrix.
pub fn cache_keys(config: &RunConfig, mesh_sha256: &str) -> (String, String) {
    let reach = serde_json::to_string(&config.reachability).expect("serializable");
    let distance = digest(&[
        "distance-v1",
        mesh_sha256,
        &format!("{:?}", config.grid.dilation),
        &format!("{:?}", config.grid.resolution),
        &reach,
    ]);
    let rate = serde_json::to_string(&config.quality).expect("serializable");
    let quality = digest(&[
        "quality-v1",
        &distance,
        &config.surface_samples.to_string(),
        &config.seeds.surface.to_string(),
        &config.orientations.to_string(),
        &config.seeds.orientation.to_string(),
        &rate,
        &format!("{:?}", config.frustum_angle),
    ]);
    (distance, quality)
}

fn stage(stage: Stage) -> impl Fn(String) -> PipelineError {
    move |message| PipelineError::new(stage, message)
}

/// Load, sample, discretize and build the quality matrix, reusing cached
/// matrices from `cache_dir` when their keys match.
pub fn prepare_scene(
    config: &RunConfig,
    base_dir: &Path,
    cache_dir: Option<&Path>,
) -> Result<Scene, PipelineError> {
    let geometry = stage(Stage::Geometry);
    let mesh_path = config.mesh_path(base_dir);
    let bytes = std::fs::read(&mesh_path)
        .map_err(|e| geometry(format!("cannot read mesh {}: {e}", mesh_path.display())))?;
    let mesh_sha256 = hex(&Sha256::digest(&bytes));
    let mesh = load_mesh(&mesh_path).map_err(|e| geometry(e.to_string()))?;
    if mesh.total_area() <= 0.0 {
        return Err(geometry(format!("mesh {} has no surface area", mesh_path.display())));
    }
    let points = sample_surface(&mesh, config.surface_samples, config.seeds.surface)
        .map_err(|e| geometry(e.to_string()))?;
    let grid = inflated_hull_grid(&mesh, config.grid.dilation, config.grid.resolution)
        .map_err(|e| geometry(e.to_string()))?;

    let discretization = stage(Stage::Discretization);
    let outcome = filter_unreachable(&grid, config.grid.resolution, &config.reachability)
        .map_err(|e| discretization(e.to_string()))?;
    let positions: Vec<_> = outcome.retained.iter().map(|&i| grid[i]).collect();
    let adjacency =
        build_fiber_graph(&positions, config.grid.resolution).map_err(|e| discretization(e.to_string()))?;
    let orientations = sample_orientations(config.orientations, config.seeds.orientation)
        .map_err(|e| discretization(e.to_string()))?;

    let (distance_key, quality_key) = cache_keys(config, &mesh_sha256);
    let cached = |prefix: &str, key: &str| cache_dir.map(|d| d.join(format!("{prefix}-{key}.bin")));
    let distance_file: Option<PathBuf> = cached("distance", &distance_key);
    let quality_file: Option<PathBuf> = cached("quality", &quality_key);

    let mut distance_cache_hit = false;
    let position_metric = match distance_file.as_deref().and_then(|f| read_matrix(f).ok()) {
        Some(m) if m.dim() == positions.len() => {
            distance_cache_hit = true;
            m
        }
        _ => {
            let m = all_pairs_shortest(&adjacency, &positions).map_err(|e| discretization(e.to_string()))?;
            if let Some(f) = &distance_file {
                write_matrix(&m, f)
                    .map_err(|e| discretization(format!("cannot write cache {}: {e}", f.display())))?;
            }
            m
        }
    };
    let o_metric = orientation_metric(&orientations);
    let graph = PoseGraph::new(positions, orientations, adjacency, position_metric, o_metric, config.beta)
        .map_err(|e| discretization(e.to_string()))?;

    let quality_stage = stage(Stage::Quality);
    let mut quality_cache_hit = false;
    let quality = match quality_file.as_deref().and_then(|f| read_quality_matrix(f).ok()) {
        Some(q) if q.rows() == points.len() && q.cols() == graph.n_poses() => {
            quality_cache_hit = true;
            q
        }
        _ => {
            let frustum = Frustum::new(config.frustum_angle).map_err(|e| quality_stage(e.to_string()))?;
            let caster = RayCaster::new(&mesh);
            let (q, stats) = build_quality_matrix(&points, &graph, &caster, &frustum, &config.quality)
                .map_err(|e| quality_stage(e.to_string()))?;
            log::info!(
                "quality matrix: {} ray casts, {} visible pairs, {} nonzeros",
                stats.ray_casts,
                stats.visible_pairs,
                q.nnz()
            );
            if let Some(f) = &quality_file {
                write_quality_matrix(&q, f)
                    .map_err(|e| quality_stage(format!("cannot write cache {}: {e}", f.display())))?;
            }
            q
        }
    };
    if quality.is_all_zero() {
        return Err(quality_stage("quality matrix is all zero: no pose sees any surface point".into()));
    }

    Ok(Scene {
        mesh,
        mesh_sha256,
        points,
        grid_positions: grid.len(),
        disconnected_positions: outcome.disconnected,
        graph,
        quality,
        distance_cache_hit,
        quality_cache_hit,
    })
}
