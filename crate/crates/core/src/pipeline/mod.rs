//! Config-driven batch runs: mesh → discretization → quality matrix →
//! planner, for every requested algorithm and sweep value, with the
//! expensive matrices cached on disk under content-hash keys.

mod config;
mod report;
mod scene;

use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use crate::planner::{plan, Problem};
use crate::tsp::CostModel;

pub use config::{GridConfig, RunConfig, Seeds, SweepParameter, SweepSpec};
pub use report::{
    emit_reports, round_significant, sweep_csv, to_report_json, PoseRecord, RunReport, SweepPoint,
    SweepRow, Timing,
};
pub use scene::{cache_keys, prepare_scene, Scene};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Config,
    Geometry,
    Discretization,
    Quality,
    Planning,
    Output,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Config => "config",
            Stage::Geometry => "geometry",
            Stage::Discretization => "discretization",
            Stage::Quality => "quality",
            Stage::Planning => "planning",
            Stage::Output => "output",
        })
    }
}

#[derive(Debug, Error)]
#[error("{stage} stage failed: {message}")]
pub struct PipelineError {
    pub stage: Stage,
    pub message: String,
}

impl PipelineError {
    pub fn new(stage: Stage, message: impl Into<String>) -> Self {
        Self {
            stage,
            message: message.into(),
        }
    }

    /// 2 for configuration problems, 3 for failures in a later stage.
    pub fn exit_code(&self) -> i32 {
        match self.stage {
            Stage::Config => 2,
            _ => 3,
        }
    }
}

/// Everything one pipeline invocation produced.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub reports: Vec<RunReport>,
    pub sweep: Vec<SweepRow>,
    pub timings: Vec<Timing>,
}

/// Run every sweep point of `config`.
///
/// `base_dir` resolves a relative mesh path. With `cache_dir` set, distance
/// and quality matrices are read from and written to that directory.
pub fn run_pipeline(
    config: &RunConfig,
    base_dir: &Path,
    cache_dir: Option<&Path>,
) -> Result<PipelineOutput, PipelineError> {
    config.validate()?;
    if let Some(dir) = cache_dir {
        std::fs::create_dir_all(dir).map_err(|e| {
            PipelineError::new(Stage::Output, format!("cannot create {}: {e}", dir.display()))
        })?;
    }

    let mut output = PipelineOutput {
        reports: Vec::new(),
        sweep: Vec::new(),
        timings: Vec::new(),
    };
    let mut scene: Option<(String, Scene)> = None;
    for (point, point_config) in config.points()? {
        let sweep_point = point.map(|(parameter, value)| SweepPoint { parameter, value });

        // β only scales the metric, so it does not invalidate the scene.
        let mut scene_key = point_config.clone();
        scene_key.beta = config.beta;
        scene_key.alpha = config.alpha;
        scene_key.budget = config.budget;
        let scene_key = scene_key.to_json();
        if scene.as_ref().is_none_or(|(k, _)| *k != scene_key) {
            let start = Instant::now();
            let s = prepare_scene(&point_config, base_dir, cache_dir)?;
            output.timings.push(Timing::new(sweep_point, "prepare", start.elapsed().as_secs_f64()));
            log::info!(
                "scene: {} grid positions, {} poses, {} surface points, cache hits: distance {}, quality {}",
                s.grid_positions,
                s.graph.n_poses(),
                s.points.len(),
                s.distance_cache_hit,
                s.quality_cache_hit
            );
            scene = Some((scene_key, s));
        }
        let (_, s) = scene.as_ref().expect("scene prepared");

        let planning = |e: String| PipelineError::new(Stage::Planning, e);
        let graph = s.graph.with_beta(point_config.beta).map_err(|e| planning(e.to_string()))?;
        let model = CostModel::new(point_config.alpha, point_config.budget)
            .map_err(|e| planning(e.to_string()))?
            .with_shape(point_config.tour_shape);
        let problem = Problem::new(&s.quality, &graph, model)
            .map_err(|e| planning(e.to_string()))?
            .with_reachability(&point_config.reachability)
            .with_estimator(point_config.estimator);
        let plan_report = plan(&problem, &point_config.algorithms);

        for result in &plan_report.results {
            output.timings.push(Timing::new(sweep_point, result.algorithm.name(), result.runtime));
            let report = RunReport::new(&point_config, sweep_point, s, &graph, &plan_report, result);
            output.sweep.push(SweepRow::from_report(&report));
            output.reports.push(report);
        }
    }
    Ok(output)
}

/// Run the pipeline and write reports under `config.output_dir` (resolved
/// against `base_dir` when relative). Returns the written files.
pub fn run_and_emit(config: &RunConfig, base_dir: &Path) -> Result<(PipelineOutput, Vec<PathBuf>), PipelineError> {
    let out_dir = if config.output_dir.is_absolute() {
        config.output_dir.clone()
    } else {
        base_dir.join(&config.output_dir)
    };
    let output = run_pipeline(config, base_dir, Some(&out_dir.join("cache")))?;
    let files = emit_reports(&output, &out_dir)?;
    Ok((output, files))
}
