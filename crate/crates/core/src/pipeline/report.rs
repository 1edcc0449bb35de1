use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{PipelineError, PipelineOutput, RunConfig, Scene, Stage, SweepParameter};
use crate::discretization::PoseGraph;
use crate::planner::{Algorithm, AlgorithmResult, PlanReport, PlusStats};

/// Significant digits of every number written to reports and tables.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub parameter: SweepParameter,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoseRecord {
    pub id: usize,
    pub position: [f64; 3],
    /// Unit quaternion `[w, x, y, z]`.
    pub orientation: [f64; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub grid_positions: usize,
    pub disconnected_positions: usize,
    pub positions: usize,
    pub orientations: usize,
    pub poses: usize,
    pub surface_points: usize,
    pub quality_nonzeros: usize,
}

/// One (algorithm, sweep value) result.
///
/// `config` is the effective configuration of this run; feeding it back to
/// the pipeline reproduces the report. Wall times are kept out of the
/// report so repeated runs produce identical files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub mesh_sha256: String,
    pub sweep: Option<SweepPoint>,
    pub algorithm: Algorithm,
    pub instance: InstanceSummary,
    pub quality: f64,
    pub travel: f64,
    pub cost: f64,
    pub budget: f64,
    pub opt: f64,
    pub opt_cost_based: f64,
    pub ratio: f64,
    pub poses: Vec<PoseRecord>,
    /// Pose ids in visiting order. Whether the robot can move between
    /// consecutive poses along the planned legs is left to the caller.
    pub tour: Vec<usize>,
    pub improvement: Option<PlusStats>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(
        config: &RunConfig,
        sweep: Option<SweepPoint>,
        scene: &Scene,
        graph: &PoseGraph,
        plan: &PlanReport,
        result: &AlgorithmResult,
    ) -> Self {
        let poses = result
            .poses
            .iter()
            .map(|&id| {
                let pose = graph.pose(id);
                let q = pose.orientation.quaternion();
                PoseRecord {
                    id,
                    position: pose.position.coords.into(),
                    orientation: [q.w, q.i, q.j, q.k],
                }
            })
            .collect();
        Self {
            config: config.clone(),
            mesh_sha256: scene.mesh_sha256.clone(),
            sweep,
            algorithm: result.algorithm,
            instance: InstanceSummary {
                grid_positions: scene.grid_positions,
                disconnected_positions: scene.disconnected_positions,
                positions: graph.n_positions(),
                orientations: graph.n_orientations(),
                poses: graph.n_poses(),
                surface_points: scene.points.len(),
                quality_nonzeros: scene.quality.nnz(),
            },
            quality: result.quality,
            travel: result.travel,
            cost: result.cost,
            budget: plan.budget,
            opt: plan.opt.value,
            opt_cost_based: plan.opt.cost_based,
            ratio: result.ratio,
            poses,
            tour: result.tour.clone(),
            improvement: result.improvement,
            warnings: plan.warnings.clone(),
        }
    }

    pub fn file_name(&self) -> String {
        let algorithm = self.algorithm.name().replace('+', "_plus");
        match self.sweep {
            None => format!("report_{algorithm}.json"),
            Some(p) => format!("report_{algorithm}_{}_{}.json", p.parameter.name(), p.value),
        }
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to 12 significant digits. Keys
/// appear in declaration order.
pub fn to_report_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("report serializes");
    round_value(&mut v);
    let mut text = serde_json::to_string_pretty(&v).expect("value serializes");
    text.push('\n');
    text
}

/// One row of the sweep table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: Option<SweepParameter>,
    pub value: Option<f64>,
    pub algorithm: Algorithm,
    pub quality: f64,
    pub opt: f64,
    pub percent_of_opt: f64,
    pub cost: f64,
    pub budget: f64,
    pub poses: usize,
}

impl SweepRow {
    pub fn from_report(r: &RunReport) -> Self {
        Self {
            parameter: r.sweep.map(|s| s.parameter),
            value: r.sweep.map(|s| s.value),
            algorithm: r.algorithm,
            quality: r.quality,
            opt: r.opt,
            percent_of_opt: 100.0 * r.ratio,
            cost: r.cost,
            budget: r.budget,
            poses: r.poses.len(),
        }
    }
}

fn num(x: f64) -> String {
    format!("{}", round_significant(x))
}

/// Sweep table as CSV, one row per (sweep value, algorithm).
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("parameter,value,algorithm,quality,opt,percent_of_opt,cost,budget,poses\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.parameter.map_or("none", |p| p.name()),
            r.value.map_or(String::new(), num),
            r.algorithm,
            num(r.quality),
            num(r.opt),
            num(r.percent_of_opt),
            num(r.cost),
            num(r.budget),
            r.poses
        );
    }
    out
}

/// Wall time of one pipeline step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub sweep: Option<SweepPoint>,
    pub step: String,
    pub seconds: f64,
}

impl Timing {
    pub fn new(sweep: Option<SweepPoint>, step: &str, seconds: f64) -> Self {
        Self {
            sweep,
            step: step.to_owned(),
            seconds,
        }
    }
}

/// Write every report, `sweep.csv` and `timings.json` into `out_dir`.
///
/// Only `timings.json` differs between repeated identical runs.
pub fn emit_reports(output: &PipelineOutput, out_dir: &Path) -> Result<Vec<PathBuf>, PipelineError> {
    let io = |path: &Path, e: std::io::Error| {
        PipelineError::new(Stage::Output, format!("cannot write {}: {e}", path.display()))
    };
    std::fs::create_dir_all(out_dir).map_err(|e| io(out_dir, e))?;
    let mut files = Vec::new();
    let mut write = |name: String, text: String| -> Result<(), PipelineError> {
        let path = out_dir.join(name);
        std::fs::write(&path, text).map_err(|e| io(&path, e))?;
        files.push(path);
        Ok(())
    };
    for report in &output.reports {
        write(report.file_name(), to_report_json(report))?;
    }
    write("sweep.csv".into(), sweep_csv(&output.sweep))?;
    write("timings.json".into(), to_report_json(&output.timings))?;
    Ok(files)
}
