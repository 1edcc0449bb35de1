use std::path::{Path, PathBuf};

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::{PipelineError, Stage};
use crate::discretization::ReachabilitySpec;
use crate::planner::Algorithm;
use crate::quality::QualityRateFunction;
use crate::tsp::{Estimator, TourShape};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// Inflation of the convex hull, meters.
    pub dilation: f64,
    /// Lattice spacing, meters.
    pub resolution: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Seeds {
    pub surface: u64,
    pub orientation: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Alpha,
    Beta,
    Budget,
    FrustumAngle,
    Resolution,
    Dilation,
    SurfaceSamples,
    Orientations,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::Alpha => "alpha",
            SweepParameter::Beta => "beta",
            SweepParameter::Budget => "budget",
            SweepParameter::FrustumAngle => "frustum_angle",
            SweepParameter::Resolution => "resolution",
            SweepParameter::Dilation => "dilation",
            SweepParameter::SurfaceSamples => "surface_samples",
            SweepParameter::Orientations => "orientations",
        }
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.to_owned()))
            .map_err(|_| format!("unknown sweep parameter `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

impl std::str::FromStr for SweepSpec {
    type Err = String;

    /// `param=v1,v2,...`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, list) = s
            .split_once('=')
            .ok_or_else(|| format!("sweep `{s}` is not of the form param=v1,v2,..."))?;
        let parameter = name.trim().parse()?;
        let values = list
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("sweep value `{v}`: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SweepSpec { parameter, values })
    }
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

/// Everything needed to reproduce a planning run.
///
/// Lengths are in meters and angles in degrees. A relative mesh path is
/// resolved against the directory of the configuration file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mesh: PathBuf,
    pub surface_samples: usize,
    pub grid: GridConfig,
    pub orientations: usize,
    pub seeds: Seeds,
    pub quality: QualityRateFunction,
    /// Full perspective angle of the sensor.
    pub frustum_angle: f64,
    pub alpha: f64,
    pub beta: f64,
    pub budget: f64,
    #[serde(default)]
    pub tour_shape: TourShape,
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub estimator: Estimator,
    #[serde(default)]
    pub reachability: ReachabilitySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn config_error(message: impl Into<String>) -> PipelineError {
    PipelineError::new(Stage::Config, message)
}

fn check(ok: bool, message: impl FnOnce() -> String) -> Result<(), PipelineError> {
    if ok {
        Ok(())
    } else {
        Err(config_error(message()))
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, PipelineError> {
        let config: RunConfig =
            serde_json::from_str(text).map_err(|e| config_error(format!("invalid configuration: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, PipelineError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    /// JSON Schema of the configuration file, as published in
    /// `config.schema.json`.
    pub fn json_schema() -> String {
        let mut text =
            serde_json::to_string_pretty(&schemars::schema_for!(RunConfig)).expect("schema serializes");
        text.push('\n');
        text
    }

    /// Check the ranges of every parameter, including each swept value.
    pub fn validate(&self) -> Result<(), PipelineError> {
        self.validate_point()?;
        if let Some(sweep) = &self.sweep {
            check(!sweep.values.is_empty(), || "sweep has no values".into())?;
            for &v in &sweep.values {
                self.at(sweep.parameter, v)?.validate_point()?;
            }
        }
        Ok(())
    }

    fn validate_point(&self) -> Result<(), PipelineError> {
        let finite_nonneg = |x: f64| x.is_finite() && x >= 0.0;
        check(self.surface_samples > 0, || "surface_samples must be positive".into())?;
        check(self.orientations > 0, || "orientations must be positive".into())?;
        check(finite_nonneg(self.grid.dilation), || {
            format!("grid dilation must be finite and non-negative, got {}", self.grid.dilation)
        })?;
        check(self.grid.resolution.is_finite() && self.grid.resolution > 0.0, || {
            format!("grid resolution must be positive, got {}", self.grid.resolution)
        })?;
        check(self.frustum_angle > 0.0 && self.frustum_angle < 180.0, || {
            format!("frustum_angle must lie in (0, 180), got {}", self.frustum_angle)
        })?;
        check(finite_nonneg(self.alpha), || format!("alpha must be non-negative, got {}", self.alpha))?;
        check((0.0..=1.0).contains(&self.beta), || {
            format!("beta must lie in [0, 1], got {}", self.beta)
        })?;
        check(self.budget > 0.0 && !self.budget.is_nan(), || {
            format!("budget must be positive, got {}", self.budget)
        })?;
        check(!self.algorithms.is_empty(), || "algorithm list is empty".into())?;
        match self.quality {
            QualityRateFunction::Coverage { max_angle } => {
                check(max_angle > 0.0 && max_angle <= 180.0, || {
                    format!("coverage max_angle must lie in (0, 180], got {max_angle}")
                })?
            }
            QualityRateFunction::ProjectedArea { min_distance } => {
                check(finite_nonneg(min_distance), || {
                    format!("projected_area min_distance must be non-negative, got {min_distance}")
                })?
            }
        }
        if let ReachabilitySpec::HalfSpace { axis, offset } = self.reachability {
            check(axis < 3 && offset.is_finite(), || {
                format!("half_space needs axis 0, 1 or 2 and a finite offset, got axis {axis}")
            })?;
        }
        Ok(())
    }

    /// Copy with one parameter replaced and the sweep removed.
    pub fn at(&self, parameter: SweepParameter, value: f64) -> Result<Self, PipelineError> {
        let count = |v: f64| {
            if v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
                Ok(v as usize)
            } else {
                Err(config_error(format!(
                    "{} needs a positive integer, got {v}",
                    parameter.name()
                )))
            }
        };
        let mut c = self.clone();
        c.sweep = None;
        match parameter {
            SweepParameter::Alpha => c.alpha = value,
            SweepParameter::Beta => c.beta = value,
            SweepParameter::Budget => c.budget = value,
            SweepParameter::FrustumAngle => c.frustum_angle = value,
            SweepParameter::Resolution => c.grid.resolution = value,
            SweepParameter::Dilation => c.grid.dilation = value,
            SweepParameter::SurfaceSamples => c.surface_samples = count(value)?,
            SweepParameter::Orientations => c.orientations = count(value)?,
        }
        Ok(c)
    }

    /// The configurations to run: one per sweep value, or the configuration
    /// itself when there is no sweep.
    pub fn points(&self) -> Result<Vec<(Option<(SweepParameter, f64)>, RunConfig)>, PipelineError> {
        match &self.sweep {
            None => Ok(vec![(None, self.clone())]),
            Some(sweep) => sweep
                .values
                .iter()
                .map(|&v| Ok((Some((sweep.parameter, v)), self.at(sweep.parameter, v)?)))
                .collect(),
        }
    }

    pub fn mesh_path(&self, base_dir: &Path) -> PathBuf {
        if self.mesh.is_absolute() {
            self.mesh.clone()
        } else {
            base_dir.join(&self.mesh)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_schema_is_current() {
        let published = include_str!("../../config.schema.json");
        assert_eq!(
            published,
            RunConfig::json_schema(),
            "regenerate with `cargo run --example config_schema > crates/core/config.schema.json`"
        );
    }

    pub(crate) const PLATE: &str = r#"{
        "mesh": "plate.obj",
        "surface_samples": 100,
        "grid": { "dilation": 0.2, "resolution": 0.1 },
        "orientations": 4,
        "seeds": { "surface": 1, "orientation": 2 },
        "quality": { "kind": "projected_area", "min_distance": 0.05 },
        "frustum_angle": 45.0,
        "alpha": 0.05,
        "beta": 0.01,
        "budget": 2.0,
        "algorithms": ["gcb", "greedy"],
        "reachability": { "kind": "half_space", "axis": 2, "offset": 0.05 }
    }"#;

    #[test]
    fn parses_with_defaults() {
        let c = RunConfig::from_json(PLATE).unwrap();
        assert_eq!(c.estimator, Estimator::Auto);
        assert_eq!(c.tour_shape, TourShape::Closed);
        assert_eq!(c.output_dir, PathBuf::from("out"));
        assert_eq!(RunConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn unknown_field_is_a_config_error() {
        let text = PLATE.replace("\"alpha\"", "\"alpah\"");
        let err = RunConfig::from_json(&text).unwrap_err();
        assert_eq!(err.stage, Stage::Config);
    }

    #[test]
    fn out_of_range_values_are_rejected() {
        for (from, to) in [
            ("\"beta\": 0.01", "\"beta\": 1.5"),
            ("\"frustum_angle\": 45.0", "\"frustum_angle\": 180.0"),
            ("[\"gcb\", \"greedy\"]", "[]"),
            ("\"budget\": 2.0", "\"budget\": 0.0"),
        ] {
            assert!(RunConfig::from_json(&PLATE.replace(from, to)).is_err(), "{to}");
        }
    }

    #[test]
    fn sweep_spec_parsing() {
        let s: SweepSpec = "budget=2,5,10".parse().unwrap();
        assert_eq!(s.parameter, SweepParameter::Budget);
        assert_eq!(s.values, vec![2.0, 5.0, 10.0]);
        assert!("speed=1".parse::<SweepSpec>().is_err());
        assert!("budget".parse::<SweepSpec>().is_err());
    }

    #[test]
    fn sweep_points_replace_the_parameter() {
        let mut c = RunConfig::from_json(PLATE).unwrap();
        c.sweep = Some("orientations=2,8".parse().unwrap());
        let points = c.points().unwrap();
        assert_eq!(points.len(), 2);
        assert_eq!(points[1].1.orientations, 8);
        assert!(points[1].1.sweep.is_none());
        c.sweep = Some("orientations=2.5".parse().unwrap());
        assert!(c.validate().is_err());
    }
}
