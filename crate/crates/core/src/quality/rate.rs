use nalgebra::Point3;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::geometry::ModelPoint;

/// Instantaneous measurement quality of a surface point seen from a position.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum QualityRateFunction {
    /// 1 when the viewing direction is within `max_angle` degrees of the
    /// surface normal (boundary included), else 0.
    Coverage { max_angle: f64 },
    /// Projected area `cos γ / r²`, zero closer than `min_distance` or at
    /// grazing and back-facing angles.
    ProjectedArea { min_distance: f64 },
}

impl QualityRateFunction {
    pub fn coverage(max_angle_deg: f64) -> Self {
        QualityRateFunction::Coverage {
            max_angle: max_angle_deg,
        }
    }

    pub fn projected_area(min_distance: f64) -> Self {
        QualityRateFunction::ProjectedArea { min_distance }
    }
}

/// Quality rate `q_m(v)` of `point` measured from `view_position`.
///
/// Visibility and frustum membership are the caller's responsibility.
pub fn quality_rate(
    point: &ModelPoint,
    view_position: &Point3<f64>,
    rate: &QualityRateFunction,
) -> f64 {
    let to_view = view_position - point.position;
    let r = to_view.norm();
    if r == 0.0 {
        return 0.0;
    }
    let cos_gamma = (point.normal.dot(&to_view) / r).clamp(-1.0, 1.0);
    match *rate {
        QualityRateFunction::Coverage { max_angle } => {
            if cos_gamma.acos().to_degrees() <= max_angle {
                1.0
            } else {
                0.0
            }
        }
        QualityRateFunction::ProjectedArea { min_distance } => {
            if r < min_distance || cos_gamma <= 0.0 {
                0.0
            } else {
                cos_gamma / (r * r)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use nalgebra::Vector3;

    use super::*;

    fn surface_point() -> ModelPoint {
        ModelPoint {
            position: Point3::origin(),
            normal: Vector3::z(),
            source_triangle: 0,
        }
    }

    fn view_at(gamma_deg: f64, r: f64) -> Point3<f64> {
        let g = gamma_deg.to_radians();
        Point3::new(r * g.sin(), 0.0, r * g.cos())
    }

    #[test]
    fn projected_area_on_axis() {
        let q = quality_rate(&surface_point(), &view_at(0.0, 1.0), &QualityRateFunction::projected_area(0.1));
        assert!((q - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projected_area_oblique() {
        let q = quality_rate(&surface_point(), &view_at(60.0, 2.0), &QualityRateFunction::projected_area(0.1));
        assert!((q - 0.125).abs() < 1e-12);
    }

    #[test]
    fn projected_area_cutoffs() {
        let f = QualityRateFunction::projected_area(0.5);
        assert_eq!(quality_rate(&surface_point(), &view_at(0.0, 0.4), &f), 0.0);
        assert_eq!(quality_rate(&surface_point(), &Point3::new(1.0, 0.0, 0.0), &f), 0.0);
        assert_eq!(quality_rate(&surface_point(), &view_at(120.0, 1.0), &f), 0.0);
    }

    #[test]
    fn coverage_threshold() {
        let f = QualityRateFunction::coverage(30.0);
        assert_eq!(quality_rate(&surface_point(), &view_at(31.0, 1.0), &f), 0.0);
        assert_eq!(quality_rate(&surface_point(), &view_at(29.0, 1.0), &f), 1.0);
    }

    #[test]
    fn coincident_view_is_zero() {
        let f = QualityRateFunction::coverage(30.0);
        assert_eq!(quality_rate(&surface_point(), &Point3::origin(), &f), 0.0);
    }
}
