use nalgebra::Point3;

use super::{GeometryError, Pose};

/// Circular view cone described by its full opening angle in degrees.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frustum {
    perspective_angle: f64,
}

impl Frustum {
    pub fn new(perspective_angle_deg: f64) -> Result<Self, GeometryError> {
        if !(perspective_angle_deg > 0.0 && perspective_angle_deg < 180.0) {
            return Err(GeometryError::OutOfRange {
                name: "perspective angle",
                value: perspective_angle_deg,
            });
        }
        Ok(Self {
            perspective_angle: perspective_angle_deg,
        })
    }

    pub fn perspective_angle(&self) -> f64 {
        self.perspective_angle
    }

    pub fn half_angle_rad(&self) -> f64 {
        (0.5 * self.perspective_angle).to_radians()
    }
}

/// Whether `point` lies inside the view cone of `pose`: strictly in front of
/// the sensor and within half the perspective angle of the optical axis.
pub fn in_frustum(pose: &Pose, point: &Point3<f64>, frustum: &Frustum) -> bool {
    let to_point = point - pose.position;
    let dist = to_point.norm();
    if dist == 0.0 {
        return false;
    }
    let forward = pose.optical_axis().dot(&to_point);
    if forward <= 0.0 {
        return false;
    }
    let off_axis = (forward / dist).clamp(-1.0, 1.0).acos();
    off_axis <= frustum.half_angle_rad()
}
