use nalgebra::{Point3, Vector3};
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::geometry::Pose;

/// Stand-in for a robot simulator's state-validity queries.
///
/// Positions are filtered once up front; full poses are checked lazily by
/// the planner just before a pose joins a solution. Implementations must
/// satisfy `pose_reachable(p, o) ⇒ position_reachable(p)`.
pub trait ReachabilityPredicate: Send + Sync {
    fn position_reachable(&self, position: &Point3<f64>) -> bool;

    fn pose_reachable(&self, pose: &Pose) -> bool {
        self.position_reachable(&pose.position)
    }
}

/// Every pose is reachable.
#[derive(Clone, Copy, Debug, Default)]
pub struct AllReachable;

impl ReachabilityPredicate for AllReachable {
    fn position_reachable(&self, _: &Point3<f64>) -> bool {
        true
    }
}

/// Geometric reachability predicates usable from configuration files.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ReachabilitySpec {
    #[default]
    All,
    /// Reachable iff `position[axis] >= offset`.
    HalfSpace { axis: usize, offset: f64 },
    /// Reachable iff the position is strictly outside the sphere.
    SphereFree { center: [f64; 3], radius: f64 },
}

impl ReachabilityPredicate for ReachabilitySpec {
    fn position_reachable(&self, p: &Point3<f64>) -> bool {
        match *self {
            ReachabilitySpec::All => true,
            ReachabilitySpec::HalfSpace { axis, offset } => p[axis.min(2)] >= offset,
            ReachabilitySpec::SphereFree { center, radius } => {
                (p.coords - Vector3::from(center)).norm() > radius
            }
        }
    }
}

/// Adapter turning a pair of closures into a predicate.
pub struct FnReachability<P, Q> {
    pub position: P,
    pub pose: Q,
}

impl<P, Q> ReachabilityPredicate for FnReachability<P, Q>
where
    P: Fn(&Point3<f64>) -> bool + Send + Sync,
    Q: Fn(&Pose) -> bool + Send + Sync,
{
    fn position_reachable(&self, position: &Point3<f64>) -> bool {
        (self.position)(position)
    }

    fn pose_reachable(&self, pose: &Pose) -> bool {
        (self.position)(&pose.position) && (self.pose)(pose)
    }
}
