use std::f64::consts::TAU;

use nalgebra::{Quaternion, UnitQuaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DiscretizationError;

/// Uniformly distributed rotations (Shoemake's subgroup algorithm).
pub fn sample_orientations(
    count: usize,
    seed: u64,
) -> Result<Vec<UnitQuaternion<f64>>, DiscretizationError> {
    if count == 0 {
        return Err(DiscretizationError::NonPositive("orientation count"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let u1: f64 = rng.random();
            let u2: f64 = rng.random();
            let u3: f64 = rng.random();
            let (r1, r2) = ((1.0 - u1).sqrt(), u1.sqrt());
            let (s2, c2) = (TAU * u2).sin_cos();
            let (s3, c3) = (TAU * u3).sin_cos();
            UnitQuaternion::new_normalize(Quaternion::new(r2 * c3, r1 * s2, r1 * c2, r2 * s3))
        })
        .collect())
}

/// Geodesic rotation angle between two orientations in radians, in `[0, π]`.
///
/// Equals the axis-angle magnitude of the relative rotation; `q` and `-q`
/// are treated as the same rotation.
pub fn orientation_distance(a: &UnitQuaternion<f64>, b: &UnitQuaternion<f64>) -> f64 {
    let rel = a.conjugate() * b;
    2.0 * rel.imag().norm().atan2(rel.w.abs())
}
