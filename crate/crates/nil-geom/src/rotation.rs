use crate::point::NilPoint;

/// Rotation through `omega` about the z-axis, an isometry fixing the origin.
///
/// The x, y pair rotates linearly; the z image needs quadratic correction
/// terms, chosen so that the central lift z - xy/2 is invariant. That makes
/// the map the conjugate of a linear rotation by the shear (x, y, z) ↦
/// (x, y, z - xy/2), and it preserves the translation distance from the
/// origin exactly.
pub fn rotate_z(p: NilPoint, omega: f64) -> NilPoint {
    let (s, c) = omega.sin_cos();
    let (s2, c2) = (2.0 * omega).sin_cos();
    NilPoint {
        x: p.x * c - p.y * s,
        y: p.x * s + p.y * c,
        z: p.z - p.x * p.y / 2.0
            + (p.x * p.x - p.y * p.y) * s2 / 4.0
            + p.x * p.y * c2 / 2.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::translation_distance;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_angle_is_identity() {
        let p = NilPoint::new(1.2, -0.7, 3.0);
        let q = rotate_z(p, 0.0);
        assert!((q.x - p.x).abs() < 1e-15);
        assert!((q.y - p.y).abs() < 1e-15);
        assert!((q.z - p.z).abs() < 1e-15);
    }

    #[test]
    fn z_axis_is_fixed() {
        let p = NilPoint::new(0.0, 0.0, 2.5);
        for omega in [-2.0, 0.3, 1.9] {
            assert_eq!(rotate_z(p, omega), p);
        }
    }

    #[test]
    fn preserves_distance_from_the_origin() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..2000 {
            let p = NilPoint::new(
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
            );
            let omega = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
            let d0 = translation_distance(NilPoint::ORIGIN, p);
            let d1 = translation_distance(NilPoint::ORIGIN, rotate_z(p, omega));
            assert!((d0 - d1).abs() < 1e-10, "{p:?} omega={omega}");
        }
    }
}
