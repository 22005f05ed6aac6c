//! Translation curves, their parameters, and the translation distance.
//!
//! A translation curve drags a fixed initial tangent along by right
//! translations; from the origin with tangent (u, v, w) it has the closed
//! form x = u t, y = v t, z = u v t²/2 + w t. For a unit tangent the curve
//! is unit speed, so the parameter is arc length, and any point off the
//! origin is reached by exactly one such curve. The translation distance
//! between two points is the arc length of the connecting curve after
//! pulling one endpoint to the origin.

use crate::error::{NilError, Result};
use crate::point::{NilPoint, TangentVector};
use crate::translation::NilTranslation;

/// Evaluates the translation curve with initial tangent `t0` at parameter `t`.
pub fn translation_curve(t0: TangentVector, t: f64) -> NilPoint {
    NilPoint {
        x: t0.u * t,
        y: t0.v * t,
        z: 0.5 * t0.u * t0.v * t * t + t0.w * t,
    }
}

/// Longitude, altitude, and arc length of the translation curve from the
/// origin to a given endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveParams {
    /// Longitude of the initial tangent, in [-π, π].
    pub phi: f64,
    /// Altitude of the initial tangent, in [-π/2, π/2].
    pub theta: f64,
    /// Arc length, ≥ 0.
    pub r: f64,
}

impl CurveParams {
    /// The unit initial tangent (cos θ cos φ, cos θ sin φ, sin θ).
    pub fn unit_tangent(&self) -> TangentVector {
        TangentVector::from_angles(self.phi, self.theta)
    }

    /// Rebuilds the endpoint; inverts [`curve_params_to`] within 1e-10.
    pub fn endpoint(&self) -> NilPoint {
        translation_curve(self.unit_tangent(), self.r)
    }
}

/// Solves for the parameters of the translation curve from the origin to `p`.
///
/// φ = atan2(b, a) keeps (cos φ, sin φ) parallel, not antiparallel, to
/// (a, b), which makes the arc length nonnegative. The altitude absorbs the
/// quadratic drift of the z coordinate: θ = atan2(c - ab/2, hypot(a, b)),
/// and r = √(a² + b² + (c - ab/2)²) in closed form. The axis cases fall out
/// of the same expressions: a fibre endpoint (0, 0, c) gets θ = ±π/2 with
/// the sign of c and r = |c|; an endpoint (a, 0, 0) gets φ ∈ {0, π}, θ = 0,
/// r = |a|.
pub fn curve_params_to(p: NilPoint) -> Result<CurveParams> {
    let rho = p.x.hypot(p.y);
    let lift = p.z - p.x * p.y / 2.0;
    let r = rho.hypot(lift);
    if r == 0.0 {
        return Err(NilError::ZeroLength);
    }
    Ok(CurveParams {
        phi: p.y.atan2(p.x),
        theta: lift.atan2(rho),
        r,
    })
}

/// Arc length of the translation curve joining `p` and `q`; zero when they
/// coincide. Symmetric within 1e-12 although the pullbacks differ.
pub fn translation_distance(p: NilPoint, q: NilPoint) -> f64 {
    let image = NilTranslation::to(p).inverse().apply(q);
    let lift = image.z - image.x * image.y / 2.0;
    image.x.hypot(image.y).hypot(lift)
}

/// Non-normalized initial tangent of the translation curve from the origin
/// toward `p`: (x, y, z - xy/2).
///
/// Its Euclidean norm equals the translation distance from the origin to
/// `p`, so callers that need both the direction and the distance get them in
/// one evaluation. Normalize with [`TangentVector::normalized`] when only
/// the direction matters.
pub fn tangent_toward(p: NilPoint) -> Result<TangentVector> {
    let t = TangentVector::new(p.x, p.y, p.z - p.x * p.y / 2.0);
    if t.norm() == 0.0 {
        return Err(NilError::ZeroLength);
    }
    Ok(t)
}

/// Angle between two tangents at the origin, where the metric is Euclidean.
///
/// Normalizes internally and clamps the cosine into [-1, 1] before arccos,
/// so rounding can never push the argument out of range. Result in [0, π].
pub fn angle_at_origin(t1: TangentVector, t2: TangentVector) -> Result<f64> {
    let n1 = t1.norm();
    let n2 = t2.norm();
    if n1 == 0.0 || n2 == 0.0 {
        return Err(NilError::ZeroVector);
    }
    Ok((t1.dot(&t2) / (n1 * n2)).clamp(-1.0, 1.0).acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn fibre_curve_climbs_straight() {
        let p = translation_curve(TangentVector::new(0.0, 0.0, 1.0), 3.0);
        assert_eq!(p, NilPoint::new(0.0, 0.0, 3.0));
    }

    #[test]
    fn diagonal_curve_picks_up_the_quadratic_term() {
        let p = translation_curve(TangentVector::new(1.0, 1.0, 0.0), 1.0);
        assert_eq!(p, NilPoint::new(1.0, 1.0, 0.5));
    }

    #[test]
    fn fibre_endpoint_params() {
        let up = curve_params_to(NilPoint::new(0.0, 0.0, 4.0)).unwrap();
        assert_eq!(up.theta, FRAC_PI_2);
        assert_eq!(up.r, 4.0);
        let down = curve_params_to(NilPoint::new(0.0, 0.0, -4.0)).unwrap();
        assert_eq!(down.theta, -FRAC_PI_2);
        assert_eq!(down.r, 4.0);
    }

    #[test]
    fn x_axis_endpoint_params() {
        let p = curve_params_to(NilPoint::new(2.0, 0.0, 0.0)).unwrap();
        assert_eq!((p.phi, p.theta, p.r), (0.0, 0.0, 2.0));
        let n = curve_params_to(NilPoint::new(-2.0, 0.0, 0.0)).unwrap();
        assert_eq!((n.phi, n.theta, n.r), (PI, 0.0, 2.0));
    }

    #[test]
    fn origin_has_no_curve() {
        assert!(matches!(
            curve_params_to(NilPoint::ORIGIN),
            Err(NilError::ZeroLength)
        ));
    }

    #[test]
    fn params_stay_in_range_and_reconstruct() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..2000 {
            let p = NilPoint::new(
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
            );
            let cp = curve_params_to(p).unwrap();
            assert!((-PI..=PI).contains(&cp.phi));
            assert!((-FRAC_PI_2..=FRAC_PI_2).contains(&cp.theta));
            assert!(cp.r >= 0.0);
            let q = cp.endpoint();
            assert!(
                (q.x - p.x).abs().max((q.y - p.y).abs()).max((q.z - p.z).abs()) < 1e-10,
                "{p:?} -> {cp:?} -> {q:?}"
            );
        }
    }

    #[test]
    fn fibre_distance_is_the_height() {
        let d = translation_distance(NilPoint::ORIGIN, NilPoint::new(0.0, 0.0, 4.0));
        assert_eq!(d, 4.0);
    }

    #[test]
    fn coincident_points_are_at_distance_zero() {
        let p = NilPoint::new(1.3, -0.2, 5.0);
        assert_eq!(translation_distance(p, p), 0.0);
    }

    #[test]
    fn tangent_toward_fibre_point() {
        let t = tangent_toward(NilPoint::new(0.0, 0.0, 2.5)).unwrap();
        assert_eq!((t.u, t.v, t.w), (0.0, 0.0, 2.5));
    }

    #[test]
    fn tangent_norm_is_origin_distance() {
        let p = NilPoint::new(1.0, -2.0, 0.7);
        let t = tangent_toward(p).unwrap();
        let d = translation_distance(NilPoint::ORIGIN, p);
        assert!((t.norm() - d).abs() < 1e-15);
    }

    #[test]
    fn right_angle_and_straight_angle() {
        let ex = TangentVector::new(1.0, 0.0, 0.0);
        let ey = TangentVector::new(0.0, 1.0, 0.0);
        assert_eq!(angle_at_origin(ex, ey).unwrap(), FRAC_PI_2);
        assert_eq!(angle_at_origin(ex, -ex).unwrap(), PI);
        assert_eq!(angle_at_origin(ex, ex).unwrap(), 0.0);
    }

    #[test]
    fn zero_vector_angle_is_rejected() {
        let z = TangentVector::new(0.0, 0.0, 0.0);
        let t = TangentVector::new(1.0, 0.0, 0.0);
        assert!(matches!(angle_at_origin(z, t), Err(NilError::ZeroVector)));
    }
}
