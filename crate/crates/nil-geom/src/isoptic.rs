//! Translation-like isoptic surfaces of translation-curve segments.
//!
//! The segment runs from the origin to a chosen endpoint along a translation
//! curve. At an exterior point p the segment subtends the angle between the
//! initial tangents, taken at p after pulling p to the origin, of the
//! translation curves from p to the two segment endpoints. The isoptic
//! surface for a viewing angle α is the zero set of `cos(angle) - cos(α)`.
//!
//! For the right angle α = π/2 and a fibre-directed segment (0, 0, c) the
//! surface is a translated sphere of the model, the Thaloid; see
//! [`thaloid_sphere`].

use crate::curve::translation_distance;
use crate::error::{NilError, Result};
use crate::point::NilPoint;
use crate::translation::NilTranslation;

/// Relative cutoff under which a sample point counts as sitting on a
/// segment endpoint, where the subtended angle is undefined.
const ENDPOINT_GUARD: f64 = 1e-9;

/// Cosine of the angle the segment from the origin to `endpoint` subtends
/// at `p`.
///
/// Fails with [`NilError::UndefinedAtEndpoint`] when p is within
/// `1e-9 * segment length` of either endpoint.
pub fn isoptic_cos(endpoint: NilPoint, p: NilPoint) -> Result<f64> {
    let r = translation_distance(NilPoint::ORIGIN, endpoint);
    let (a, b, c) = (endpoint.x, endpoint.y, endpoint.z);
    let (x, y, z) = (p.x, p.y, p.z);
    // Initial tangents at p, expressed in the chart pulled back by the
    // translation taking p to the origin. Their norms equal the distances
    // from p to the two endpoints, so the guard below is a distance test.
    let t1 = (-x, -y, x * y / 2.0 - z);
    let t2 = (a - x, b - y, c - z + (x + a) * (y - b) / 2.0);
    let n1 = (t1.0 * t1.0 + t1.1 * t1.1 + t1.2 * t1.2).sqrt();
    let n2 = (t2.0 * t2.0 + t2.1 * t2.1 + t2.2 * t2.2).sqrt();
    if n1.min(n2) < ENDPOINT_GUARD * r {
        return Err(NilError::UndefinedAtEndpoint);
    }
    let dot = t1.0 * t2.0 + t1.1 * t2.1 + t1.2 * t2.2;
    Ok((dot / (n1 * n2)).clamp(-1.0, 1.0))
}

/// A validated isoptic surface description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsopticSpec {
    endpoint: NilPoint,
    alpha: f64,
    include_supplementary: bool,
}

/// One scalar-field sample; `cos_angle` is None on the endpoint guard.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub point: NilPoint,
    pub cos_angle: Option<f64>,
}

impl IsopticSpec {
    /// Validates the segment (endpoint distinct from the origin) and the
    /// angle (strictly between 0 and π).
    pub fn new(endpoint: NilPoint, alpha: f64, include_supplementary: bool) -> Result<IsopticSpec> {
        if translation_distance(NilPoint::ORIGIN, endpoint) <= 1e-12 {
            return Err(NilError::DegenerateSegment);
        }
        if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
            return Err(NilError::AlphaOutOfRange(alpha));
        }
        Ok(IsopticSpec {
            endpoint,
            alpha,
            include_supplementary,
        })
    }

    pub fn endpoint(&self) -> NilPoint {
        self.endpoint
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn include_supplementary(&self) -> bool {
        self.include_supplementary
    }

    pub fn segment_length(&self) -> f64 {
        translation_distance(NilPoint::ORIGIN, self.endpoint)
    }

    pub fn cos_at(&self, p: NilPoint) -> Result<f64> {
        isoptic_cos(self.endpoint, p)
    }

    /// Signed residual whose zero set is the surface: `cos(angle) - cos(α)`,
    /// or `cos²(angle) - cos²(α)` when the supplementary angle π - α is
    /// included (that form vanishes on the union of both surfaces).
    pub fn residual_at(&self, p: NilPoint) -> Result<f64> {
        let cos = self.cos_at(p)?;
        let target = self.alpha.cos();
        Ok(if self.include_supplementary {
            cos * cos - target * target
        } else {
            cos - target
        })
    }

    pub fn field_sample(&self, p: NilPoint) -> FieldSample {
        FieldSample {
            point: p,
            cos_angle: self.cos_at(p).ok(),
        }
    }

    /// Default sampling box: the bounding box of the two segment endpoints
    /// padded per axis by 1.5 segment lengths, stretched by 1/tan(α/2) for
    /// acute viewing angles since their surfaces reach farther out.
    pub fn default_box(&self) -> ([f64; 3], [f64; 3]) {
        let r = self.segment_length();
        let reach = if self.alpha < std::f64::consts::FRAC_PI_2 {
            1.0 / (self.alpha / 2.0).tan()
        } else {
            1.0
        };
        let margin = 1.5 * r * reach;
        let e = self.endpoint;
        let lo = [
            e.x.min(0.0) - margin,
            e.y.min(0.0) - margin,
            e.z.min(0.0) - margin,
        ];
        let hi = [
            e.x.max(0.0) + margin,
            e.y.max(0.0) + margin,
            e.z.max(0.0) + margin,
        ];
        (lo, hi)
    }
}

/// A segment between two arbitrary points, reduced to standard position.
///
/// `to_frame` is the translation pulling the first point to the origin;
/// the stored endpoint is the image of the second point under it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentFrame {
    pub endpoint: NilPoint,
    pub to_frame: NilTranslation,
}

impl SegmentFrame {
    /// Maps a point of the standard frame back to the original coordinates.
    pub fn to_world(&self, p: NilPoint) -> NilPoint {
        self.to_frame.inverse().apply(p)
    }
}

/// Pulls the segment from p1 to p2 into standard position with p1 at the
/// origin. Fails when the points coincide.
pub fn normalize_segment(p1: NilPoint, p2: NilPoint) -> Result<SegmentFrame> {
    if translation_distance(p1, p2) <= 1e-12 {
        return Err(NilError::DegenerateSegment);
    }
    let to_frame = NilTranslation::to(p1).inverse();
    Ok(SegmentFrame {
        endpoint: to_frame.apply(p2),
        to_frame,
    })
}

/// Centre and radius of the Thaloid: the right-angle isoptic surface of the
/// fibre segment from the origin to (0, 0, c) is the model sphere of radius
/// |c|/2 translated to (0, 0, c/2).
pub fn thaloid_sphere(c: f64) -> Result<(NilPoint, f64)> {
    if c == 0.0 {
        return Err(NilError::ZeroSegment);
    }
    if !c.is_finite() {
        return Err(NilError::NonFinite(0.0, 0.0, c));
    }
    Ok((NilPoint::new(0.0, 0.0, c / 2.0), c.abs() / 2.0))
}

/// Worst |cos(angle) - 0| over a translated model sphere of radius r/2
/// about the segment midpoint, where r is the segment length.
///
/// For fibre segments this is rounding noise (the sphere is exactly the
/// right-angle isoptic surface); for slanted segments it is order one,
/// which is how the two cases are told apart.
///
/// Sphere points that land on the segment's translation curve or on its
/// mirror locus through the endpoint subtend a straight or undefined angle
/// rather than a right one even in the fibre case, so a thin neighbourhood
/// of those curves is excluded from the scan.
pub fn thaloid_deviation(endpoint: NilPoint) -> Result<f64> {
    let spec = IsopticSpec::new(endpoint, std::f64::consts::FRAC_PI_2, false)?;
    let r = spec.segment_length();
    let radius = r / 2.0;
    let (a, b, c) = (endpoint.x, endpoint.y, endpoint.z);

    // Midpoint of the segment: the point at parameter r/2 of the
    // translation curve from the origin to the endpoint.
    let params = crate::curve::curve_params_to(endpoint)?;
    let mid = crate::curve::translation_curve(params.unit_tangent(), r / 2.0);
    let to_mid = NilTranslation::to(mid);

    let horiz = (a * a + b * b).sqrt();
    let (nphi, ntheta) = (64usize, 32usize);
    let mut worst = 0.0_f64;
    for i in 0..nphi {
        let phi = -std::f64::consts::PI
            + (i as f64 + 0.5) * (2.0 * std::f64::consts::PI / nphi as f64);
        for j in 0..ntheta {
            let theta = -std::f64::consts::FRAC_PI_2
                + (j as f64 + 0.5) * (std::f64::consts::PI / ntheta as f64);
            let s = crate::sphere::sphere_point(radius, phi, theta)?;
            let p = to_mid.apply(s);
            if horiz > 1e-12 {
                // In-plane distances from the vertical plane ay - bx = 0
                // holding the segment's curve and from its reflected copy.
                let d0 = (a * p.y - b * p.x).abs() / horiz;
                let d1 = (a * p.y - b * p.x - (2.0 * a * b - 4.0 * c)).abs() / horiz;
                if d0.min(d1) < 1e-6 * radius {
                    continue;
                }
            }
            match spec.cos_at(p) {
                Ok(cos) => worst = worst.max(cos.abs()),
                Err(NilError::UndefinedAtEndpoint) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    #[test]
    fn interior_fibre_point_sees_a_straight_angle() {
        let cos = isoptic_cos(NilPoint::new(0.0, 0.0, 4.0), NilPoint::new(0.0, 0.0, 2.0)).unwrap();
        assert_eq!(cos, -1.0);
    }

    #[test]
    fn known_right_angle_point() {
        let cos = isoptic_cos(NilPoint::new(0.0, 0.0, 4.0), NilPoint::new(2.0, 0.0, 2.0)).unwrap();
        assert!(cos.abs() < 1e-15, "{cos}");
    }

    #[test]
    fn endpoints_are_guarded() {
        let endpoint = NilPoint::new(1.0, 1.0, 2.0);
        for p in [NilPoint::ORIGIN, endpoint] {
            assert!(matches!(
                isoptic_cos(endpoint, p),
                Err(NilError::UndefinedAtEndpoint)
            ));
        }
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            IsopticSpec::new(NilPoint::ORIGIN, FRAC_PI_2, false),
            Err(NilError::DegenerateSegment)
        ));
        let endpoint = NilPoint::new(0.0, 0.0, 4.0);
        for alpha in [0.0, PI, -0.3, 3.5] {
            assert!(matches!(
                IsopticSpec::new(endpoint, alpha, false),
                Err(NilError::AlphaOutOfRange(_))
            ));
        }
        assert!(IsopticSpec::new(endpoint, FRAC_PI_3, true).is_ok());
    }

    #[test]
    fn residual_vanishes_on_the_surface() {
        let spec = IsopticSpec::new(NilPoint::new(0.0, 0.0, 4.0), FRAC_PI_2, false).unwrap();
        let on_surface = NilPoint::new(2.0, 0.0, 2.0);
        assert!(spec.residual_at(on_surface).unwrap().abs() < 1e-15);
        assert!(spec.field_sample(on_surface).cos_angle.is_some());
        assert!(spec.field_sample(NilPoint::ORIGIN).cos_angle.is_none());
    }

    #[test]
    fn supplementary_residuals_differ_by_a_constant_in_cos() {
        // cos² - cos²α is symmetric under α ↦ π - α, and the plain
        // residuals at the two angles differ by exactly 2 cos α.
        let endpoint = NilPoint::new(1.0, -2.0, 0.5);
        let alpha = 1.1;
        let plain = IsopticSpec::new(endpoint, alpha, false).unwrap();
        let supp = IsopticSpec::new(endpoint, PI - alpha, false).unwrap();
        let both = IsopticSpec::new(endpoint, alpha, true).unwrap();
        let both_flipped = IsopticSpec::new(endpoint, PI - alpha, true).unwrap();
        let p = NilPoint::new(2.0, 1.0, 3.0);
        let difference = supp.residual_at(p).unwrap() - plain.residual_at(p).unwrap();
        assert!((difference - 2.0 * alpha.cos()).abs() < 1e-12);
        let u = both.residual_at(p).unwrap();
        let v = both_flipped.residual_at(p).unwrap();
        assert!((u - v).abs() < 1e-15);
    }

    #[test]
    fn normalize_pulls_the_first_point_to_the_origin() {
        let p1 = NilPoint::new(-1.0, 1.0, 1.0);
        let p2 = NilPoint::new(0.5, 1.5, 0.5);
        let frame = normalize_segment(p1, p2).unwrap();
        assert_eq!(frame.to_frame.apply(p1), NilPoint::ORIGIN);
        assert_eq!(frame.endpoint, NilPoint::new(1.5, 0.5, 0.0));
        let back = frame.to_world(frame.endpoint);
        assert!((back.x - p2.x).abs() < 1e-15);
        assert!((back.y - p2.y).abs() < 1e-15);
        assert!((back.z - p2.z).abs() < 1e-15);
        assert!(matches!(
            normalize_segment(p1, p1),
            Err(NilError::DegenerateSegment)
        ));
    }

    #[test]
    fn default_box_contains_both_endpoints_with_margin() {
        let spec = IsopticSpec::new(NilPoint::new(0.0, 0.0, 4.0), FRAC_PI_2, false).unwrap();
        let (lo, hi) = spec.default_box();
        assert_eq!(lo, [-6.0, -6.0, -6.0]);
        assert_eq!(hi, [6.0, 6.0, 10.0]);
        // Acute angles pad farther out.
        let acute = IsopticSpec::new(NilPoint::new(0.0, 0.0, 4.0), FRAC_PI_3, false).unwrap();
        let (alo, ahi) = acute.default_box();
        assert!(alo[0] < lo[0] && ahi[0] > hi[0]);
    }

    #[test]
    fn thaloid_sphere_parameters() {
        let (centre, radius) = thaloid_sphere(4.0).unwrap();
        assert_eq!(centre, NilPoint::new(0.0, 0.0, 2.0));
        assert_eq!(radius, 2.0);
        let (centre, radius) = thaloid_sphere(-2.0).unwrap();
        assert_eq!(centre, NilPoint::new(0.0, 0.0, -1.0));
        assert_eq!(radius, 1.0);
        assert!(matches!(thaloid_sphere(0.0), Err(NilError::ZeroSegment)));
    }

    #[test]
    fn fibre_segment_deviation_is_rounding_noise() {
        let dev = thaloid_deviation(NilPoint::new(0.0, 0.0, 4.0)).unwrap();
        assert!(dev < 1e-12, "{dev}");
    }

    #[test]
    fn slanted_segment_deviation_is_visible() {
        let dev = thaloid_deviation(NilPoint::new(1.0, 1.0, 2.0)).unwrap();
        assert!(dev > 1e-3, "{dev}");
        assert!((dev - 0.2491628).abs() < 1e-4, "{dev}");
    }
}
