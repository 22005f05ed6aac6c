//! Translation spheres about the origin.
//!
//! The sphere of radius r is the locus at translation distance r from the
//! origin. It satisfies the implicit equation x² + y² + (z - xy/2)² = r²,
//! so the only non-Euclidean feature in these coordinates is the xy/2 lift.

use crate::error::{NilError, Result};
use crate::point::NilPoint;

/// The sphere point of radius `r` at longitude `phi` and altitude `theta`.
///
/// Equivalently, the translation curve with tangent angles (φ, θ) evaluated
/// at arc length r.
pub fn sphere_point(r: f64, phi: f64, theta: f64) -> Result<NilPoint> {
    // NaN fails this too, so non-finite radii are rejected along with r <= 0.
    if r.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(NilError::NonPositiveRadius(r));
    }
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    Ok(NilPoint {
        x: r * ct * cp,
        y: r * ct * sp,
        z: r * r / 2.0 * ct * ct * cp * sp + r * st,
    })
}

/// Signed defect of `p` against the implicit sphere equation:
/// x² + y² + (z - xy/2)² - r².
pub fn sphere_residual(p: NilPoint, r: f64) -> Result<f64> {
    if r.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(NilError::NonPositiveRadius(r));
    }
    let lift = p.z - p.x * p.y / 2.0;
    Ok(p.x * p.x + p.y * p.y + lift * lift - r * r)
}
