use crate::error::{NilError, Result};

/// A point of the projective model in affine coordinates.
///
/// The homogeneous representative is (1, x, y, z); the leading 1 is implicit
/// and never stored, since every collineation used here fixes it.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NilPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl NilPoint {
    pub const ORIGIN: NilPoint = NilPoint { x: 0.0, y: 0.0, z: 0.0 };

    /// Builds a point from finite coordinates.
    ///
    /// Panics on non-finite input; use [`NilPoint::try_new`] for unvalidated
    /// data.
    pub fn new(x: f64, y: f64, z: f64) -> NilPoint {
        Self::try_new(x, y, z).expect("finite coordinates")
    }

    /// Fallible constructor for untrusted input.
    pub fn try_new(x: f64, y: f64, z: f64) -> Result<NilPoint> {
        if x.is_finite() && y.is_finite() && z.is_finite() {
            Ok(NilPoint { x, y, z })
        } else {
            Err(NilError::NonFinite(x, y, z))
        }
    }

    /// Largest coordinate magnitude; the scale for relative tolerances.
    pub fn coordinate_scale(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for NilPoint {
    fn from(a: [f64; 3]) -> NilPoint {
        NilPoint::new(a[0], a[1], a[2])
    }
}

/// A tangent vector anchored at the origin, where the metric is Euclidean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl TangentVector {
    pub fn new(u: f64, v: f64, w: f64) -> TangentVector {
        debug_assert!(u.is_finite() && v.is_finite() && w.is_finite());
        TangentVector { u, v, w }
    }

    /// The unit tangent at longitude `phi` and altitude `theta`:
    /// (cos θ cos φ, cos θ sin φ, sin θ).
    pub fn from_angles(phi: f64, theta: f64) -> TangentVector {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        TangentVector::new(ct * cp, ct * sp, st)
    }

    pub fn dot(&self, other: &TangentVector) -> f64 {
        self.u * other.u + self.v * other.v + self.w * other.w
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Whether the vector is unit length within 1e-12.
    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-12
    }

    pub fn normalized(&self) -> Result<TangentVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(NilError::ZeroVector);
        }
        Ok(TangentVector::new(self.u / n, self.v / n, self.w / n))
    }
}

impl std::ops::Neg for TangentVector {
    type Output = TangentVector;

    fn neg(self) -> TangentVector {
        TangentVector::new(-self.u, -self.v, -self.w)
    }
}

impl std::ops::Add for TangentVector {
    type Output = TangentVector;

    fn add(self, rhs: TangentVector) -> TangentVector {
        TangentVector::new(self.u + rhs.u, self.v + rhs.v, self.w + rhs.w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_coordinates() {
        assert!(NilPoint::try_new(f64::NAN, 0.0, 0.0).is_err());
        assert!(NilPoint::try_new(0.0, f64::INFINITY, 0.0).is_err());
        assert!(NilPoint::try_new(1.0, -2.0, 3.0).is_ok());
    }

    #[test]
    fn angle_tangent_is_unit() {
        let t = TangentVector::from_angles(0.7, -0.3);
        assert!(t.is_unit());
    }

    #[test]
    fn normalizing_zero_fails() {
        assert!(matches!(
            TangentVector::new(0.0, 0.0, 0.0).normalized(),
            Err(NilError::ZeroVector)
        ));
    }
}
