use crate::point::NilPoint;

/// The right translation carrying the origin to a target point.
///
/// Acting on q = (x, y, z) gives (x + px, y + py, z + y·px + pz). The action
/// is a collineation of the projective model and an isometry of the
/// translation distance. Stored as the target triple; the 4×4 matrix form is
/// only ever materialized by oracle tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NilTranslation {
    px: f64,
    py: f64,
    pz: f64,
}

impl NilTranslation {
    pub const IDENTITY: NilTranslation = NilTranslation {
        px: 0.0,
        py: 0.0,
        pz: 0.0,
    };

    /// The translation mapping the origin onto `target`.
    pub fn to(target: NilPoint) -> NilTranslation {
        NilTranslation {
            px: target.x,
            py: target.y,
            pz: target.z,
        }
    }

    /// Image of the origin.
    pub fn target(&self) -> NilPoint {
        NilPoint {
            x: self.px,
            y: self.py,
            z: self.pz,
        }
    }

    /// Applies the translation to `q`.
    pub fn apply(&self, q: NilPoint) -> NilPoint {
        NilPoint {
            x: q.x + self.px,
            y: q.y + self.py,
            z: q.z + q.y * self.px + self.pz,
        }
    }

    /// The inverse translation. Its target is the group inverse of the
    /// target point: (-px, -py, px·py - pz), so the image of q works out to
    /// (qx - px, qy - py, px·py - px·qy - pz + qz).
    pub fn inverse(&self) -> NilTranslation {
        NilTranslation {
            px: -self.px,
            py: -self.py,
            pz: self.px * self.py - self.pz,
        }
    }

    /// The single translation equal to `self` followed by `other`.
    ///
    /// The group product is non-commutative: the z part picks up py·qx.
    pub fn then(&self, other: &NilTranslation) -> NilTranslation {
        NilTranslation {
            px: self.px + other.px,
            py: self.py + other.py,
            pz: self.pz + other.pz + self.py * other.px,
        }
    }
}
