//! Interior angles and angle sums of translation triangles.
//!
//! A translation triangle joins three vertices pairwise by translation-curve
//! segments. The angle at a vertex is measured after pulling that vertex to
//! the origin, where the metric is Euclidean: it is the angle between the
//! initial tangents of the two curve segments leaving the pulled-back
//! vertex. The six unit tangents, viewed as points of the unit sphere, carry
//! the structure behind the main facts checked here: opposite tangents along
//! one side are antipodal, the angle sum is at least π, and the sum equals π
//! exactly when the six tangent points are coplanar, which happens whenever
//! the vertices lie in a common plane containing the z direction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{angle_at_origin, tangent_toward, translation_distance};
use crate::error::{NilError, Result};
use crate::point::{NilPoint, TangentVector};
use crate::translation::NilTranslation;

/// Default threshold on the coplanarity residual for the `coplanar` flag.
pub const COPLANARITY_TOL: f64 = 1e-9;

/// Index pairs into [`TriangleReport::tangent_points`] that are antipodal:
/// the two tangents along each side, seen from its two endpoints.
pub const ANTIPODAL_PAIRS: [(usize, usize); 3] = [(0, 2), (1, 4), (3, 5)];

/// Three pairwise distinct vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationTriangle {
    vertices: [NilPoint; 3],
}

impl TranslationTriangle {
    /// Validates that vertices are pairwise distinct: translation distance
    /// above 1e-12 times the coordinate scale.
    pub fn new(a1: NilPoint, a2: NilPoint, a3: NilPoint) -> Result<TranslationTriangle> {
        let vertices = [a1, a2, a3];
        let scale = vertices
            .iter()
            .map(NilPoint::coordinate_scale)
            .fold(1.0_f64, f64::max);
        for i in 0..3 {
            for j in (i + 1)..3 {
                if translation_distance(vertices[i], vertices[j]) <= 1e-12 * scale {
                    return Err(NilError::DegenerateTriangle(i, j));
                }
            }
        }
        Ok(TranslationTriangle { vertices })
    }

    pub fn vertices(&self) -> [NilPoint; 3] {
        self.vertices
    }
}

/// Angles and equality-case diagnostics of one triangle.
///
/// `tangent_points` holds the six unit tangents in the order
/// [toward a2 at a1, toward a3 at a1, toward a1 at a2, toward a3 at a2,
/// toward a1 at a3, toward a2 at a3]; see [`ANTIPODAL_PAIRS`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleReport {
    pub omegas: [f64; 3],
    /// omegas[0] + omegas[1] + omegas[2], exactly as computed.
    pub sum: f64,
    pub tangent_points: [TangentVector; 6],
    /// Whether the residual is below [`COPLANARITY_TOL`].
    pub coplanar: bool,
    /// Smallest singular value of the centered 6×3 tangent-point matrix.
    pub coplanarity_residual: f64,
}

/// Computes the three interior angles and the tangent-point diagnostics.
///
/// The first vertex is pulled to the origin first; the angle there is the
/// angle between the tangents toward the images of the other two vertices.
/// The remaining angles repeat the procedure from the images of a2 and a3.
pub fn interior_angles(tri: &TranslationTriangle) -> TriangleReport {
    let [a1, a2, a3] = tri.vertices();
    let pull1 = NilTranslation::to(a1).inverse();
    let b2 = pull1.apply(a2);
    let b3 = pull1.apply(a3);

    let (w1, t_a2_at_a1, t_a3_at_a1) = vertex_angle(b2, b3);
    let pull2 = NilTranslation::to(b2).inverse();
    let (w2, t_a1_at_a2, t_a3_at_a2) = vertex_angle(pull2.apply(NilPoint::ORIGIN), pull2.apply(b3));
    let pull3 = NilTranslation::to(b3).inverse();
    let (w3, t_a1_at_a3, t_a2_at_a3) = vertex_angle(pull3.apply(NilPoint::ORIGIN), pull3.apply(b2));

    let tangent_points = [
        t_a2_at_a1,
        t_a3_at_a1,
        t_a1_at_a2,
        t_a3_at_a2,
        t_a1_at_a3,
        t_a2_at_a3,
    ];
    let coplanarity_residual = coplanarity_residual(&tangent_points);
    TriangleReport {
        omegas: [w1, w2, w3],
        sum: w1 + w2 + w3,
        tangent_points,
        coplanar: coplanarity_residual < COPLANARITY_TOL,
        coplanarity_residual,
    }
}

/// Angle sum of the triangle; at least π up to rounding.
pub fn angle_sum(tri: &TranslationTriangle) -> f64 {
    interior_angles(tri).sum
}

/// Max over the three antipodal pairs of ‖t + t'‖; below 1e-10 for every
/// valid triangle.
pub fn antipodality_check(report: &TriangleReport) -> f64 {
    ANTIPODAL_PAIRS
        .iter()
        .map(|&(i, j)| (report.tangent_points[i] + report.tangent_points[j]).norm())
        .fold(0.0, f64::max)
}

/// Coplanarity of the six tangent points at an explicit tolerance.
///
/// The residual is the smallest singular value of the centered 6×3 matrix of
/// the points, a stable proxy for their distance to a common plane. Because
/// the points come in antipodal pairs the centroid sits at the origin, so a
/// small residual means the points hug a great circle of the unit sphere.
pub fn coplanarity_test(report: &TriangleReport, tol: f64) -> (bool, f64) {
    (report.coplanarity_residual < tol, report.coplanarity_residual)
}

fn vertex_angle(p: NilPoint, q: NilPoint) -> (f64, TangentVector, TangentVector) {
    let tp = tangent_toward(p).expect("vertices validated distinct");
    let tq = tangent_toward(q).expect("vertices validated distinct");
    let angle = angle_at_origin(tp, tq).expect("tangents nonzero");
    (
        angle,
        tp.normalized().expect("tangents nonzero"),
        tq.normalized().expect("tangents nonzero"),
    )
}

fn coplanarity_residual(points: &[TangentVector; 6]) -> f64 {
    let n = points.len() as f64;
    let cu = points.iter().map(|t| t.u).sum::<f64>() / n;
    let cv = points.iter().map(|t| t.v).sum::<f64>() / n;
    let cw = points.iter().map(|t| t.w).sum::<f64>() / n;
    let m = nalgebra::SMatrix::<f64, 6, 3>::from_fn(|i, j| match j {
        0 => points[i].u - cu,
        1 => points[i].v - cv,
        _ => points[i].w - cw,
    });
    let sv = m.svd(false, false).singular_values;
    sv.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Uniform random point in the [-5, 5]³ sampling box.
pub fn random_point<R: Rng>(rng: &mut R) -> NilPoint {
    NilPoint::new(
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
    )
}

/// Uniform random triangle with vertices in the [-5, 5]³ sampling box.
pub fn random_triangle<R: Rng>(rng: &mut R) -> TranslationTriangle {
    loop {
        let (a1, a2, a3) = (random_point(rng), random_point(rng), random_point(rng));
        if let Ok(tri) = TranslationTriangle::new(a1, a2, a3) {
            return tri;
        }
    }
}

/// Random triangle whose vertices all satisfy one equation αx + βy = γ,
/// that is, lie in a plane containing the z direction. Every such triangle
/// has angle sum exactly π, which makes this the equality-case generator.
///
/// Triples that are collinear inside the plane are rejected and resampled.
pub fn perpendicular_plane_triangle(seed: u64) -> TranslationTriangle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let psi = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let (ny, nx) = psi.sin_cos();
        let gamma = rng.random_range(-5.0..5.0);
        let s1: f64 = rng.random_range(-5.0..5.0);
        let h1: f64 = rng.random_range(-5.0..5.0);
        let s2: f64 = rng.random_range(-5.0..5.0);
        let h2: f64 = rng.random_range(-5.0..5.0);
        let s3: f64 = rng.random_range(-5.0..5.0);
        let h3: f64 = rng.random_range(-5.0..5.0);
        let planar_area = ((s2 - s1) * (h3 - h1) - (s3 - s1) * (h2 - h1)).abs() / 2.0;
        if planar_area < 1e-3 {
            continue;
        }
        let vertex = |s: f64, h: f64| NilPoint::new(gamma * nx - s * ny, gamma * ny + s * nx, h);
        if let Ok(tri) =
            TranslationTriangle::new(vertex(s1, h1), vertex(s2, h2), vertex(s3, h3))
        {
            return tri;
        }
    }
}

/// One row of the reference angle table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleTableRow {
    pub y3: f64,
    pub omegas: [f64; 3],
    pub sum: f64,
}

/// Parameter values of the built-in reference table.
pub const ANGLE_TABLE_Y3: [f64; 8] = [-10.0, -2.0, -1.0, 0.1, 0.75, 1.5, 5.0, 10.0];

/// Angle table for the one-parameter family with vertices (0, 0, 0),
/// (-1, 1, 1), and (1/2, y³, 1/2).
pub fn angle_table(y3_values: &[f64]) -> Result<Vec<AngleTableRow>> {
    y3_values
        .iter()
        .map(|&y3| {
            let a3 = NilPoint::try_new(0.5, y3, 0.5)?;
            let tri =
                TranslationTriangle::new(NilPoint::ORIGIN, NilPoint::new(-1.0, 1.0, 1.0), a3)?;
            let report = interior_angles(&tri);
            Ok(AngleTableRow {
                y3,
                omegas: report.omegas,
                sum: report.sum,
            })
        })
        .collect()
}

/// CSV with header `y3,omega1,omega2,omega3,sum`, six decimal places.
pub fn angle_table_csv(rows: &[AngleTableRow]) -> String {
    use std::fmt::Write;
    let mut out = String::from("y3,omega1,omega2,omega3,sum\n");
    for row in rows {
        writeln!(
            out,
            "{:.6},{:.6},{:.6},{:.6},{:.6}",
            row.y3, row.omegas[0], row.omegas[1], row.omegas[2], row.sum
        )
        .expect("string write");
    }
    out
}
