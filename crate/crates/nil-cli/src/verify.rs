//! Randomized property suites behind `nil verify`.
//!
//! Sampling is split into fixed-size chunks, each driven by its own RNG
//! stream, and suite results are min/max reductions, so the report is
//! byte-identical for a given (samples, seed) regardless of thread count.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use nil_geom::{
    antipodality_check, interior_angles, perpendicular_plane_triangle, random_triangle,
    thaloid_deviation, NilPoint, TriangleReport,
};

const CHUNK: u64 = 1024;

pub struct SuiteReport {
    pub text: String,
    pub all_passed: bool,
}

struct Suite {
    name: &'static str,
    passed: bool,
    detail: String,
}

/// Interior angle sum recomputed from the reported unit tangent points.
/// `flip_w` negates the fibre component in the inner products, a deliberate
/// metric defect used to prove the suites can fail.
fn angle_sum_from_tangents(report: &TriangleReport, flip_w: bool) -> f64 {
    let sign = if flip_w { -1.0 } else { 1.0 };
    [(0_usize, 1_usize), (2, 3), (4, 5)]
        .iter()
        .map(|&(i, j)| {
            let a = report.tangent_points[i];
            let b = report.tangent_points[j];
            let dot = a.u * b.u + a.v * b.v + sign * a.w * b.w;
            dot.clamp(-1.0, 1.0).acos()
        })
        .sum()
}

fn chunk_rng(seed: u64, suite: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite << 32) | chunk);
    rng
}

/// Extreme of a per-triangle statistic over `samples` random triangles,
/// reduced with `merge` (min or max), chunked for parallelism.
fn extreme_over_random_triangles<F, M>(
    samples: u64,
    seed: u64,
    suite: u64,
    init: f64,
    stat: F,
    merge: M,
) -> f64
where
    F: Fn(&TriangleReport) -> f64 + Sync,
    M: Fn(f64, f64) -> f64 + Sync + Send,
{
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, suite, c);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut acc = init;
            for _ in 0..count {
                let report = interior_angles(&random_triangle(&mut rng));
                acc = merge(acc, stat(&report));
            }
            acc
        })
        .reduce(|| init, &merge)
}

pub fn run(samples: u64, seed: u64, inject_sign_flip: bool) -> SuiteReport {
    let mut suites = Vec::new();

    // Angle sums of random triangles never drop below pi.
    let min_sum = extreme_over_random_triangles(
        samples,
        seed,
        1,
        f64::INFINITY,
        |report| angle_sum_from_tangents(report, inject_sign_flip),
        f64::min,
    );
    suites.push(Suite {
        name: "angle-sum bound",
        passed: min_sum >= PI - 1e-9,
        detail: format!("min sum - pi = {:.6e} over {samples} random triangles", min_sum - PI),
    });

    // Opposite tangents along each side are antipodal.
    let worst_pair = extreme_over_random_triangles(
        samples,
        seed,
        2,
        0.0,
        antipodality_check,
        f64::max,
    );
    suites.push(Suite {
        name: "antipodality",
        passed: worst_pair < 1e-10,
        detail: format!("worst pair norm = {worst_pair:.6e} over {samples} random triangles"),
    });

    // Triangles inside a plane containing the z direction sum to pi exactly.
    let worst_equality = (0..samples)
        .into_par_iter()
        .map(|i| {
            let tri = perpendicular_plane_triangle(seed.wrapping_add(i));
            let report = interior_angles(&tri);
            (angle_sum_from_tangents(&report, inject_sign_flip) - PI).abs()
        })
        .reduce(|| 0.0, f64::max);
    suites.push(Suite {
        name: "perpendicular-plane equality",
        passed: worst_equality < 1e-9,
        detail: format!("worst |sum - pi| = {worst_equality:.6e} over {samples} triangles"),
    });

    // The right-angle surface of a fibre segment is the translated sphere;
    // a slanted segment visibly is not.
    let fibre = thaloid_deviation(NilPoint::new(0.0, 0.0, 4.0)).expect("valid fixed segment");
    let slanted = thaloid_deviation(NilPoint::new(1.0, 1.0, 2.0)).expect("valid fixed segment");
    suites.push(Suite {
        name: "thaloid deviation",
        passed: fibre < 1e-12 && slanted > 1e-3,
        detail: format!(
            "fibre (0,0,4) worst |cos| = {fibre:.6e}; slanted (1,1,2) deviation = {slanted:.6e}"
        ),
    });

    let mut text = String::new();
    let mut all_passed = true;
    for suite in &suites {
        all_passed &= suite.passed;
        let tag = if suite.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("suite {}: {tag} ({})\n", suite.name, suite.detail));
    }
    let failed = suites.iter().filter(|s| !s.passed).count();
    if all_passed {
        text.push_str(&format!(
            "verify: all {} suites passed (samples={samples}, seed={seed})\n",
            suites.len()
        ));
    } else {
        text.push_str(&format!(
            "verify: {failed} of {} suites failed (samples={samples}, seed={seed})\n",
            suites.len()
        ));
    }
    SuiteReport { text, all_passed }
}
