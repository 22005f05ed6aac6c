use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the geometry kernel.
#[derive(Debug, Error)]
pub enum NilError {
    /// Point construction requires finite coordinates.
    #[error("non-finite coordinate in ({0}, {1}, {2})")]
    NonFinite(f64, f64, f64),

    /// The requested curve or tangent needs a point distinct from the origin.
    #[error("zero-length input: point coincides with the origin")]
    ZeroLength,

    /// Angle computation needs nonzero vectors.
    #[error("zero tangent vector")]
    ZeroVector,

    /// Sphere operations need a positive radius.
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    /// Two triangle vertices coincide within tolerance.
    #[error("degenerate triangle: vertices {0} and {1} coincide")]
    DegenerateTriangle(usize, usize),

    /// Segment endpoints coincide within tolerance.
    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,

    /// A fibre segment needs nonzero height.
    #[error("zero segment: fibre height must be nonzero")]
    ZeroSegment,

    /// The viewing angle must lie strictly between 0 and pi.
    #[error("viewing angle {0} outside (0, pi)")]
    AlphaOutOfRange(f64),

    /// The isoptic field has no value at a segment endpoint.
    #[error("isoptic field undefined at a segment endpoint")]
    UndefinedAtEndpoint,

    /// Grid bounds or cell counts are out of range.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Isosurface extraction found no level crossing.
    #[error("empty surface: no iso-level crossing in the sampled box")]
    EmptySurface,

    /// File output failure, tagged with the offending path.
    #[error("io error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, NilError>;
