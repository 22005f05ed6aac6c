//! Voxel sampling of scalar fields and isosurface extraction.
//!
//! A [`GridSpec`] fixes an axis-aligned box and cell counts; [`ScalarField`]
//! holds one value per lattice corner, with NaN marking samples where the
//! field is undefined. [`marching_cubes`] walks the cells, interpolates the
//! iso crossing on each cut edge, and assembles a triangle mesh. Vertices
//! are shared between cells through their global edge key, so the output of
//! the face-consistent case table is watertight away from undefined samples
//! and grid boundaries.

mod export;
mod tables;

pub use export::{export_obj, export_ply};

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{NilError, Result};
use crate::isoptic::IsopticSpec;
use crate::point::NilPoint;
use tables::{CORNER_OFFSETS, EDGE_CONNECTIONS, TRI_TABLE};

/// Largest permitted cell count per axis.
pub const MAX_CELLS: usize = 2048;

/// Axis-aligned sampling box with a fixed number of cells per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    min: [f64; 3],
    max: [f64; 3],
    cells: [usize; 3],
}

impl GridSpec {
    /// Validates finite bounds with positive extent and cell counts in
    /// 2..=[`MAX_CELLS`].
    pub fn new(min: [f64; 3], max: [f64; 3], cells: [usize; 3]) -> Result<GridSpec> {
        const AXES: [char; 3] = ['x', 'y', 'z'];
        for a in 0..3 {
            if !min[a].is_finite() || !max[a].is_finite() {
                return Err(NilError::InvalidGrid(format!(
                    "non-finite bound on the {} axis",
                    AXES[a]
                )));
            }
            if max[a] <= min[a] {
                return Err(NilError::InvalidGrid(format!(
                    "empty extent on the {} axis: [{}, {}]",
                    AXES[a], min[a], max[a]
                )));
            }
            if cells[a] < 2 || cells[a] > MAX_CELLS {
                return Err(NilError::InvalidGrid(format!(
                    "{} cells on the {} axis, supported range is 2..={}",
                    cells[a], AXES[a], MAX_CELLS
                )));
            }
        }
        Ok(GridSpec { min, max, cells })
    }

    pub fn min(&self) -> [f64; 3] {
        self.min
    }

    pub fn max(&self) -> [f64; 3] {
        self.max
    }

    pub fn cells(&self) -> [usize; 3] {
        self.cells
    }

    pub fn spacing(&self) -> [f64; 3] {
        [
            (self.max[0] - self.min[0]) / self.cells[0] as f64,
            (self.max[1] - self.min[1]) / self.cells[1] as f64,
            (self.max[2] - self.min[2]) / self.cells[2] as f64,
        ]
    }

    /// Euclidean diagonal of one cell in model coordinates.
    pub fn cell_diagonal(&self) -> f64 {
        let [hx, hy, hz] = self.spacing();
        (hx * hx + hy * hy + hz * hz).sqrt()
    }

    /// Lattice corner (i, j, k) with i along x, 0..=cells per axis.
    pub fn corner_point(&self, i: usize, j: usize, k: usize) -> NilPoint {
        let [hx, hy, hz] = self.spacing();
        NilPoint::new(
            self.min[0] + i as f64 * hx,
            self.min[1] + j as f64 * hy,
            self.min[2] + k as f64 * hz,
        )
    }

    fn corner_index(&self, i: usize, j: usize, k: usize) -> usize {
        (k * (self.cells[1] + 1) + j) * (self.cells[0] + 1) + i
    }
}

/// Field values at every lattice corner of a grid; NaN means undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: GridSpec,
    values: Vec<f64>,
}

impl ScalarField {
    /// Samples `f` at every corner in parallel across z slabs. `None`
    /// samples are stored as NaN and mask out the touching cells later.
    pub fn from_fn<F>(grid: GridSpec, f: F) -> ScalarField
    where
        F: Fn(NilPoint) -> Option<f64> + Sync,
    {
        let [nx, ny, _] = grid.cells();
        let slab = (nx + 1) * (ny + 1);
        let mut values = vec![0.0_f64; slab * (grid.cells[2] + 1)];
        values
            .par_chunks_mut(slab)
            .enumerate()
            .for_each(|(k, chunk)| {
                for j in 0..=ny {
                    for i in 0..=nx {
                        chunk[j * (nx + 1) + i] =
                            f(grid.corner_point(i, j, k)).unwrap_or(f64::NAN);
                    }
                }
            });
        ScalarField { grid, values }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn value(&self, i: usize, j: usize, k: usize) -> f64 {
        self.values[self.grid.corner_index(i, j, k)]
    }
}

/// Samples the signed isoptic residual of `spec` over `grid`; points under
/// the endpoint guard become undefined samples.
pub fn sample(spec: &IsopticSpec, grid: GridSpec) -> ScalarField {
    ScalarField::from_fn(grid, |p| spec.residual_at(p).ok())
}

/// Indexed triangle mesh in model coordinates.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[u32; 3]>,
}

impl Mesh {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Componentwise min and max over the vertices, None when empty.
    pub fn bounding_box(&self) -> Option<([f64; 3], [f64; 3])> {
        let mut it = self.vertices.iter();
        let first = *it.next()?;
        let mut lo = first;
        let mut hi = first;
        for v in it {
            for a in 0..3 {
                lo[a] = lo[a].min(v[a]);
                hi[a] = hi[a].max(v[a]);
            }
        }
        Some((lo, hi))
    }
}

/// Extracts the level set `field = iso` as a triangle mesh.
///
/// A corner is inside when its value is below `iso`. Cells with an
/// undefined corner are skipped. Crossing vertices are deduplicated via
/// their global edge, so shared edges carry shared vertex ids and the
/// traversal order makes the output fully deterministic. Triangles that
/// collapse to (numerically) zero area are dropped.
///
/// Fails with [`NilError::EmptySurface`] when no cell produces a triangle.
pub fn marching_cubes(field: &ScalarField, iso: f64) -> Result<Mesh> {
    let grid = field.grid();
    let [nx, ny, nz] = grid.cells();
    let area_floor = 1e-14 * grid.cell_diagonal().powi(2);

    let mut vertices: Vec<[f64; 3]> = Vec::new();
    let mut triangles: Vec<[u32; 3]> = Vec::new();
    // Crossing vertex on the cell edge from `lower corner` along `axis`.
    let mut edge_vertex: HashMap<(usize, usize, usize, u8), u32> = HashMap::new();

    for i in 0..nx {
        for j in 0..ny {
            for k in 0..nz {
                let mut vals = [0.0_f64; 8];
                let mut defined = true;
                for (c, off) in CORNER_OFFSETS.iter().enumerate() {
                    let v = field.value(i + off[0], j + off[1], k + off[2]);
                    if v.is_nan() {
                        defined = false;
                        break;
                    }
                    vals[c] = v;
                }
                if !defined {
                    continue;
                }
                let mut config = 0_usize;
                for (c, &v) in vals.iter().enumerate() {
                    if v < iso {
                        config |= 1 << c;
                    }
                }
                if config == 0 || config == 255 {
                    continue;
                }

                let mut cell_vertex = [u32::MAX; 12];
                let row = &TRI_TABLE[config];
                let mut t = 0;
                while row[t] >= 0 {
                    let mut tri = [0_u32; 3];
                    for (slot, &edge) in tri.iter_mut().zip(&row[t..t + 3]) {
                        *slot = vertex_on_edge(
                            edge as usize,
                            (i, j, k),
                            &vals,
                            iso,
                            grid,
                            &mut cell_vertex,
                            &mut edge_vertex,
                            &mut vertices,
                        );
                    }
                    t += 3;
                    if tri[0] == tri[1] || tri[1] == tri[2] || tri[2] == tri[0] {
                        continue;
                    }
                    let a = vertices[tri[0] as usize];
                    let b = vertices[tri[1] as usize];
                    let c = vertices[tri[2] as usize];
                    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
                    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
                    let n = [
                        u[1] * v[2] - u[2] * v[1],
                        u[2] * v[0] - u[0] * v[2],
                        u[0] * v[1] - u[1] * v[0],
                    ];
                    let area = 0.5 * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
                    if area < area_floor {
                        continue;
                    }
                    triangles.push(tri);
                }
            }
        }
    }

    if triangles.is_empty() {
        return Err(NilError::EmptySurface);
    }
    Ok(Mesh {
        vertices,
        triangles,
    })
}

/// Shared crossing vertex on cell edge `e` of the cell at `(i, j, k)`,
/// created on first use and reused through the global edge key afterwards.
#[allow(clippy::too_many_arguments)]
fn vertex_on_edge(
    e: usize,
    (i, j, k): (usize, usize, usize),
    vals: &[f64; 8],
    iso: f64,
    grid: &GridSpec,
    cell_vertex: &mut [u32; 12],
    edge_vertex: &mut HashMap<(usize, usize, usize, u8), u32>,
    vertices: &mut Vec<[f64; 3]>,
) -> u32 {
    if cell_vertex[e] != u32::MAX {
        return cell_vertex[e];
    }
    let [ca, cb] = EDGE_CONNECTIONS[e];
    let oa = CORNER_OFFSETS[ca];
    let ob = CORNER_OFFSETS[cb];
    let ga = (i + oa[0], j + oa[1], k + oa[2]);
    let gb = (i + ob[0], j + ob[1], k + ob[2]);
    let (lo, axis) = if ga <= gb {
        (ga, axis_between(oa, ob))
    } else {
        (gb, axis_between(ob, oa))
    };
    let id = *edge_vertex
        .entry((lo.0, lo.1, lo.2, axis))
        .or_insert_with(|| {
            let pa = grid.corner_point(ga.0, ga.1, ga.2);
            let pb = grid.corner_point(gb.0, gb.1, gb.2);
            let t = ((iso - vals[ca]) / (vals[cb] - vals[ca])).clamp(0.0, 1.0);
            let id = u32::try_from(vertices.len()).expect("vertex ids fit u32");
            vertices.push([
                pa.x + t * (pb.x - pa.x),
                pa.y + t * (pb.y - pa.y),
                pa.z + t * (pb.z - pa.z),
            ]);
            id
        });
    cell_vertex[e] = id;
    id
}

fn axis_between(lower: [usize; 3], upper: [usize; 3]) -> u8 {
    for a in 0..3 {
        if upper[a] > lower[a] {
            return a as u8;
        }
    }
    unreachable!("cell edges are axis-aligned");
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn euclidean_unit_sphere_field(cells: usize) -> ScalarField {
        let grid = GridSpec::new([-2.0, -2.0, -2.0], [2.0, 2.0, 2.0], [cells; 3]).unwrap();
        ScalarField::from_fn(grid, |p| Some(p.x * p.x + p.y * p.y + p.z * p.z - 1.0))
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new([0.0; 3], [1.0, 1.0, 0.0], [8; 3]).is_err());
        assert!(GridSpec::new([0.0; 3], [1.0; 3], [1, 8, 8]).is_err());
        assert!(GridSpec::new([0.0; 3], [1.0; 3], [8, 8, MAX_CELLS + 1]).is_err());
        assert!(GridSpec::new([f64::NAN, 0.0, 0.0], [1.0; 3], [8; 3]).is_err());
        let grid = GridSpec::new([-1.0, 0.0, 2.0], [1.0, 4.0, 3.0], [4, 8, 2]).unwrap();
        assert_eq!(grid.spacing(), [0.5, 0.5, 0.5]);
        let diag = grid.cell_diagonal();
        assert!((diag - 0.75_f64.sqrt()).abs() < 1e-15);
        let p = grid.corner_point(1, 2, 0);
        assert_eq!((p.x, p.y, p.z), (-0.5, 1.0, 2.0));
    }

    #[test]
    fn sphere_mesh_vertices_sit_near_the_surface() {
        let field = euclidean_unit_sphere_field(50);
        let mesh = marching_cubes(&field, 0.0).unwrap();
        assert!(mesh.triangles.len() > 1000);
        let h = field.grid().cell_diagonal();
        for v in &mesh.vertices {
            let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            assert!((r - 1.0).abs() < h, "vertex radius {r}");
        }
        let (lo, hi) = mesh.bounding_box().unwrap();
        for a in 0..3 {
            assert!(lo[a] > -1.1 && hi[a] < 1.1);
        }
    }

    #[test]
    fn sphere_mesh_is_closed_and_consistently_oriented() {
        let field = euclidean_unit_sphere_field(50);
        let mesh = marching_cubes(&field, 0.0).unwrap();
        // Every directed edge must be matched by its reverse exactly once.
        let mut edges: HashMap<(u32, u32), i64> = HashMap::new();
        for t in &mesh.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *edges.entry((a.min(b), a.max(b))).or_default() += if a < b { 1 } else { -1 };
                assert_ne!(a, b);
            }
        }
        assert!(edges.values().all(|&n| n == 0), "unmatched directed edges");
        // And each undirected edge is used by exactly two triangles.
        let mut uses: HashMap<(u32, u32), u32> = HashMap::new();
        for t in &mesh.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *uses.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        assert!(uses.values().all(|&n| n == 2), "non-manifold edge");
    }

    #[test]
    fn vertices_lie_on_lattice_edges() {
        let field = euclidean_unit_sphere_field(50);
        let mesh = marching_cubes(&field, 0.0).unwrap();
        let grid = field.grid();
        let [hx, hy, hz] = grid.spacing();
        for v in &mesh.vertices {
            let mut off_lattice = 0;
            for (c, (lo, h)) in [
                (v[0], (grid.min()[0], hx)),
                (v[1], (grid.min()[1], hy)),
                (v[2], (grid.min()[2], hz)),
            ] {
                let steps = (c - lo) / h;
                if (steps - steps.round()).abs() > 1e-12 {
                    off_lattice += 1;
                }
            }
            assert!(off_lattice <= 1, "vertex off its grid edge: {v:?}");
        }
    }

    #[test]
    fn extraction_is_deterministic() {
        let a = marching_cubes(&euclidean_unit_sphere_field(24), 0.0).unwrap();
        let b = marching_cubes(&euclidean_unit_sphere_field(24), 0.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn missing_surface_is_an_error() {
        let grid = GridSpec::new([10.0; 3], [12.0; 3], [8; 3]).unwrap();
        let field = ScalarField::from_fn(grid, |p| {
            Some(p.x * p.x + p.y * p.y + p.z * p.z - 1.0)
        });
        assert!(matches!(
            marching_cubes(&field, 0.0),
            Err(NilError::EmptySurface)
        ));
    }

    #[test]
    fn undefined_samples_mask_their_cells() {
        let grid = GridSpec::new([-2.0; 3], [2.0; 3], [24; 3]).unwrap();
        let field = ScalarField::from_fn(grid, |p| {
            if p.x.abs() < 0.1 {
                None
            } else {
                Some(p.x * p.x + p.y * p.y + p.z * p.z - 1.0)
            }
        });
        let mesh = marching_cubes(&field, 0.0).unwrap();
        assert!(!mesh.is_empty());
        for v in &mesh.vertices {
            assert!(v[0].abs() >= 0.1 - 1e-12 - field.grid().spacing()[0]);
        }
    }

    #[test]
    fn field_sampling_matches_direct_evaluation() {
        let spec = IsopticSpec::new(
            NilPoint::new(0.0, 0.0, 4.0),
            std::f64::consts::FRAC_PI_2,
            false,
        )
        .unwrap();
        let grid = GridSpec::new([-3.0, -3.0, -1.0], [3.0, 3.0, 5.0], [6, 6, 6]).unwrap();
        let field = sample(&spec, grid);
        // (0, 0, 0) on the lattice is the segment start: guarded sample.
        assert!(field.value(3, 3, 1).is_nan());
        let p = grid.corner_point(1, 2, 3);
        let direct = spec.residual_at(p).unwrap();
        assert_eq!(field.value(1, 2, 3), direct);
    }
}
