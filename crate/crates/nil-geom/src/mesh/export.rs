//! Mesh writers for the two interchange formats the CLI exposes.
//!
//! Both writers are deterministic: coordinates are printed with nine
//! significant digits and LF line endings, so identical meshes always
//! produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{NilError, Result};
use crate::numfmt::fmt_sig;

use super::Mesh;

const COORD_DIGITS: i32 = 9;

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> NilError + '_ {
    move |source| NilError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes Wavefront OBJ: `v x y z` lines, then 1-based `f a b c` lines.
pub fn export_obj(mesh: &Mesh, path: &Path) -> Result<()> {
    let mut out = String::new();
    for v in &mesh.vertices {
        writeln!(
            out,
            "v {} {} {}",
            fmt_sig(v[0], COORD_DIGITS),
            fmt_sig(v[1], COORD_DIGITS),
            fmt_sig(v[2], COORD_DIGITS)
        )
        .expect("string write");
    }
    for t in &mesh.triangles {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).expect("string write");
    }
    fs::write(path, out).map_err(io_error(path))
}

/// Writes ascii PLY 1.0 with double vertex properties and uint face lists.
pub fn export_ply(mesh: &Mesh, path: &Path) -> Result<()> {
    let mut out = String::new();
    writeln!(out, "ply").expect("string write");
    writeln!(out, "format ascii 1.0").expect("string write");
    writeln!(out, "element vertex {}", mesh.vertices.len()).expect("string write");
    writeln!(out, "property double x").expect("string write");
    writeln!(out, "property double y").expect("string write");
    writeln!(out, "property double z").expect("string write");
    writeln!(out, "element face {}", mesh.triangles.len()).expect("string write");
    writeln!(out, "property list uchar uint vertex_indices").expect("string write");
    writeln!(out, "end_header").expect("string write");
    for v in &mesh.vertices {
        writeln!(
            out,
            "{} {} {}",
            fmt_sig(v[0], COORD_DIGITS),
            fmt_sig(v[1], COORD_DIGITS),
            fmt_sig(v[2], COORD_DIGITS)
        )
        .expect("string write");
    }
    for t in &mesh.triangles {
        writeln!(out, "3 {} {} {}", t[0], t[1], t[2]).expect("string write");
    }
    fs::write(path, out).map_err(io_error(path))
}
