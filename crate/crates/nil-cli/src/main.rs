//! `nil`: command-line access to the Nil geometry kernel.
//!
//! Subcommands cover translation distances, triangle angle reports, the
//! built-in reference angle table, isoptic surface meshing, and the
//! randomized property suites. All randomized output is reproducible:
//! the seed defaults to [`nil_geom::DEFAULT_SEED`] and identical flags
//! give byte-identical output.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 empty
//! surface, 4 property violation.

mod verify;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nil_geom::mesh::{export_obj, export_ply, marching_cubes, sample, GridSpec};
use nil_geom::numfmt::fmt_sig;
use nil_geom::{
    angle_table, angle_table_csv, antipodality_check, curve_params_to, interior_angles,
    normalize_segment, IsopticSpec, NilError, NilPoint, NilTranslation, TranslationTriangle,
    ANGLE_TABLE_Y3, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(
    name = "nil",
    version,
    about = "Nil geometry kernel: translation distances, triangle angle sums, isoptic meshes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translation distance and curve parameters between two points
    Distance(DistanceArgs),
    /// Interior angles and diagnostics of a translation triangle
    Triangle(TriangleArgs),
    /// Reference angle table for the built-in one-parameter family
    Table2(Table2Args),
    /// Extract an isoptic surface as a triangle mesh
    Isoptic(IsopticArgs),
    /// Run the randomized property suites
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DistanceArgs {
    /// Start point as x,y,z
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    from: NilPoint,
    /// End point as x,y,z
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    to: NilPoint,
    /// Write the JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TriangleArgs {
    /// Nine reals x1,y1,z1,x2,y2,z2,x3,y3,z3
    #[arg(long, value_parser = parse_vertices, allow_hyphen_values = true)]
    vertices: Vertices,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct Table2Args {
    /// Comma-separated parameter values; defaults to the built-in eight
    #[arg(long, value_parser = parse_reals, allow_hyphen_values = true)]
    y3: Option<Reals>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IsopticArgs {
    /// Segment endpoint a,b,c in the normalized frame (start at origin)
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, conflicts_with_all = ["from", "to"])]
    segment: Option<NilPoint>,
    /// Segment start x,y,z; the segment is normalized before sampling
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, requires = "to")]
    from: Option<NilPoint>,
    /// Segment end x,y,z
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, requires = "from")]
    to: Option<NilPoint>,
    /// Viewing angle in radians, strictly between 0 and pi
    #[arg(long)]
    alpha: f64,
    /// Also include the surface of the supplementary angle pi - alpha
    #[arg(long)]
    supplementary: bool,
    /// Sampling box x0,y0,z0,x1,y1,z1; defaults to an automatic box
    #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true)]
    sample_box: Option<Box6>,
    /// Cells per axis
    #[arg(long, default_value_t = 64)]
    res: usize,
    /// Output mesh path ending in .obj or .ply
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Triangles per randomized suite
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// RNG seed
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Recompute angles with the fibre term sign-flipped (must fail)
    #[arg(long, hide = true)]
    inject_metric_sign_flip: bool,
}

#[derive(Clone, Copy)]
struct Vertices([NilPoint; 3]);

#[derive(Clone)]
struct Reals(Vec<f64>);

#[derive(Clone, Copy)]
struct Box6([f64; 3], [f64; 3]);

fn parse_reals_list(s: &str, expected: Option<usize>) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if let Some(n) = expected {
        if parts.len() != n {
            return Err(format!("expected {n} comma-separated reals, got {}", parts.len()));
        }
    }
    parts
        .iter()
        .map(|part| {
            let value: f64 = part
                .trim()
                .parse()
                .map_err(|e| format!("bad number {part:?}: {e}"))?;
            if !value.is_finite() {
                return Err(format!("non-finite number {part:?}"));
            }
            Ok(value)
        })
        .collect()
}

fn parse_point(s: &str) -> Result<NilPoint, String> {
    let c = parse_reals_list(s, Some(3))?;
    Ok(NilPoint::new(c[0], c[1], c[2]))
}

fn parse_vertices(s: &str) -> Result<Vertices, String> {
    let c = parse_reals_list(s, Some(9))?;
    Ok(Vertices([
        NilPoint::new(c[0], c[1], c[2]),
        NilPoint::new(c[3], c[4], c[5]),
        NilPoint::new(c[6], c[7], c[8]),
    ]))
}

fn parse_reals(s: &str) -> Result<Reals, String> {
    let values = parse_reals_list(s, None)?;
    if values.is_empty() {
        return Err("expected at least one value".into());
    }
    Ok(Reals(values))
}

fn parse_box(s: &str) -> Result<Box6, String> {
    let c = parse_reals_list(s, Some(6))?;
    Ok(Box6([c[0], c[1], c[2]], [c[3], c[4], c[5]]))
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

impl From<NilError> for Failure {
    fn from(err: NilError) -> Failure {
        let code = match err {
            NilError::EmptySurface => 3,
            NilError::Io { .. } => 1,
            _ => 2,
        };
        Failure { code, message: err.to_string() }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|source| {
            Failure::from(NilError::Io { path: path.to_path_buf(), source })
        }),
    }
}

fn json_number(x: f64) -> String {
    fmt_sig(x, 12)
}

fn json_point(p: NilPoint) -> String {
    format!("[{},{},{}]", json_number(p.x), json_number(p.y), json_number(p.z))
}

fn json_triple(v: [f64; 3]) -> String {
    format!("[{},{},{}]", json_number(v[0]), json_number(v[1]), json_number(v[2]))
}

fn cmd_distance(args: &DistanceArgs) -> Result<(), Failure> {
    let pulled = NilTranslation::to(args.from).inverse().apply(args.to);
    let params = curve_params_to(pulled).map_err(|_| Failure::usage("coincident points"))?;
    let json = format!(
        "{{\"distance\":{},\"phi\":{},\"theta\":{}}}\n",
        json_number(params.r),
        json_number(params.phi),
        json_number(params.theta)
    );
    emit(&json, args.out.as_deref())
}

fn cmd_triangle(args: &TriangleArgs) -> Result<(), Failure> {
    let [a1, a2, a3] = args.vertices.0;
    let tri = TranslationTriangle::new(a1, a2, a3)?;
    let report = interior_angles(&tri);
    let antipodality = antipodality_check(&report);
    let text = match args.format {
        ReportFormat::Json => format!(
            "{{\"omega1\":{},\"omega2\":{},\"omega3\":{},\"sum\":{},\
             \"coplanarity_residual\":{},\"coplanar\":{},\"antipodality_residual\":{}}}\n",
            json_number(report.omegas[0]),
            json_number(report.omegas[1]),
            json_number(report.omegas[2]),
            json_number(report.sum),
            json_number(report.coplanarity_residual),
            report.coplanar,
            json_number(antipodality)
        ),
        ReportFormat::Csv => format!(
            "omega1,omega2,omega3,sum,coplanarity_residual,antipodality_residual\n\
             {:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
            report.omegas[0],
            report.omegas[1],
            report.omegas[2],
            report.sum,
            report.coplanarity_residual,
            antipodality
        ),
    };
    emit(&text, args.out.as_deref())
}

fn cmd_table2(args: &Table2Args) -> Result<(), Failure> {
    let default = ANGLE_TABLE_Y3.to_vec();
    let y3 = args.y3.as_ref().map_or(&default, |r| &r.0);
    let rows = angle_table(y3)?;
    emit(&angle_table_csv(&rows), args.out.as_deref())
}

enum MeshFormat {
    Obj,
    Ply,
}

fn mesh_format(path: &Path) -> Result<MeshFormat, Failure> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("obj") => Ok(MeshFormat::Obj),
        Some("ply") => Ok(MeshFormat::Ply),
        _ => Err(Failure::usage(format!(
            "output path {} must end in .obj or .ply",
            path.display()
        ))),
    }
}

fn cmd_isoptic(args: &IsopticArgs) -> Result<(), Failure> {
    let format = mesh_format(&args.out)?;
    let (endpoint, frame) = match (args.segment, args.from, args.to) {
        (Some(endpoint), None, None) => (endpoint, None),
        (None, Some(from), Some(to)) => {
            let frame = normalize_segment(from, to)?;
            (frame.endpoint, Some(frame))
        }
        (None, None, None) => {
            return Err(Failure::usage("give either --segment or --from and --to"))
        }
        _ => unreachable!("clap enforces the flag pairing"),
    };
    let spec = IsopticSpec::new(endpoint, args.alpha, args.supplementary)?;
    let (lo, hi) = match args.sample_box {
        Some(Box6(lo, hi)) => (lo, hi),
        None => spec.default_box(),
    };
    let grid = GridSpec::new(lo, hi, [args.res; 3])?;
    let field = sample(&spec, grid);
    let mut mesh = marching_cubes(&field, 0.0)?;

    // Residuals are intrinsic to the frame; evaluate before mapping the
    // vertices back to the input coordinates.
    let mut residual_min = f64::INFINITY;
    let mut residual_max = f64::NEG_INFINITY;
    let mut defined = 0_usize;
    for v in &mesh.vertices {
        if let Ok(r) = spec.residual_at(NilPoint::new(v[0], v[1], v[2])) {
            residual_min = residual_min.min(r);
            residual_max = residual_max.max(r);
            defined += 1;
        }
    }
    if let Some(frame) = &frame {
        for v in &mut mesh.vertices {
            let world = frame.to_world(NilPoint::new(v[0], v[1], v[2]));
            *v = [world.x, world.y, world.z];
        }
    }

    match format {
        MeshFormat::Obj => export_obj(&mesh, &args.out)?,
        MeshFormat::Ply => export_ply(&mesh, &args.out)?,
    }

    let mut json = String::from("{");
    write!(json, "\"triangles\":{}", mesh.triangles.len()).expect("string write");
    write!(json, ",\"vertices\":{}", mesh.vertices.len()).expect("string write");
    let (bb_lo, bb_hi) = mesh.bounding_box().expect("nonempty mesh");
    write!(json, ",\"bbox_min\":{}", json_triple(bb_lo)).expect("string write");
    write!(json, ",\"bbox_max\":{}", json_triple(bb_hi)).expect("string write");
    if defined > 0 {
        write!(json, ",\"residual_min\":{}", json_number(residual_min)).expect("string write");
        write!(json, ",\"residual_max\":{}", json_number(residual_max)).expect("string write");
    } else {
        json.push_str(",\"residual_min\":null,\"residual_max\":null");
    }
    if let Some(frame) = &frame {
        write!(json, ",\"frame_endpoint\":{}", json_point(frame.endpoint)).expect("string write");
    }
    json.push_str("}\n");
    print!("{json}");
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    if args.samples == 0 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    let report = verify::run(args.samples, args.seed, args.inject_metric_sign_flip);
    print!("{}", report.text);
    if report.all_passed {
        Ok(())
    } else {
        Err(Failure { code: 4, message: "property violation".into() })
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("NIL_KERNEL_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("NIL_KERNEL_THREADS must be an integer, got {raw:?}")))?;
    if threads == 0 {
        return Ok(()); // 0 means automatic, rayon's default
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure { code: 1, message: format!("thread pool: {e}") })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    configure_threads()?;
    match &cli.command {
        Command::Distance(args) => cmd_distance(args),
        Command::Triangle(args) => cmd_triangle(args),
        Command::Table2(args) => cmd_table2(args),
        Command::Isoptic(args) => cmd_isoptic(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
