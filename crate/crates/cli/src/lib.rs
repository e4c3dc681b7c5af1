//! Command-line front end for `hullmap`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hullmap::fan::{dual_combinatorics_check, flattened_spherical_dual, outer_normal_transform, PLANARITY_TOL};
use hullmap::hull::{build_hull, classify_direction, HullDescription};
use hullmap::io::{self, DualDocument, FaceReport, HullDocument};
use hullmap::lab::{self, SweepOptions};
use hullmap::sampling::{sample, sample_near};
use hullmap::{boundary_map, Error, PointConfiguration, Result, SamplePlan, Strategy, UnitDirection};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_NUMERIC: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::DegenerateConfiguration { .. } => EXIT_DEGENERATE,
        Error::Io(_) => EXIT_IO,
        Error::NumericalOverflow { .. } | Error::AmbiguousTie { .. } => EXIT_NUMERIC,
        _ => EXIT_VALIDATION,
    }
}

#[derive(Parser, Debug)]
#[command(name = "hullmap", version, about = "Smooth maps from the sphere onto convex hull boundaries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate f_ε on sampled directions and write the image points.
    Approx(ApproxArgs),
    /// Build the hull and write its description.
    Hull(HullArgs),
    /// Spherical dual, flattened dual and outer normal transform (d = 3).
    Dual(DualArgs),
    /// ε-sweep of outer and inner distances to the hull boundary.
    Converge(ConvergeArgs),
    /// Report the face exposed by a direction.
    Classify(ClassifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Render {
    Svg,
    Obj,
    None,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Points CSV: a `dim,<d>` header followed by one point per row.
    pub input: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Absolute distinctness tolerance (default 1e-9 × diameter).
    #[arg(long)]
    pub tol_distinct: Option<f64>,
    /// Absolute coplanarity tolerance (default 1e-9 × diameter).
    #[arg(long)]
    pub tol_coplanar: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct PlanArgs {
    #[arg(long)]
    pub samples: Option<usize>,
    /// uniform_grid_2d, fibonacci_3d or gaussian_random.
    #[arg(long)]
    pub strategy: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap radius in radians.
    #[arg(long)]
    pub cap_radius: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub plan: PlanArgs,
    #[arg(long)]
    pub eps: f64,
    /// Sample a cap around this direction, e.g. "0,0,1".
    #[arg(long)]
    pub cap_center: Option<String>,
    /// Figure written next to `--out` with the matching extension.
    #[arg(long, value_enum, default_value_t = Render::None)]
    pub render: Render,
}

#[derive(Args, Debug)]
pub struct HullArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct DualArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub plan: PlanArgs,
    /// Comma-separated, strictly decreasing ε values.
    #[arg(long, default_value = "1e-1,1e-2,1e-3,1e-4")]
    pub eps_list: String,
    #[arg(long, default_value_t = 100)]
    pub boundary_per_facet: usize,
    /// Run the degenerate-configuration probe instead of the sweep.
    #[arg(long)]
    pub degenerate: bool,
    /// Record wall time in the `wall_ms` column. Off by default so that
    /// repeated runs produce identical files.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Direction, e.g. "1,0".
    #[arg(long, allow_hyphen_values = true)]
    pub direction: String,
    /// Absolute tie tolerance for support maximizers.
    #[arg(long)]
    pub tol_tie: Option<f64>,
}

pub fn parse_vector(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidPlan(format!("bad number `{}` in `{s}`", t.trim())))
        })
        .collect()
}

pub fn parse_eps_list(s: &str) -> Result<Vec<f64>> {
    let v = parse_vector(s)?;
    lab::check_schedule(&v)?;
    Ok(v)
}

fn load(common: &Common) -> Result<PointConfiguration> {
    io::read_configuration(&common.input, common.tol_distinct)
}

fn load_hull(common: &Common) -> Result<HullDescription> {
    build_hull(&load(common)?, common.tol_coplanar)
}

fn plan_for(dim: usize, args: &PlanArgs, default_count: usize) -> Result<SamplePlan> {
    let strategy = match &args.strategy {
        Some(s) => s.parse::<Strategy>()?,
        None => Strategy::default_for(dim),
    };
    Ok(SamplePlan::new(dim, strategy, args.samples.unwrap_or(default_count), args.seed))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes through `f` to the file, or to `stdout` when no path is given.
fn emit(path: Option<&Path>, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Approx(a) => approx(a, stdout),
        Command::Hull(a) => hull(a, stdout, stderr),
        Command::Dual(a) => dual(a, stdout),
        Command::Converge(a) => converge(a, stdout, stderr),
        Command::Classify(a) => classify(a, stdout),
    }
}

fn approx(a: ApproxArgs, stdout: &mut dyn Write) -> Result<()> {
    boundary_map::check_epsilon(a.eps)?;
    let config = load(&a.common)?;
    let d = config.dim();
    let mut plan = plan_for(d, &a.plan, 2000)?;
    let dirs = match (&a.cap_center, a.plan.cap_radius) {
        (Some(c), Some(r)) => {
            plan = plan.with_cap(None, r);
            sample_near(&plan, &UnitDirection::new(parse_vector(c)?)?)?
        }
        (None, None) => sample(&plan)?,
        _ => return Err(Error::InvalidPlan("--cap-center and --cap-radius go together".into())),
    };
    let images = boundary_map::image_points(&config, a.eps, &dirs)?;
    let render_path = match a.render {
        Render::None => None,
        Render::Svg | Render::Obj => {
            let want = if a.render == Render::Svg { 2 } else { 3 };
            if d != want {
                return Err(Error::DimensionUnsupported { required: want, found: d });
            }
            let out = a.common.out.as_deref().ok_or_else(|| Error::InvalidPlan("--render needs --out".into()))?;
            Some(sibling(out, if want == 2 { ".svg" } else { ".obj" }))
        }
    };
    emit(a.common.out.as_deref(), stdout, |w| io::write_points(w, d, &images))?;
    if let Some(p) = render_path {
        let mut w = create(&p)?;
        if a.render == Render::Svg {
            let hull = build_hull(&config, a.common.tol_coplanar)?;
            w.write_all(io::render_svg(&hull, &images)?.as_bytes())?;
        } else {
            io::write_obj_points(&mut w, &images)?;
        }
        w.flush()?;
    }
    Ok(())
}

fn hull(a: HullArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let h = load_hull(&a.common)?;
    let doc = HullDocument::from_hull(&h);
    writeln!(
        stderr,
        "vertices: {}, boundary non-vertices: {}, interior: {}, facets: {}, f-vector: {:?}, euler: {} (expected {})",
        doc.vertices.len(),
        doc.boundary_nonvertices.len(),
        doc.interior.len(),
        doc.facets.len(),
        doc.f_vector,
        doc.euler_characteristic,
        doc.euler_expected
    )?;
    emit(a.common.out.as_deref(), stdout, |w| Ok(w.write_all(io::to_json(&doc).as_bytes())?))
}

fn dual(a: DualArgs, stdout: &mut dyn Write) -> Result<()> {
    let h = load_hull(&a.common)?;
    let verdict = dual_combinatorics_check(&h)?;
    let flat = flattened_spherical_dual(&h)?;
    let transform = outer_normal_transform(&h, Some(PLANARITY_TOL))?;
    writeln!(
        stdout,
        "equivalent: {}, flattened_convex: {}, transform: {} vertices, {} facets",
        verdict.equivalent,
        verdict.flattened_convex,
        transform.vertices().len(),
        transform.facets().len()
    )?;
    if let Some(out) = a.common.out.as_deref() {
        let doc = DualDocument::new(&h, flat.clone(), &transform, verdict);
        create(out)?.write_all(io::to_json(&doc).as_bytes())?;
        let (vs, fs) = io::spherical_mesh(&flat, 8);
        let mut w = create(&sibling(out, ".spherical.obj"))?;
        io::write_obj_mesh(&mut w, &vs, &fs)?;
        w.flush()?;
        let (vs, fs) = io::flattened_mesh(&flat);
        let mut w = create(&sibling(out, ".flattened.obj"))?;
        io::write_obj_mesh(&mut w, &vs, &fs)?;
        w.flush()?;
        create(&sibling(out, ".transform.json"))?.write_all(io::to_json(&HullDocument::from_hull(&transform)).as_bytes())?;
    }
    Ok(())
}

fn converge(a: ConvergeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let epsilons = parse_eps_list(&a.eps_list)?;
    let config = load(&a.common)?;
    let d = config.dim();
    if a.degenerate {
        let plan = plan_for(d, &a.plan, 2000)?;
        let report = lab::degenerate_limit_probe(&config, &epsilons, &plan)?;
        writeln!(stderr, "affine rank {}, hull diameter {}", report.rank, report.hull_diameter)?;
        return emit(a.common.out.as_deref(), stdout, |w| io::write_degenerate_csv(w, &report.rows));
    }
    let hull = build_hull(&config, a.common.tol_coplanar)?;
    let plan = plan_for(d, &a.plan, 10_000)?;
    let mut opts = SweepOptions {
        label: a.common.input.display().to_string(),
        ..SweepOptions::default()
    };
    if let Some(r) = a.plan.cap_radius {
        opts.cap_radius = r;
    }
    let mut report = lab::theorem_sweep_with(&hull, &epsilons, &plan, a.boundary_per_facet, &opts)?;
    if !a.timing {
        report.rows.iter_mut().for_each(|r| r.wall_ms = 0.0);
    }
    writeln!(
        stderr,
        "slope {:.4} (residual {:.3e}, {} points)",
        report.slope, report.fit_residual, report.fit_points
    )?;
    emit(a.common.out.as_deref(), stdout, |w| io::write_report_csv(w, &report.rows))?;
    if let Some(out) = a.common.out.as_deref() {
        create(&sibling(out, ".summary.json"))?.write_all(io::to_json(&report).as_bytes())?;
    }
    Ok(())
}

fn classify(a: ClassifyArgs, stdout: &mut dyn Write) -> Result<()> {
    let h = load_hull(&a.common)?;
    let n = UnitDirection::new(parse_vector(&a.direction)?)?;
    if n.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: n.dim(),
        });
    }
    let id = classify_direction(&h, &n, a.tol_tie)?;
    let report = FaceReport::new(&h, n.as_slice(), id)?;
    emit(a.common.out.as_deref(), stdout, |w| Ok(w.write_all(io::to_json(&report).as_bytes())?))
}
