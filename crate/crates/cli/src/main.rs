//! Command-line front end: solve map parameters, export boundary curves,
//! the reference discrepancy table, and mapped annulus grids.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use annulus_map::discrepancy::{max_discrepancy, reference_table};
use annulus_map::{Complex64, CompositeMap, MapError};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use config::{resolve, MapArgs, ResolvedRun};
use output::{emit, fmt_sig, svg_overlay};

/// Failures split by exit code: usage errors exit 1, computation and IO
/// errors exit 2.
#[derive(Debug)]
pub enum AppError {
    Usage(String),
    Compute(String),
}

impl From<MapError> for AppError {
    fn from(err: MapError) -> Self {
        AppError::Compute(format!("{}: {err}", err.name()))
    }
}

#[derive(Parser)]
#[command(name = "annulus-map", version, about = "Composite conformal maps of an annulus onto a plane with a shaped hole and a nearly circular hole")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the map parameters for a shape and hole target, print a JSON report
    Solve(MapArgs),
    /// Write the boundary curves (outer, hole image, reference circle) as CSV
    Curve(CurveArgs),
    /// Write the reference discrepancy grid (7 hole radii x 3 gaps) as CSV
    Table1(TableArgs),
    /// Write the image of a polar annulus grid as CSV
    Grid(GridArgs),
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    map: MapArgs,

    /// Also write an SVG overlay of the three curves
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Output file path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Significant digits for computed columns (default 12)
    #[arg(long)]
    precision: Option<usize>,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    map: MapArgs,

    /// Radial rings, including both boundary circles (default 10)
    #[arg(long)]
    rings: Option<usize>,

    /// Angular rays (default 36)
    #[arg(long)]
    rays: Option<usize>,
}

#[derive(Serialize)]
struct SolveReport {
    #[serde(rename = "C")]
    scale: f64,
    n: u32,
    m_or_terms: f64,
    e: f64,
    r1: f64,
    lambda: f64,
    rho1: f64,
    h: f64,
    #[serde(rename = "R")]
    hole_radius: f64,
    epsilon: f64,
    s: f64,
    delta_max: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help / --version arrive here too and must keep exit code 0
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Curve(args) => cmd_curve(&args),
        Command::Table1(args) => cmd_table1(&args),
        Command::Grid(args) => cmd_grid(&args),
    }
}

fn build_composite(run: &ResolvedRun) -> Result<CompositeMap, AppError> {
    CompositeMap::build(run.outer.clone(), run.target).map_err(AppError::from)
}

fn cmd_solve(args: &MapArgs) -> Result<(), AppError> {
    let run = resolve(args)?;
    let cm = build_composite(&run)?;
    let report = max_discrepancy(&cm, run.samples.max(64));
    let json = SolveReport {
        scale: cm.outer().scale(),
        n: run.shape_order,
        m_or_terms: run.m_or_terms,
        e: cm.circles().center,
        r1: cm.circles().radius,
        lambda: cm.bilinear().lambda,
        rho1: cm.bilinear().rho1,
        h: cm.hole().center,
        hole_radius: cm.hole().radius,
        epsilon: cm.hole().eccentric_ratio,
        s: cm.circles().spacing,
        delta_max: report.delta_max,
    };
    let text = serde_json::to_string_pretty(&json)
        .map_err(|err| AppError::Compute(format!("report serialization failed: {err}")))?;
    let mut content = text;
    content.push('\n');
    emit(run.out.as_ref(), &content)
}

fn cmd_curve(args: &CurveArgs) -> Result<(), AppError> {
    let run = resolve(&args.map)?;
    let cm = build_composite(&run)?;
    let sig = run.precision;

    let thetas: Vec<f64> = (0..run.samples)
        .map(|j| 2.0 * std::f64::consts::PI * j as f64 / run.samples as f64)
        .collect();
    let outer: Vec<Complex64> = cm.outer().sample_boundary(run.samples);
    let hole: Vec<Complex64> = thetas.iter().map(|&t| cm.inner_hole_image(t)).collect();
    let circle: Vec<Complex64> = thetas
        .iter()
        .map(|&t| Complex64::new(cm.hole().center, 0.0) + Complex64::from_polar(cm.hole().radius, t))
        .collect();

    let mut csv = String::from("curve,theta,x,y\n");
    for (label, points) in [("outer", &outer), ("hole", &hole), ("hole_circle_ref", &circle)] {
        for (&theta, z) in thetas.iter().zip(points.iter()) {
            csv.push_str(&format!(
                "{label},{},{},{}\n",
                fmt_sig(theta, sig),
                fmt_sig(z.re, sig),
                fmt_sig(z.im, sig)
            ));
        }
    }
    emit(run.out.as_ref(), &csv)?;

    let svg_path = match &args.svg {
        Some(path) => Some(path.clone()),
        None => run.file.get::<PathBuf>("svg")?,
    };
    if let Some(path) = svg_path {
        let as_pairs = |pts: &[Complex64]| pts.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>();
        let svg = svg_overlay(
            &as_pairs(&outer),
            &as_pairs(&hole),
            cm.hole().center,
            cm.hole().radius,
        );
        emit(Some(&path), &svg)?;
    }
    Ok(())
}

fn cmd_table1(args: &TableArgs) -> Result<(), AppError> {
    let sig = args.precision.unwrap_or(12);
    if !(1..=17).contains(&sig) {
        return Err(AppError::Usage("--precision must lie in 1..=17".into()));
    }
    let rows = reference_table().map_err(AppError::from)?;
    let mut csv = String::from("R,d,epsilon,delta_max\n");
    for row in rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            row.hole_radius,
            row.gap,
            fmt_sig(row.eccentric_ratio, sig),
            fmt_sig(row.delta_max, sig)
        ));
    }
    emit(args.out.as_ref(), &csv)
}

fn cmd_grid(args: &GridArgs) -> Result<(), AppError> {
    let run = resolve(&args.map)?;
    let rings = match args.rings {
        Some(r) => r,
        None => run.file.get("rings")?.unwrap_or(10),
    };
    let rays = match args.rays {
        Some(r) => r,
        None => run.file.get("rays")?.unwrap_or(36),
    };
    if rings < 2 {
        return Err(AppError::Usage("--rings must be at least 2".into()));
    }
    if rays < 3 {
        return Err(AppError::Usage("--rays must be at least 3".into()));
    }

    let cm = build_composite(&run)?;
    let grid = cm.annulus_grid(rings, rays);
    let sig = run.precision;
    let mut csv = String::from("ring,ray,x,y,flag\n");
    for (j, ring) in grid.iter().enumerate() {
        for (k, point) in ring.iter().enumerate() {
            match point.as_finite() {
                Some(z) => csv.push_str(&format!(
                    "{j},{k},{},{},\n",
                    fmt_sig(z.re, sig),
                    fmt_sig(z.im, sig)
                )),
                None => csv.push_str(&format!("{j},{k},,,inf\n")),
            }
        }
    }
    emit(run.out.as_ref(), &csv)
}
