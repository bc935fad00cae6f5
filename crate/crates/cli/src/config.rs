//! Flag and config-file resolution into a validated run setup.
//!
//! A config file holds the same keys as the long flags, one `key=value` per
//! line, `#` comments allowed; explicit flags override file values.

use std::collections::HashMap;
use std::fmt::Debug;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use annulus_map::outer_map::straight_edge_m;
use annulus_map::{Complex64, HoleTarget, HypotrochoidSpec, LaurentMap, PolygonSpec};
use clap::Args;

use crate::AppError;

const CONFIG_KEYS: [&str; 18] = [
    "shape", "n", "m", "nsides", "terms", "rotated", "C", "rout", "a", "R", "d", "h", "samples",
    "precision", "out", "svg", "rings", "rays",
];

/// Map and output flags shared by the subcommands.
#[derive(Args, Debug, Clone, Default)]
pub struct MapArgs {
    /// Outer hole shape: hypotrochoid | polygon
    #[arg(long)]
    pub shape: Option<String>,

    /// Hypotrochoid exponent n (the curve has n+1 lobes)
    #[arg(long)]
    pub n: Option<u32>,

    /// Hypotrochoid coefficient m, or "auto" for the straight-edge value 1/n^2
    #[arg(long)]
    pub m: Option<String>,

    /// Polygon side count (>= 3)
    #[arg(long)]
    pub nsides: Option<u32>,

    /// Polygon series truncation (default 5)
    #[arg(long)]
    pub terms: Option<u32>,

    /// Use the polygon variant rotated by pi/nsides (edge toward the hole)
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub rotated: Option<bool>,

    /// Scale factor C (one normalization of C/rout/a required)
    #[arg(long = "C")]
    pub scale: Option<f64>,

    /// Normalize the outer radius of the shape to this length
    #[arg(long)]
    pub rout: Option<f64>,

    /// Normalize the boundary point F(1) to this length
    #[arg(long)]
    pub a: Option<f64>,

    /// Hole radius R
    #[arg(long = "R")]
    pub hole_radius: Option<f64>,

    /// Axial gap from the normalization length to the near hole rim
    /// (exactly one of --d/--h)
    #[arg(long)]
    pub d: Option<f64>,

    /// Hole center on the positive real axis (exactly one of --d/--h)
    #[arg(long = "h")]
    pub hole_center: Option<f64>,

    /// Boundary sample count (default 720)
    #[arg(long)]
    pub samples: Option<usize>,

    /// Significant digits in CSV output (default 12)
    #[arg(long)]
    pub precision: Option<usize>,

    /// Output file path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Flat key=value config file; flags override file values
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Parsed config file contents.
#[derive(Debug, Default)]
pub struct ConfigFile {
    values: HashMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: Option<&PathBuf>) -> Result<Self, AppError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|err| AppError::Compute(format!("cannot read {}: {err}", path.display())))?;
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(AppError::Usage(format!(
                    "{}:{}: expected key=value, got {line:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim();
            if !CONFIG_KEYS.contains(&key) {
                return Err(AppError::Usage(format!(
                    "{}:{}: unknown key {key:?}",
                    path.display(),
                    lineno + 1
                )));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get<T>(&self, key: &str) -> Result<Option<T>, AppError>
    where
        T: FromStr,
        T::Err: Debug,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|err| {
                AppError::Usage(format!("config key {key}={raw:?}: {err:?}"))
            }),
        }
    }

    fn get_string(&self, key: &str) -> Option<String> {
        self.values.get(key).cloned()
    }
}

/// Flag value if given, else config-file value.
fn pick<T>(flag: Option<T>, file: &ConfigFile, key: &str) -> Result<Option<T>, AppError>
where
    T: FromStr,
    T::Err: Debug,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get(key),
    }
}

/// Everything a subcommand needs to run: the outer map, the hole target, and
/// identification/output settings.
pub struct ResolvedRun {
    pub outer: LaurentMap,
    pub target: HoleTarget,
    /// n for hypotrochoids, side count for polygons (report key "n").
    pub shape_order: u32,
    /// m for hypotrochoids, term count for polygons (report key "m_or_terms").
    pub m_or_terms: f64,
    pub samples: usize,
    pub precision: usize,
    pub out: Option<PathBuf>,
    pub file: ConfigFile,
}

pub fn resolve(args: &MapArgs) -> Result<ResolvedRun, AppError> {
    let file = ConfigFile::load(args.config.as_ref())?;
    let usage = |msg: &str| AppError::Usage(msg.to_string());

    let shape = args
        .shape
        .clone()
        .or_else(|| file.get_string("shape"))
        .ok_or_else(|| usage("--shape is required (hypotrochoid | polygon)"))?;

    let scale_flag: Option<f64> = pick(args.scale, &file, "C")?;
    let rout: Option<f64> = pick(args.rout, &file, "rout")?;
    let a: Option<f64> = pick(args.a, &file, "a")?;
    let norm_count = [scale_flag.is_some(), rout.is_some(), a.is_some()]
        .iter()
        .filter(|p| **p)
        .count();
    if norm_count != 1 {
        return Err(usage("exactly one normalization of --C, --rout, --a is required"));
    }

    let hole_radius: f64 =
        pick(args.hole_radius, &file, "R")?.ok_or_else(|| usage("--R is required"))?;
    let d: Option<f64> = pick(args.d, &file, "d")?;
    let hole_center: Option<f64> = pick(args.hole_center, &file, "h")?;
    if d.is_some() == hole_center.is_some() {
        return Err(usage("exactly one of --d, --h is required"));
    }

    // the normalization value is the characteristic length gaps are measured
    // from
    let anchor = scale_flag.or(rout).or(a).unwrap();
    let target = match (d, hole_center) {
        (Some(d), None) => HoleTarget::gap_from(anchor, d, hole_radius),
        (None, Some(h)) => HoleTarget::center(h, hole_radius),
        _ => unreachable!(),
    };

    let (outer, shape_order, m_or_terms) = match shape.as_str() {
        "hypotrochoid" => {
            let n = pick(args.n, &file, "n")?
                .ok_or_else(|| usage("--n is required for hypotrochoid shapes"))?;
            if n < 1 {
                return Err(usage("--n must be at least 1"));
            }
            let m_raw = args.m.clone().or_else(|| file.get_string("m"));
            let m = match m_raw.as_deref() {
                None | Some("auto") => straight_edge_m(n),
                Some(text) => text
                    .parse::<f64>()
                    .map_err(|_| usage(&format!("--m expects a number or \"auto\", got {text:?}")))?,
            };
            let scale = if let Some(c) = scale_flag {
                c
            } else if let Some(r) = rout {
                r / (1.0 + m.abs())
            } else {
                let f1 = 1.0 + m;
                if f1 <= 0.0 {
                    return Err(usage("cannot normalize F(1)=a when 1 + m <= 0"));
                }
                a.unwrap() / f1
            };
            let spec = HypotrochoidSpec::new(n, m, scale).map_err(AppError::from)?;
            (spec.to_map(), n, m)
        }
        "polygon" => {
            let sides = pick(args.nsides, &file, "nsides")?
                .ok_or_else(|| usage("--nsides is required for polygon shapes"))?;
            let terms = pick(args.terms, &file, "terms")?.unwrap_or(5);
            let rotated = pick(args.rotated, &file, "rotated")?.unwrap_or(false);
            let unit = PolygonSpec::new(sides, terms, 1.0, rotated)
                .map_err(AppError::from)?
                .to_map();
            let scale = if let Some(c) = scale_flag {
                c
            } else if let Some(r) = rout {
                let (_, extent) = unit.radial_extent(3600);
                r / extent
            } else {
                let f1 = unit.eval(Complex64::new(1.0, 0.0)).map_err(AppError::from)?.re;
                if f1 <= 0.0 {
                    return Err(usage("cannot normalize F(1)=a: the unit map has F(1) <= 0"));
                }
                a.unwrap() / f1
            };
            let map = unit.rescaled(scale).map_err(AppError::from)?;
            (map, sides, terms as f64)
        }
        other => return Err(usage(&format!("unknown shape {other:?}"))),
    };

    let samples = pick(args.samples, &file, "samples")?.unwrap_or(720);
    if samples < 3 {
        return Err(usage("--samples must be at least 3"));
    }
    let precision = pick(args.precision, &file, "precision")?.unwrap_or(12);
    if !(1..=17).contains(&precision) {
        return Err(usage("--precision must lie in 1..=17"));
    }
    let out = args.out.clone().or_else(|| file.get_string("out").map(PathBuf::from));

    Ok(ResolvedRun {
        outer,
        target,
        shape_order,
        m_or_terms,
        samples,
        precision,
        out,
        file,
    })
}
