//! The `umbra` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::directions::{DirectionGrid, RefineConfig};
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon2, ConvexPolytope3};
use crate::io::{
    curve_csv, polygon_json, polytope_json, read_body, read_polytope, scenarios_csv, write_text, Body,
};
use crate::minkowski::{interpolate, minkowski_sum_2d, steiner_data, InterpolationSpec};
use crate::mixed_volumes::{fit_with_residual, MixedVolumeTriple, FIT_RESIDUAL_LIMIT};
use crate::optimizer::{curve_from_polynomial, optimize_tetra_ball, optimize_tetra_tetra};
use crate::projection::{shadow, shadow_via_rotation, Direction3, RotationPair};
use crate::scenarios::{run_all, run_scenario, ScenarioOptions, ScenarioResult};
use crate::shadow_analysis::{hides_behind, max_hide_scale, min_inradius, BisectConfig};
use crate::svg::{emit_curve_svg, emit_svg_polygon};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_REGRESSION: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "umbra", version, about = "Shadows, hiding and Minkowski interpolation of convex bodies")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every command.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Seed for every randomized step; 0 keeps Fibonacci grids unrotated.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Read rotation angles in degrees instead of radians.
    #[arg(long, global = true)]
    pub degrees: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Directions in the Fibonacci hemisphere grid.
    #[arg(long, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Project a body along a direction.
    Shadow {
        #[arg(long)]
        body: PathBuf,
        /// View direction `x,y,z`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_triple, conflicts_with = "rotation", required_unless_present = "rotation")]
        dir: Option<[f64; 3]>,
        /// Rotation angles `alpha,beta` about the x then y axis.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        rotation: Option<[f64; 2]>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Smallest inscribed-disk radius over all shadows.
    MinInradius {
        #[arg(long)]
        body: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Report the grid minimum without local refinement.
        #[arg(long)]
        no_refine: bool,
    },
    /// Check whether A hides behind B on a direction grid.
    HideCheck {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Write every direction record here as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Largest scale of A that hides behind B.
    MaxHideScale {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// The body `mu·A ⊕ (1-mu)·B`.
    Minkowski {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        mu: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Volume of a polytope thickened by a ball.
    Steiner {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        r: f64,
    },
    /// Mixed volumes of two polytopes.
    MixedVolumes {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Best interpolation coefficient for a built-in pair.
    Optimize {
        #[arg(long, value_enum)]
        scenario: OptimizeScenario,
        /// Ratio curve samples as CSV.
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..))]
        samples: u64,
    },
    /// Run a named experiment, or `all`.
    Scenario {
        name: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OptimizeScenario {
    TetraBall,
    TetraTetra,
}

fn parse_floats<const N: usize>(s: &str) -> std::result::Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got '{s}'"));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        let v: f64 = p.parse().map_err(|_| format!("'{p}' is not a number"))?;
        if !v.is_finite() {
            return Err(format!("'{p}' is not finite"));
        }
        *o = v;
    }
    Ok(out)
}

fn parse_triple(s: &str) -> std::result::Result<[f64; 3], String> {
    parse_floats::<3>(s)
}

fn parse_pair(s: &str) -> std::result::Result<[f64; 2], String> {
    parse_floats::<2>(s)
}

pub fn parse_args<I, T>(argv: I) -> std::result::Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match parse_args(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INVALID
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.config.threads {
        builder = builder.num_threads(t as usize);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let mut buf: Vec<u8> = Vec::new();
    let result = pool.install(|| execute(&cli, &mut buf));
    if out.write_all(&buf).and_then(|_| out.flush()).is_err() {
        return EXIT_INVALID;
    }
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.write_all(b"\n"))
        .map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn grid(args: &GridArgs, cfg: &RunConfig) -> Result<DirectionGrid> {
    DirectionGrid::fibonacci(args.n as usize, cfg.seed)
}

fn write_planar_svg(p: &ConvexPolygon2, path: &Option<PathBuf>) -> Result<()> {
    match path {
        Some(path) => emit_svg_polygon(p, path),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct HideSummary<'a> {
    verdict: crate::shadow_analysis::HideVerdict,
    directions: usize,
    failures: usize,
    worst: &'a crate::shadow_analysis::DirectionRecord,
}

#[derive(Serialize)]
struct SteinerSummary {
    radius: f64,
    volume: f64,
    surface_area: f64,
    edge_term: f64,
    steiner_volume: f64,
}

#[derive(Serialize)]
struct MixedSummary {
    #[serde(flatten)]
    volumes: MixedVolumeTriple,
    fit_residual: f64,
}

#[derive(Serialize)]
struct BodySummary {
    vertices: usize,
    measure: f64,
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Shadow { body, dir, rotation, svg } => {
            let p = read_polytope(body)?;
            let s = match (dir, rotation) {
                (Some(d), _) => shadow(&p, &Direction3::from_xyz(d[0], d[1], d[2])?),
                (None, Some([a, b])) => {
                    let rp = if cfg.degrees {
                        RotationPair::from_degrees(*a, *b)?
                    } else {
                        RotationPair::new(*a, *b)?
                    };
                    shadow_via_rotation(&p, &rp)
                }
                (None, None) => return Err(Error::invalid("give --dir or --rotation")),
            };
            write_planar_svg(&s, svg)?;
            emit(out, &polygon_json(&s))?;
        }
        Command::MinInradius { body, grid: g, no_refine } => {
            let p = read_polytope(body)?;
            let refine = RefineConfig::default();
            let r = min_inradius(&p, &grid(g, cfg)?, (!no_refine).then_some(&refine));
            emit(out, &to_json(&r)?)?;
        }
        Command::HideCheck { a, b, grid: g, report } => {
            let (a, b) = (read_polytope(a)?, read_polytope(b)?);
            let r = hides_behind(&a, &b, &grid(g, cfg)?);
            if let Some(path) = report {
                write_text(path, &to_json(&r)?)?;
            }
            let summary = HideSummary {
                verdict: r.verdict,
                directions: r.records.len(),
                failures: r.failures,
                worst: r.worst_record(),
            };
            emit(out, &to_json(&summary)?)?;
        }
        Command::MaxHideScale { a, b, grid: g, tolerance } => {
            if !(*tolerance > 0.0) {
                return Err(Error::invalid("tolerance must be positive"));
            }
            let (a, b) = (read_polytope(a)?, read_polytope(b)?);
            let bisect = BisectConfig {
                tolerance: *tolerance,
                ..BisectConfig::default()
            };
            emit(out, &to_json(&max_hide_scale(&a, &b, &grid(g, cfg)?, &bisect))?)?;
        }
        Command::Minkowski { a, b, mu, out: dest } => {
            if !(0.0..=1.0).contains(mu) {
                return Err(Error::invalid(format!("--mu {mu} outside [0, 1]")));
            }
            let (text, summary) = match (read_body(a)?, read_body(b)?) {
                (Body::Solid(a), Body::Solid(b)) => {
                    let s: ConvexPolytope3 = interpolate(&InterpolationSpec::new(a, b, *mu)?);
                    let summary = BodySummary { vertices: s.vertices().len(), measure: s.volume() };
                    (polytope_json(&s), summary)
                }
                (Body::Planar(a), Body::Planar(b)) => {
                    let s = if *mu == 1.0 {
                        a
                    } else if *mu == 0.0 {
                        b
                    } else {
                        minkowski_sum_2d(&a.scale(*mu), &b.scale(1.0 - mu))
                    };
                    let summary = BodySummary { vertices: s.len(), measure: s.area() };
                    (polygon_json(&s), summary)
                }
                _ => return Err(Error::invalid("both bodies must have the same dimension")),
            };
            match dest {
                Some(path) => {
                    write_text(path, &text)?;
                    emit(out, &to_json(&summary)?)?;
                }
                None => emit(out, &text)?,
            }
        }
        Command::Steiner { body, r } => {
            let p = read_polytope(body)?;
            let d = steiner_data(&p)?;
            let summary = SteinerSummary {
                radius: *r,
                volume: d.volume,
                surface_area: d.surface_area,
                edge_term: d.edge_term,
                steiner_volume: d.volume_at(*r)?,
            };
            emit(out, &to_json(&summary)?)?;
        }
        Command::MixedVolumes { a, b } => {
            let (a, b) = (read_polytope(a)?, read_polytope(b)?);
            let fit = fit_with_residual(&a, &b)?;
            let scale = fit.polynomial.coeffs.iter().fold(1.0f64, |m, c| m.max(c.abs()));
            if !(fit.residual <= FIT_RESIDUAL_LIMIT * scale) {
                return Err(Error::FitResidual {
                    residual: fit.residual,
                    limit: FIT_RESIDUAL_LIMIT * scale,
                });
            }
            let summary = MixedSummary {
                volumes: MixedVolumeTriple::from_cubic(&fit.polynomial),
                fit_residual: fit.residual,
            };
            emit(out, &to_json(&summary)?)?;
        }
        Command::Optimize { scenario, curve, svg, samples } => {
            let opt = match scenario {
                OptimizeScenario::TetraBall => optimize_tetra_ball(),
                OptimizeScenario::TetraTetra => optimize_tetra_tetra(),
            };
            let c = curve_from_polynomial(opt.polynomial.scale(1.0 / opt.reference_volume), *samples as usize);
            if let Some(path) = curve {
                write_text(path, &curve_csv(&c.samples)?)?;
            }
            if let Some(path) = svg {
                emit_curve_svg(&c.samples, path)?;
            }
            emit(out, &to_json(&opt)?)?;
        }
        Command::Scenario { name, grid: g, json, csv } => {
            let opts = ScenarioOptions {
                grid_size: g.n as usize,
                seed: cfg.seed,
            };
            let results = if name == "all" {
                run_all(&opts)?
            } else {
                vec![run_scenario(name, &opts)?]
            };
            if let Some(path) = json {
                write_text(path, &to_json(&results)?)?;
            }
            if let Some(path) = csv {
                write_text(path, &scenarios_csv(&results)?)?;
            }
            emit(out, &scenario_table(&results))?;
            return Ok(regression_exit_code(&results));
        }
    }
    Ok(EXIT_OK)
}

/// [`EXIT_REGRESSION`] if any scenario failed, else [`EXIT_OK`].
pub fn regression_exit_code(results: &[ScenarioResult]) -> i32 {
    if results.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_REGRESSION
    }
}

/// Plain-text report of scenario rows.
pub fn scenario_table(results: &[ScenarioResult]) -> String {
    let mut s = String::new();
    for r in results {
        s.push_str(&format!("{} {}\n", r.name, if r.pass { "PASS" } else { "FAIL" }));
        for row in &r.rows {
            s.push_str(&format!(
                "  {:<40} {:>20.12} {:>20.12} {:>9.1e} {:<9} {}\n",
                row.key,
                row.computed,
                row.expected,
                row.tolerance,
                row.kind.as_str(),
                if row.pass { "ok" } else { "FAIL" }
            ));
        }
    }
    s.pop();
    s
}
