//! `kakeya`: command-line front end for the convex geometry kernel.
//!
//! Exit codes: 0 success, 1 a fit failed or an experiment found a violation,
//! 2 bad usage or bad input.

mod output;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kakeya_core::fit::{self, fits_translated_with, max_scale_with, sweep_fit_with};
use kakeya_core::inball::{min_width_with, WidthMethod};
use kakeya_core::io::{parse_shape, ShapeDoc};
use kakeya_core::minkowski::{minkowski_sum2, minkowski_sum3, steiner_coeffs3};
use kakeya_core::mu::{mu_average_poly, phi};
use kakeya_core::verify::{self, Figure, FigureItem, Role, SuiteParams};
use kakeya_core::{inball, Halfspaces, Quaternion, Rotation, Shape, Tolerances, Vec3};

#[derive(Parser, Debug)]
#[command(name = "kakeya", version, about = "Convex shapes that fit a container in every orientation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Master seed for sampled orientations and experiments.
    #[arg(long, global = true, env = "KAKEYA_SEED")]
    seed: Option<u64>,
    /// Absolute tolerance for fit decisions.
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT_ABS)]
    tol_abs: f64,
    /// Relative tolerance.
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT_REL)]
    tol_rel: f64,
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "csv")]
    json: Option<PathBuf>,
    /// Write the result as CSV to this file.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Also draw the container, the placed shape and the inball (planar only).
    #[arg(long, global = true, value_name = "PATH")]
    svg: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Largest inscribed ball of a polytope.
    Inball {
        #[arg(long)]
        shape: PathBuf,
    },
    /// Smallest width and the direction attaining it.
    MinWidth {
        #[arg(long)]
        shape: PathBuf,
        /// Search sampled directions instead of the exact candidate set (3D).
        #[arg(long)]
        sampled: Option<usize>,
    },
    /// Minkowski sum of two polygons or two 3D polytopes.
    MinkowskiSum {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// μ-average of a polygon.
    MuAverage {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        mu: usize,
    },
    /// Edge-length vector of a μ-polygon.
    Phi {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        mu: usize,
    },
    /// Does P rotated by the angle translate into Q?
    Fit {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        /// Rotation angle; accepts `deg` or `rad` suffixes, radians by default.
        #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
        angle: f64,
        /// Rotation axis for 3D shapes, as `x,y,z`.
        #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
        axis: Option<[f64; 3]>,
    },
    /// Fit test at many orientations.
    Sweep {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long, default_value_t = 360)]
        samples: usize,
        /// Prove the fit for every angle (planar only).
        #[arg(long)]
        certify: bool,
    },
    /// Largest scale of P that fits Q at every sampled orientation.
    MaxScale {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long, default_value_t = 360)]
        samples: usize,
    },
    /// Coefficients of the parallel-body volume polynomial.
    Steiner {
        #[arg(long)]
        shape: PathBuf,
    },
    /// Run an experiment suite.
    Verify {
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        w: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 360)]
        samples: usize,
    },
    /// Run a named scenario end to end.
    Reproduce { scenario: String },
}

fn parse_angle(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (num, factor) = if let Some(x) = s.strip_suffix("deg") {
        (x, std::f64::consts::PI / 180.0)
    } else if let Some(x) = s.strip_suffix("rad") {
        (x, 1.0)
    } else {
        (s, 1.0)
    };
    let v: f64 = num.trim().parse().map_err(|_| format!("`{s}` is not an angle (e.g. 45deg, 0.5rad, 0.5)"))?;
    if !v.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(v * factor)
}

fn parse_axis(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("`{s}` is not an axis `x,y,z`"))?;
    <[f64; 3]>::try_from(parts).map_err(|_| format!("`{s}` needs exactly three components"))
}

/// Failure that maps to exit code 2.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn read_shape(path: &Path) -> Result<Shape> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_shape(&text).map_err(|e| anyhow!(InputError(format!("{}: {e}", path.display()))))
}

fn container(path: &Path) -> Result<Halfspaces> {
    let s = read_shape(path)?;
    s.halfspaces()
        .ok_or_else(|| anyhow!(InputError(format!("{}: container must be a polytope, not a {}", path.display(), s.kind()))))
}

struct Outcome {
    value: Value,
    figure: Option<Figure>,
    failed: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Self { value, figure: None, failed: false }
    }
}

fn shape_json(s: &Shape) -> Value {
    serde_json::to_value(ShapeDoc::from_shape(s)).expect("shape documents serialize")
}

fn fit_figure(q: &Halfspaces, placed: &Shape) -> Result<Figure> {
    let mut fig = Figure::default();
    fig.items.extend(FigureItem::shape(Role::Container, &q.clone().into()));
    fig.items.extend(FigureItem::shape(Role::Placed, placed));
    if q.dim() == 2 {
        fig.items.push(FigureItem::ball(Role::Inball, &kakeya_core::chebyshev_center(q)?));
    }
    Ok(fig)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    let tol = Tolerances::new(c.tol_abs, c.tol_rel);
    if !(tol.abs >= 0.0 && tol.rel >= 0.0) {
        bail!(InputError("tolerances must be nonnegative".into()));
    }
    let seed = c.seed.unwrap_or(fit::DEFAULT_SEED);
    Ok(match &cli.command {
        Command::Inball { shape } => {
            let s = read_shape(shape)?;
            let b = inball(&s)?;
            let mut out = Outcome::ok(json!({ "center": b.center, "radius": b.radius }));
            if let Some(h) = s.halfspaces() {
                out.figure = Some(fit_figure(&h, &b.into())?);
            }
            out
        }
        Command::MinWidth { shape, sampled } => {
            let s = read_shape(shape)?;
            let method = sampled.map_or(WidthMethod::Exact, WidthMethod::Sampled);
            let (w, u) = min_width_with(&s, method)?;
            Outcome::ok(json!({ "width": w, "direction": u }))
        }
        Command::MinkowskiSum { p, q } => {
            let (a, b) = (read_shape(p)?, read_shape(q)?);
            let sum: Shape = match (&a, &b) {
                (Shape::Polygon(x), Shape::Polygon(y)) => minkowski_sum2(x, y).into(),
                (Shape::Polytope3(x), Shape::Polytope3(y)) => minkowski_sum3(x, y)?.into(),
                _ => bail!(InputError(format!("cannot sum a {} and a {}", a.kind(), b.kind()))),
            };
            let mut out = Outcome::ok(shape_json(&sum));
            if let Some(fig) = FigureItem::shape(Role::Placed, &sum) {
                out.figure = Some(Figure { items: vec![fig] });
            }
            out
        }
        Command::MuAverage { shape, mu } => {
            let s = read_shape(shape)?;
            let poly = s.as_polygon().ok_or_else(|| anyhow!(InputError("mu-average needs a polygon".into())))?;
            let avg: Shape = mu_average_poly(poly, *mu)?.into();
            let mut out = Outcome::ok(shape_json(&avg));
            out.figure = Some(Figure {
                items: vec![FigureItem::polygon(Role::Container, poly)].into_iter().chain(FigureItem::shape(Role::Placed, &avg)).collect(),
            });
            out
        }
        Command::Phi { shape, mu } => {
            let s = read_shape(shape)?;
            let poly = s.as_polygon().ok_or_else(|| anyhow!(InputError("phi needs a polygon".into())))?;
            let v = phi(poly, *mu)?;
            Outcome::ok(serde_json::to_value(ShapeDoc::from_mu_vector(&v))?)
        }
        Command::Fit { p, q, angle, axis } => {
            let (ps, qh) = (read_shape(p)?, container(q)?);
            let rot = match (qh.dim(), axis) {
                (2, None) => Rotation::Planar(*angle),
                (2, Some(_)) => bail!(InputError("--axis applies to 3D shapes only".into())),
                (_, ax) => {
                    let [x, y, z] = ax.unwrap_or([0.0, 0.0, 1.0]);
                    Rotation::Spatial(Quaternion::from_axis_angle(Vec3::new(x, y, z), *angle)?)
                }
            };
            let r = fits_translated_with(&ps, &qh, &rot, &tol)?;
            let placed = ps.rotate(&rot)?.translate(&r.translation)?;
            Outcome {
                value: json!({ "fits": r.fits, "margin": r.margin, "translation": r.translation }),
                figure: Some(fit_figure(&qh, &placed)?),
                failed: !r.fits,
            }
        }
        Command::Sweep { p, q, samples, certify } => {
            let (ps, qh) = (read_shape(p)?, container(q)?);
            let s = sweep_fit_with(&ps, &qh, *samples, *certify, seed, &tol)?;
            let mut value = json!({
                "samples": s.samples,
                "worst_margin": s.worst_margin,
                "worst_angle": s.worst_angle,
                "worst_index": s.worst_index,
                "worst_translation": s.worst_translation,
                "all_fit": s.all_fit,
                "certified": s.certified,
                "lipschitz_bound": s.lipschitz_bound,
                "sampled_only": s.sampled_only,
            });
            if s.sampled_only {
                value["note"] = json!("sampled orientations only: statistical evidence, not a proof");
                value["seed"] = json!(seed);
            }
            let figure = if qh.dim() == 2 {
                let placed = ps.rotate(&Rotation::Planar(s.worst_angle))?.translate(&s.worst_translation)?;
                Some(fit_figure(&qh, &placed)?)
            } else {
                None
            };
            Outcome { value, figure, failed: !s.all_fit }
        }
        Command::MaxScale { p, q, samples } => {
            let (ps, qh) = (read_shape(p)?, container(q)?);
            let alpha = max_scale_with(&ps, &qh, *samples, seed, &tol)?;
            Outcome::ok(json!({ "alpha": alpha, "samples": samples }))
        }
        Command::Steiner { shape } => match read_shape(shape)? {
            Shape::Polytope3(k) => {
                let c = steiner_coeffs3(&k)?;
                Outcome::ok(json!({ "v": c.v, "s": c.s, "m": c.m, "b": c.b }))
            }
            Shape::Polygon(p) => Outcome::ok(json!({ "a": p.area()?, "p": p.perimeter()?, "b": std::f64::consts::PI })),
            other => bail!(InputError(format!("steiner needs a polygon or a vpolytope3, not a {}", other.kind()))),
        },
        Command::Verify { suite, trials, w, d, samples } => {
            if !verify::SUITES.contains(&suite.as_str()) {
                bail!(InputError(format!("unknown suite `{suite}`; expected one of {}", verify::SUITES.join(", "))));
            }
            let params = SuiteParams { trials: *trials, seed: c.seed.unwrap_or(42), w: *w, d: *d, samples: *samples };
            let r = verify::run_suite(suite, &params)?;
            Outcome { failed: r.failures > 0, value: serde_json::to_value(&r)?, figure: None }
        }
        Command::Reproduce { scenario } => {
            if !verify::SCENARIOS.contains(&scenario.as_str()) {
                bail!(InputError(format!(
                    "unknown scenario `{scenario}`; expected one of {}",
                    verify::SCENARIOS.join(", ")
                )));
            }
            let r = verify::reproduce(scenario)?;
            Outcome { failed: r.report.failures > 0, value: serde_json::to_value(&r.report)?, figure: Some(r.figure) }
        }
    })
}

fn emit(cli: &Cli, out: &Outcome) -> Result<()> {
    let c = &cli.common;
    if let Some(path) = &c.svg {
        let fig = out.figure.as_ref().ok_or_else(|| anyhow!(InputError("this command has no planar figure".into())))?;
        output::write_atomic(path, &svg::render(fig))?;
    }
    let text = serde_json::to_string_pretty(&out.value)? + "\n";
    match (&c.json, &c.csv) {
        (Some(path), _) => output::write_atomic(path, &text)?,
        (None, Some(path)) => output::write_atomic(path, &output::to_csv(&out.value))?,
        (None, None) => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = run(&cli).and_then(|out| emit(&cli, &out).map(|_| out.failed));
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
