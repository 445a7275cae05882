mod args;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvspace::components::surface::{surface_components, SurfaceModel, TurningChoice};
use curvspace::components::component_count;
use curvspace::curve::{in_bounds, random_curve_with, PiecewiseCurve, RandomCurveConfig, Variant};
use curvspace::deform::convex::locally_convex_homotopy;
use curvspace::deform::dubins::{csc_word, dubins_csc_oracle, word_ties};
use curvspace::deform::eights::{attach_eight, spread_eights_with, AttachKind};
use curvspace::deform::excavator::{dubins_condensed, excavator_trace_with};
use curvspace::deform::graft::{find_antipodal_pairs, graft};
use curvspace::error::Error;
use curvspace::exec::Execution;
use curvspace::geom::{Frame, C64};
use curvspace::io::{
    bounds_to_value, curve_to_value, frame_to_value, lifts_to_value, point_to_value, report_to_value,
    svg_document, trace_to_value,
};
use curvspace::normalize::Bounds;
use curvspace::regions::{condensed_region, critical_region, dominant_sign_string, emit_region_boundary, SignString};
use curvspace::verify;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

/// Components of spaces of planar curves with bounded curvature.
#[derive(Parser)]
#[command(name = "curvspace", version)]
struct Cli {
    /// Also write an SVG drawing of the result here.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Run batch work on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, default_value = "-1", value_parser = args::number, allow_hyphen_values = true)]
    k1: f64,
    #[arg(long, default_value = "1", value_parser = args::number, allow_hyphen_values = true)]
    k2: f64,
    #[arg(long, value_enum, default_value_t = VariantArg::Open)]
    variant: VariantArg,
}

impl BoundsArgs {
    fn bounds(&self) -> Result<Bounds, Error> {
        Bounds::new(self.k1, self.k2)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Open,
    Closed,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Open => Variant::Open,
            VariantArg::Closed => Variant::Closed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Condensed,
    Critical,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    Plane,
    Cylinder,
    Torus,
    Mobius,
    Klein,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Loop,
    Eight,
}

#[derive(Subcommand)]
enum Command {
    /// Turning, amplitude and class of a curve.
    Classify {
        #[arg(long, value_parser = args::curve)]
        curve: PiecewiseCurve,
        /// Also report whether the curve satisfies --k1/--k2.
        #[arg(long)]
        check_bounds: bool,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Final frame of a curve.
    Endframe {
        #[arg(long, value_parser = args::curve)]
        curve: PiecewiseCurve,
    },
    /// Number of components of the curve space from --p to the frame at --q with heading and turning --theta.
    Components {
        #[arg(long, value_parser = args::point, allow_hyphen_values = true)]
        q: C64,
        /// Total turning; also the final heading unless --heading is given.
        #[arg(long, value_parser = args::number, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_parser = args::number, allow_hyphen_values = true)]
        heading: Option<f64>,
        #[arg(long, value_parser = args::frame, allow_hyphen_values = true, default_value = "0,0,0")]
        p: Frame,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Membership of a point in the condensed or critical region for curvature in (-1, 1).
    Region {
        #[arg(long, value_parser = args::point, allow_hyphen_values = true)]
        q: C64,
        #[arg(long, value_parser = args::number, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_enum)]
        which: Which,
        /// Sign string such as `-+` for the critical type; defaults to the dominant one.
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<String>,
        #[arg(long, value_enum, default_value_t = VariantArg::Open)]
        variant: VariantArg,
    },
    /// Shortest condensed path to a frame, from the excavator and from the arc-segment-arc candidates.
    Dubins {
        #[arg(long, value_parser = args::frame, allow_hyphen_values = true)]
        q: Frame,
        #[arg(long, default_value = "1", value_parser = args::number)]
        kappa0: f64,
    },
    /// Explicit homotopies.
    Deform {
        #[command(subcommand)]
        op: DeformOp,
    },
    /// Components on a complete flat surface, one report per lift of the final frame.
    Surface {
        #[arg(long, value_enum)]
        kind: SurfaceArg,
        /// First translation (cylinder, torus).
        #[arg(long, value_parser = args::point, allow_hyphen_values = true)]
        a: Option<C64>,
        /// Second translation (torus).
        #[arg(long, value_parser = args::point, allow_hyphen_values = true)]
        b: Option<C64>,
        /// Glide length (Möbius band, Klein bottle).
        #[arg(long, value_parser = args::number, allow_hyphen_values = true)]
        d: Option<f64>,
        /// Vertical translation (Klein bottle).
        #[arg(long, value_parser = args::number, allow_hyphen_values = true)]
        h: Option<f64>,
        #[arg(long, value_parser = args::frame, allow_hyphen_values = true, default_value = "0,0,0")]
        u: Frame,
        #[arg(long, value_parser = args::frame, allow_hyphen_values = true)]
        v: Frame,
        /// Whole turns added to the principal turning of each lift.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        turns: i64,
        #[arg(long, value_parser = args::number)]
        radius: Option<f64>,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Random curve with curvature inside the bounds.
    Random {
        #[arg(long, default_value_t = 4)]
        segs: usize,
        #[arg(long, default_value = "1", value_parser = args::number)]
        max_len: f64,
        /// Defaults to $CURVSPACE_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::SUITES.map(|(n, _)| n)))]
        suite: String,
    },
}

#[derive(Subcommand)]
enum DeformOp {
    /// Contract a condensed curve to the shortest path to its end frame.
    Excavator {
        #[arg(long, value_parser = args::curve)]
        curve: PiecewiseCurve,
        #[arg(long, default_value = "1", value_parser = args::number)]
        kappa0: f64,
        #[arg(long, default_value_t = 16)]
        steps: usize,
    },
    /// Insert loops or eights at one point of a curve.
    Attach {
        #[arg(long, value_parser = args::curve)]
        curve: PiecewiseCurve,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Eight)]
        kind: KindArg,
        #[arg(long, default_value = "0.5", value_parser = args::number)]
        t0: f64,
        #[arg(long, default_value = "0.125", value_parser = args::number)]
        eps: f64,
    },
    /// Spread n eights along a curve.
    Spread {
        #[arg(long, value_parser = args::curve)]
        curve: PiecewiseCurve,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0.01", value_parser = args::number)]
        ds: f64,
    },
    /// Insert segments of length --sigma at each antipodal pair of a diffuse curve.
    Graft {
        #[arg(long, value_parser = args::curve)]
        curve: PiecewiseCurve,
        #[arg(long, default_value = "1", value_parser = args::number)]
        sigma: f64,
    },
    /// Homotopy between two curves with positive curvature and equal end frames.
    Convex {
        #[arg(long, value_parser = args::curve)]
        from: PiecewiseCurve,
        #[arg(long, value_parser = args::curve)]
        to: PiecewiseCurve,
        #[arg(long, default_value_t = 16)]
        steps: usize,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_numeric() {
            Failure { code: 3, kind: "numeric", message: e.to_string() }
        } else {
            Failure { code: 2, kind: "validation", message: e.to_string() }
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, kind: "usage", message: message.into() }
}

/// Result of a verb: the JSON document, polylines to draw, and whether the run passed.
struct Output {
    doc: Value,
    drawing: Vec<Vec<C64>>,
    ok: bool,
}

impl Output {
    fn new(doc: Value) -> Output {
        Output { doc, drawing: vec![], ok: true }
    }

    fn draw_curves(mut self, curves: &[PiecewiseCurve]) -> Output {
        self.drawing = curves.iter().map(|c| c.sample_points(0.01).iter().map(|s| s.point).collect()).collect();
        self
    }
}

fn default_seed() -> Result<u64, Failure> {
    match std::env::var("CURVSPACE_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| usage(format!("CURVSPACE_SEED is not an unsigned integer: {s}"))),
        Err(_) => Ok(0),
    }
}

fn need<T>(x: Option<T>, flag: &str) -> Result<T, Failure> {
    x.ok_or_else(|| usage(format!("--{flag} is required for this surface")))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let mode = if cli.sequential { Execution::Sequential } else { Execution::default() };
    let out = match &cli.command {
        Command::Classify { curve, check_bounds, bounds } => {
            let prof = curve.turning_profile();
            let mut doc = json!({
                "class": curve.class(),
                "theta1": prof.theta1,
                "omega": prof.omega,
                "theta_plus": prof.theta_plus,
                "theta_minus": prof.theta_minus,
                "length": curve.length(),
            });
            if *check_bounds {
                doc["bounds"] = bounds_to_value(&bounds.bounds()?);
                doc["in_bounds"] = json!(in_bounds(curve, bounds.k1, bounds.k2, bounds.variant.into())?);
            }
            Output::new(doc).draw_curves(std::slice::from_ref(curve))
        }
        Command::Endframe { curve } => {
            let e = curve.end_frame();
            Output::new(json!({ "position": point_to_value(e.p), "heading": e.heading(), "frame": frame_to_value(&e) }))
                .draw_curves(std::slice::from_ref(curve))
        }
        Command::Components { q, theta, heading, p, bounds } => {
            let q = Frame::from_angle(*q, heading.unwrap_or(*theta));
            let rep = component_count(p, &q, &bounds.bounds()?, *theta, bounds.variant.into())?;
            Output::new(report_to_value(&rep)).draw_curves(&rep.witnesses)
        }
        Command::Region { q, theta, which, sigma, variant } => {
            let spec = match which {
                Which::Condensed => {
                    if sigma.is_some() {
                        return Err(usage("--sigma applies only to the critical region"));
                    }
                    condensed_region(*theta)
                }
                Which::Critical => {
                    let s = match sigma {
                        Some(t) => SignString::parse(t)?,
                        None => dominant_sign_string(*theta),
                    };
                    critical_region(*theta, s)
                }
            };
            let v = spec.verdict(*q, curvspace::regions::BOUNDARY_TOL);
            let doc = json!({
                "status": v.status,
                "holds": v.holds((*variant).into()),
                "boundary_distance": if spec.is_empty() { Value::Null } else { json!(spec.boundary_distance(*q)) },
            });
            Output { doc, drawing: emit_region_boundary(&spec, 0.01), ok: true }
        }
        Command::Dubins { q, kappa0 } => {
            let path = dubins_condensed(q, *kappa0)?;
            let oracle = dubins_csc_oracle(q, *kappa0).ok();
            let doc = json!({
                "curve": curve_to_value(&path),
                "length": path.length(),
                "word": csc_word(&path).map(|w| w.to_string()),
                "oracle_length": oracle.as_ref().map(|c| c.length()),
                "ties": word_ties(q, *kappa0, 1e-9).iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            });
            Output::new(doc).draw_curves(&[path])
        }
        Command::Deform { op } => deform(op, mode)?,
        Command::Surface { kind, a, b, d, h, u, v, turns, radius, bounds } => {
            let surface = match kind {
                SurfaceArg::Plane => SurfaceModel::plane(),
                SurfaceArg::Cylinder => SurfaceModel::cylinder(need(*a, "a")?),
                SurfaceArg::Torus => SurfaceModel::torus(need(*a, "a")?, need(*b, "b")?),
                SurfaceArg::Mobius => SurfaceModel::mobius(need(*d, "d")?),
                SurfaceArg::Klein => SurfaceModel::klein(need(*d, "d")?, need(*h, "h")?),
            };
            let lifts = surface_components(
                &surface,
                u,
                v,
                &bounds.bounds()?,
                TurningChoice::WholeTurns(*turns),
                *radius,
                bounds.variant.into(),
            )?;
            let mut out = Output::new(lifts_to_value(&lifts));
            out.drawing = lifts.iter().map(|l| vec![u.p, l.lift.p]).collect();
            out
        }
        Command::Random { segs, max_len, seed, bounds } => {
            let b = bounds.bounds()?;
            if *segs == 0 || !(*max_len > 0.0 && max_len.is_finite()) {
                return Err(usage("--segs must be positive and --max-len positive and finite"));
            }
            let seed = match seed {
                Some(s) => *s,
                None => default_seed()?,
            };
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let c = random_curve_with(b.kappa1, b.kappa2, *segs, *max_len, &RandomCurveConfig::default(), &mut r);
            Output::new(curve_to_value(&c)).draw_curves(&[c])
        }
        Command::Verify { suite } => {
            let reports = verify::suite(suite, mode)?;
            let ok = reports.iter().all(|r| r.ok());
            for r in &reports {
                eprintln!("{r}");
            }
            Output { doc: json!({ "suite": suite, "passed": ok, "criteria": reports }), drawing: vec![], ok }
        }
    };
    Ok(out)
}

fn deform(op: &DeformOp, mode: Execution) -> Result<Output, Failure> {
    let out = match op {
        DeformOp::Excavator { curve, kappa0, steps } => {
            let t = excavator_trace_with(curve, *kappa0, *steps, mode)?;
            Output::new(trace_to_value(&t)).draw_curves(&t.curves)
        }
        DeformOp::Attach { curve, n, kind, t0, eps } => {
            let kind = match kind {
                KindArg::Loop => AttachKind::Loop,
                KindArg::Eight => AttachKind::Eight,
            };
            let c = attach_eight(curve, *n, *t0, *eps, kind)?;
            Output::new(json!({ "curve": curve_to_value(&c), "end": frame_to_value(&c.end_frame()) })).draw_curves(&[c])
        }
        DeformOp::Spread { curve, n, ds } => {
            let s = spread_eights_with(curve, *n, *ds, mode)?;
            let doc = json!({
                "n": s.n,
                "sup_deviation": s.sup_deviation,
                "constant": s.constant,
                "start": frame_to_value(&s.start_frame()),
                "end": frame_to_value(&s.end_frame()),
                "total_turning": s.total_turning(),
                "samples": s.samples.len(),
            });
            Output { doc, drawing: vec![s.points()], ok: true }
        }
        DeformOp::Graft { curve, sigma } => {
            if !(*sigma >= 0.0 && sigma.is_finite()) {
                return Err(usage("--sigma must be nonnegative and finite"));
            }
            let pairs = find_antipodal_pairs(curve)?;
            let mut ins = Vec::with_capacity(2 * pairs.len());
            let mut pairing = Vec::with_capacity(2 * pairs.len());
            for (k, (s0, s1)) in pairs.iter().enumerate() {
                ins.push((*s0, *sigma));
                ins.push((*s1, *sigma));
                pairing.push(2 * k + 1);
                pairing.push(2 * k);
            }
            let c = graft(curve, &ins, &pairing)?;
            let doc = json!({
                "pairs": pairs,
                "curve": curve_to_value(&c),
                "end_drift": c.end_frame().distance(&curve.end_frame()),
            });
            Output::new(doc).draw_curves(&[curve.clone(), c])
        }
        DeformOp::Convex { from, to, steps } => {
            let t = locally_convex_homotopy(from, to, *steps)?;
            Output::new(trace_to_value(&t)).draw_curves(&t.curves)
        }
    };
    Ok(out)
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("{}", json!({ "error": { "kind": f.kind, "message": f.message } }));
    ExitCode::from(f.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&usage(e.to_string().trim_end())),
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(f) => return fail(&f),
    };
    if let Some(path) = &cli.svg {
        if let Err(e) = std::fs::write(path, svg_document(&out.drawing)) {
            return fail(&usage(format!("{}: {e}", path.display())));
        }
    }
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout(), "{}", out.doc);
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
