//! Self-verification: the acceptance criteria, grouped into named suites.

use crate::components::surface::{surface_components, SurfaceModel, TurningChoice};
use crate::components::{component_count, Count};
use crate::curve::{random_curve_with, CurveClass, PiecewiseCurve, RandomCurveConfig, Variant};
use crate::deform::dubins::dubins_csc_oracle;
use crate::deform::eights::{attach_eight, spread_eights, spread_eights_with, AttachKind};
use crate::deform::excavator::{dubins_condensed, excavator_trace, pieces_to_curve, Affine, ExcavatorState, SinePiece};
use crate::exec::{self, Execution};
use crate::geom::{c, Frame, C64};
use crate::normalize::{
    admissible_u_interval, canonicalize, normal_translate, transform_curve, translate_frame, translate_kappa, Bounds,
    ReductionCase,
};
use crate::regions::{
    amplitude_circle_test, any_critical_contains, condensed_contains, condensed_region, critical_region,
    disconnection_test, dominant_sign_string, extremal_boundary_point, extremal_curve, ExtremalFamily, SignString,
    Status,
};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    /// Experiments are reported but never fail the run.
    pub logged_only: bool,
    pub checks: Vec<Check>,
    pub elapsed_s: f64,
}

impl CriterionReport {
    pub fn ok(&self) -> bool {
        self.passed || self.logged_only
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.passed, self.logged_only) {
            (true, _) => "PASS",
            (false, true) => "LOGGED",
            (false, false) => "FAIL",
        };
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        write!(f, "criterion {:>2} [{tag}] {} ({:.2}s)", self.id, self.title, self.elapsed_s)?;
        if !failed.is_empty() {
            write!(f, " failing: {}", failed.join(", "))?;
        }
        Ok(())
    }
}

struct Collector {
    checks: Vec<Check>,
}

impl Collector {
    fn new() -> Self {
        Collector { checks: vec![] }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

pub const TITLES: [&str; 10] = [
    "segment threshold at distance 4",
    "open and closed bounds differ on the region boundary",
    "normal translation laws",
    "excavator against the arc-segment-arc oracle",
    "spread curvature decays like 1/n",
    "region soundness",
    "normalization coherence",
    "amplitude circle",
    "flat surface lifts",
    "length gap between condensed and diffuse curves",
];

pub const SUITES: [(&str, &[u8]); 8] = [
    ("all", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]),
    ("components", &[1, 9]),
    ("regions", &[2, 6, 8]),
    ("normalize", &[3, 7]),
    ("dubins", &[4]),
    ("excavator", &[4]),
    ("eights", &[5]),
    ("experiments", &[10]),
];

pub fn suite(name: &str, mode: Execution) -> Result<Vec<CriterionReport>> {
    let ids = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, ids)| *ids)
        .ok_or_else(|| Error::Unsupported(format!("unknown suite {name}")))?;
    Ok(ids.iter().map(|&i| criterion(i, mode)).collect())
}

pub fn criterion(id: u8, mode: Execution) -> CriterionReport {
    let t = Instant::now();
    let mut col = Collector::new();
    let mut logged_only = false;
    match id {
        1 => segment_threshold(&mut col),
        2 => open_closed_flip(&mut col),
        3 => normal_translation_laws(&mut col, mode),
        4 => excavator_vs_oracle(&mut col, mode),
        5 => spread_decay(&mut col, mode),
        6 => region_soundness(&mut col, mode),
        7 => normalization_coherence(&mut col, mode),
        8 => amplitude_circle(&mut col, mode),
        9 => surface_lifts(&mut col),
        10 => {
            logged_only = true;
            length_gap(&mut col, mode)
        }
        _ => col.check("known criterion", false, format!("no criterion {id}")),
    }
    let passed = !col.checks.is_empty() && col.checks.iter().all(|c| c.passed);
    CriterionReport {
        id,
        title: TITLES.get(id as usize - 1).copied().unwrap_or("unknown"),
        passed,
        logged_only,
        checks: col.checks,
        elapsed_s: t.elapsed().as_secs_f64(),
    }
}

pub fn acceptance(mode: Execution) -> Vec<CriterionReport> {
    (1..=10).map(|i| criterion(i, mode)).collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random curve from the identity frame with curvature in `(−1, 1)` and amplitude below π.
fn random_condensed(seed: u64) -> PiecewiseCurve {
    let mut r = rng(seed);
    loop {
        let n = r.gen_range(1..=5);
        let c = random_curve_with(-1.0, 1.0, n, 1.0, &RandomCurveConfig::default(), &mut r);
        if c.class() == CurveClass::Condensed {
            return c;
        }
    }
}

fn segment_threshold(col: &mut Collector) {
    let b = Bounds::symmetric(1.0);
    for (x, want) in [(0.5, 2), (1.0, 2), (2.0, 2), (3.0, 2), (3.999, 2), (4.0, 2), (4.001, 1), (5.0, 1), (10.0, 1)] {
        let got = component_count(&Frame::IDENTITY, &Frame::translation(c(x, 0.0)), &b, 0.0, Variant::Open)
            .map(|r| r.count);
        let want_count = if want == 2 { Count::Two } else { Count::One };
        col.check(format!("x={x}"), got.as_ref().ok() == Some(&want_count), format!("{got:?}"));
    }
}

fn open_closed_flip(col: &mut Collector) {
    let cases = [(c(4.0, 0.0), true, false), (c(2.0, 2.0), false, true)];
    for (q, open, closed) in cases {
        let o = disconnection_test(q, 0.0, Variant::Open);
        let k = disconnection_test(q, 0.0, Variant::Closed);
        col.check(format!("q={q}"), o == open && k == closed, format!("open={o} closed={k}"));
    }
}

fn random_bounds<R: Rng>(r: &mut R, case: usize) -> Bounds {
    let a = r.gen_range(0.2..3.0);
    let d = r.gen_range(0.2..3.0);
    let inf = r.gen_bool(0.25);
    let (k1, k2) = match case % 5 {
        0 => (-a, if inf { f64::INFINITY } else { d }),
        1 => (a, if inf { f64::INFINITY } else { a + d }),
        2 => (0.0, if inf { f64::INFINITY } else { d }),
        3 => (if inf { f64::NEG_INFINITY } else { -a - d }, -a),
        _ => (if inf { f64::NEG_INFINITY } else { -d }, 0.0),
    };
    Bounds::new(k1, k2).unwrap()
}

fn random_curve_in<R: Rng>(r: &mut R, b: &Bounds) -> PiecewiseCurve {
    let n = r.gen_range(1..=6);
    let mut cv = random_curve_with(b.kappa1, b.kappa2, n, 1.5, &RandomCurveConfig::default(), r);
    cv.start = Frame::from_angle(c(r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0)), r.gen_range(-PI..PI));
    cv
}

fn normal_translation_laws(col: &mut Collector, mode: Execution) {
    let worst = exec::map_range(mode, 1000, |i| {
        let mut r = rng(3_000 + i as u64);
        let b = random_bounds(&mut r, i);
        let c0 = random_curve_in(&mut r, &b);
        let (lo, hi) = admissible_u_interval(&b);
        let (lo, hi) = (lo.max(-5.0), hi.min(5.0));
        let u = lo + (hi - lo) * r.gen_range(0.05..0.95);
        let t = match normal_translate(&c0, u) {
            Ok(t) => t,
            Err(_) => return [f64::INFINITY; 4],
        };
        let kappa = c0
            .segs
            .iter()
            .zip(&t.segs)
            .map(|(a, b)| (translate_kappa(a.kappa, u) - b.kappa).abs() / (1.0 + b.kappa.abs()))
            .fold(0.0, f64::max);
        let end = t.end_frame().distance(&translate_frame(&c0.end_frame(), u));
        let turning = (t.total_turning() - c0.total_turning()).abs();
        let back = normal_translate(&t, -u).map(|b| b.end_frame().distance(&c0.end_frame())).unwrap_or(f64::INFINITY);
        [kappa, end, turning, back]
    });
    let max = |k: usize| worst.iter().map(|w| w[k]).fold(0.0, f64::max);
    col.check("curvature law", max(0) <= 1e-12, format!("max relative error {:.3e}", max(0)));
    col.check("end frame", max(1) <= 1e-9, format!("max error {:.3e}", max(1)));
    col.check("turning preserved", max(2) <= 1e-12, format!("max error {:.3e}", max(2)));
    col.check("round trip", max(3) <= 1e-9, format!("max error {:.3e}", max(3)));
}

fn excavator_vs_oracle(col: &mut Collector, mode: Execution) {
    let rows = exec::map_range(mode, 200, |i| -> std::result::Result<[f64; 6], String> {
        let c0 = random_condensed(4_000 + i as u64);
        let q = c0.end_frame();
        let d = dubins_condensed(&q, 1.0).map_err(|e| format!("dubins: {e}"))?;
        let o = dubins_csc_oracle(&q, 1.0).map_err(|e| format!("oracle: {e}"))?;
        let state = ExcavatorState::new(&c0, 1.0).map_err(|e| e.to_string())?;
        let tr = excavator_trace(&c0, 1.0, 64).map_err(|e| e.to_string())?;
        let mut omega_drop: f64 = 0.0;
        let mut len_drop: f64 = 0.0;
        for w in tr.diagnostics.windows(2) {
            omega_drop = omega_drop.max(w[0].omega - w[1].omega);
            len_drop = len_drop.max(w[0].length - w[1].length);
        }
        let area = tr.diagnostics.iter().filter_map(|d| d.area_residual).map(f64::abs).fold(0.0, f64::max);
        Ok([
            (d.length() - o.length()).abs(),
            tr.curves[0].end_frame().distance(&q),
            omega_drop,
            len_drop,
            area / (1.0 + state.a1.abs()),
            tr.max_end_drift(),
        ])
    });
    let errors: Vec<&String> = rows.iter().filter_map(|r| r.as_ref().err()).collect();
    col.check("all inputs solved", errors.is_empty(), format!("{} failures {:?}", errors.len(), errors.first()));
    let ok: Vec<[f64; 6]> = rows.iter().filter_map(|r| r.as_ref().ok().copied()).collect();
    let max = |k: usize| ok.iter().map(|w| w[k]).fold(0.0, f64::max);
    col.check("length agreement", max(0) <= 1e-6, format!("max {:.3e}", max(0)));
    col.check("s=0 endpoint", max(1) <= 1e-4, format!("max {:.3e}", max(1)));
    col.check("amplitude non-decreasing", max(2) <= 1e-12, format!("max drop {:.3e}", max(2)));
    col.check("length non-decreasing", max(3) <= 1e-12, format!("max drop {:.3e}", max(3)));
    col.check("area conservation", max(4) <= 1e-8, format!("max {:.3e}", max(4)));
    col.check("end frames along traces", max(5) <= 1e-8, format!("max {:.3e}", max(5)));
}

fn spread_decay(col: &mut Collector, mode: Execution) {
    let seg = PiecewiseCurve::segment(10.0);
    let ns = [25usize, 50, 100, 200];
    let devs: Vec<f64> = ns
        .iter()
        .map(|&n| {
            spread_eights_with(&seg, n, 0.05, mode)
                .map(|s| s.sup_deviation)
                .unwrap_or(f64::INFINITY)
        })
        .collect();
    for (k, w) in devs.windows(2).enumerate() {
        let ratio = w[1] / w[0];
        col.check(
            format!("n={} to n={}", ns[k], ns[k + 1]),
            w[1] < w[0] && (0.4..=0.6).contains(&ratio),
            format!("sup deviation {:.4e} -> {:.4e}, ratio {ratio:.4}", w[0], w[1]),
        );
    }
    let n50 = spread_eights(&seg, 50, 0.05).map(|s| s.sup_deviation).unwrap_or(f64::INFINITY);
    col.check("n=50 below 0.2", n50 < 0.2, format!("{n50:.4e}"));
}

fn region_soundness(col: &mut Collector, mode: Execution) {
    let cond = exec::map_range(mode, 10_000, |i| {
        let c0 = random_condensed(60_000 + i as u64);
        condensed_contains(c0.end_frame().p, c0.total_turning()).status != Status::Outside
    });
    let bad = cond.iter().filter(|ok| !**ok).count();
    col.check("condensed endpoints", bad == 0, format!("{}/{} inside or on boundary", cond.len() - bad, cond.len()));

    let crit = exec::map_range(mode, 1_000, |i| {
        let mut r = rng(70_000 + i as u64);
        loop {
            let n = r.gen_range(2..=6);
            let c0 = random_curve_with(-1.0, 1.0, n, 1.5, &RandomCurveConfig::default(), &mut r);
            let omega = c0.turning_profile().omega;
            if omega < 1e-3 {
                continue;
            }
            // Stretching every length by π/ω scales the heading function, making the amplitude exactly π.
            let scale = PI / omega;
            let mut k = c0.clone();
            for s in &mut k.segs {
                s.len *= scale;
            }
            if k.class() != CurveClass::Critical {
                return false;
            }
            return any_critical_contains(k.end_frame().p, k.total_turning()).status != Status::Outside;
        }
    });
    let bad = crit.iter().filter(|ok| !**ok).count();
    col.check("critical endpoints", bad == 0, format!("{}/{} inside or on boundary", crit.len() - bad, crit.len()));

    let mut worst: f64 = 0.0;
    for theta1 in [-2.5, -1.0, 0.0, 0.6, 2.0] {
        let (hi0, lo0) = (f64::max(theta1, 0.0), f64::min(theta1, 0.0));
        let grid = |a: f64, b: f64| (0..100).map(move |j| a + (b - a) * j as f64 / 99.0);
        let cond_spec = condensed_region(theta1);
        let mut fams: Vec<(ExtremalFamily, Option<SignString>)> = vec![];
        fams.extend(grid(hi0, PI + lo0).map(|phi| (ExtremalFamily::CondensedPlus { phi }, None)));
        fams.extend(grid(hi0 - PI, lo0).map(|psi| (ExtremalFamily::CondensedMinus { psi }, None)));
        for sigma in [dominant_sign_string(theta1), SignString::new(theta1 < 0.0, 3).unwrap()] {
            fams.extend(grid(hi0 - PI, lo0).map(|mu| (ExtremalFamily::Critical { sigma, mu }, Some(sigma))));
        }
        for (fam, sigma) in fams {
            // Every arc vanishes at one end of the zero-turning family; that curve is the start frame.
            let e = match (extremal_boundary_point(theta1, &fam), extremal_curve(theta1, &fam)) {
                (Ok(p), Ok(cv)) => p.distance(&cv.end_frame()),
                (Ok(p), Err(_)) if theta1 == 0.0 => p.distance(&Frame::IDENTITY),
                _ => f64::INFINITY,
            };
            let p = extremal_boundary_point(theta1, &fam).map(|f| f.p).unwrap_or(C64::new(f64::NAN, 0.0));
            let d = match sigma {
                None => cond_spec.boundary_distance(p),
                Some(s) => critical_region(theta1, s).boundary_distance(p),
            };
            worst = worst.max(e).max(d);
        }
    }
    col.check("extremal endpoints on boundary", worst <= 1e-9, format!("max distance {worst:.3e}"));
}

fn normalization_coherence(col: &mut Collector, mode: Execution) {
    let rows = exec::map_range(mode, 500, |i| {
        let mut r = rng(80_000 + i as u64);
        let b = random_bounds(&mut r, i);
        let c0 = random_curve_in(&mut r, &b);
        let q = c0.end_frame();
        let rec = canonicalize(&c0.start, &q, &b).unwrap();
        let w = transform_curve(&c0, &rec).unwrap();
        let cb = rec.canonical_bounds();
        let inside = w.segs.iter().all(|s| cb.contains(s.kappa));
        let start = w.start.distance(&Frame::IDENTITY);
        let end = w.end_frame().distance(&rec.q0);
        let turning = (w.total_turning() - rec.turning_sign * c0.total_turning()).abs();
        let flips = matches!(rec.case, ReductionCase::NegativePair | ReductionCase::ZeroAbove);
        let sign_ok = (rec.turning_sign < 0.0) == flips;
        (inside, start.max(end), turning, sign_ok, rec.case)
    });
    let outside = rows.iter().filter(|r| !r.0).count();
    let frame = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let turning = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let sign_bad = rows.iter().filter(|r| !r.3).count();
    let cases: std::collections::BTreeSet<String> = rows.iter().map(|r| format!("{:?}", r.4)).collect();
    col.check("all five cases exercised", cases.len() == 5, format!("{cases:?}"));
    col.check("canonical bounds", outside == 0, format!("{outside} witnesses outside"));
    col.check("end frame Q0", frame <= 1e-9, format!("max error {frame:.3e}"));
    col.check("turning preserved up to sign", turning <= 1e-9, format!("max error {turning:.3e}"));
    col.check("sign flips in reversed cases", sign_bad == 0, format!("{sign_bad} mismatches"));
}

fn amplitude_circle(col: &mut Collector, mode: Execution) {
    let thetas = [-2.5, -1.0, 0.0, 0.5, 1.5, 3.0];
    let mut bad = 0usize;
    let mut inside = 0usize;
    for &t in &thetas {
        for i in 0..100 {
            for j in 0..100 {
                let q = c(-6.0 + 12.0 * i as f64 / 99.0, -6.0 + 12.0 * j as f64 / 99.0);
                if amplitude_circle_test(q, t, PI).unwrap_or(false) {
                    inside += 1;
                    if any_critical_contains(q, t).status != Status::Outside {
                        bad += 1;
                    }
                }
            }
        }
    }
    col.check("circle excludes critical region", bad == 0 && inside > 0, format!("{bad} of {inside} grid points"));

    let rows = exec::map_range(mode, 10_000, |i| {
        let c0 = random_condensed(90_000 + i as u64);
        let prof = c0.turning_profile();
        let q = c0.end_frame().p;
        // Circles for amplitudes within 1e−3 above the measured one contain the smaller circle.
        amplitude_circle_test(q, prof.theta1, prof.omega.max(prof.theta1.abs())).unwrap_or(true)
    });
    let hits = rows.iter().filter(|x| **x).count();
    col.check("random curves outside their circle", hits == 0, format!("{hits} of {} inside", rows.len()));
}

fn surface_lifts(col: &mut Collector) {
    let b = Bounds::symmetric(1.0);
    let cyl = SurfaceModel::cylinder(c(3.0, 0.0));
    match surface_components(&cyl, &Frame::IDENTITY, &Frame::IDENTITY, &b, TurningChoice::WholeTurns(0), Some(7.0), Variant::Open) {
        Ok(reps) => {
            let at = |x: f64| reps.iter().find(|r| (r.lift.p - c(x, 0.0)).norm() < 1e-9).map(|r| r.report.count);
            col.check("cylinder lift 3", at(3.0) == Some(Count::Two), format!("{:?}", at(3.0)));
            col.check("cylinder lift 6", at(6.0) == Some(Count::One), format!("{:?}", at(6.0)));
        }
        Err(e) => col.check("cylinder", false, e.to_string()),
    }
    let torus = SurfaceModel::torus(c(4.0, 0.0), c(0.0, 4.0));
    let lifts = torus.orbit(&Frame::IDENTITY, C64::new(0.0, 0.0), 10.0).len();
    let mut direct = 0;
    for m in -10i64..=10 {
        for n in -10i64..=10 {
            if ((4 * m).pow(2) + (4 * n).pow(2)) as f64 <= 100.0 {
                direct += 1;
            }
        }
    }
    col.check("torus lift count", lifts == direct, format!("{lifts} lifts, {direct} lattice points"));
}

/// A condensed curve from the identity to `(b, 1)`: the sine of the heading is a random
/// arc spline on `[0, b/2]` vanishing at both ends, extended to `[0, b]` by odd symmetry
/// about the midpoint, which makes the rise integrate to zero.
fn random_condensed_to<R: Rng>(r: &mut R, b: f64) -> PiecewiseCurve {
    loop {
        let m = r.gen_range(1..=6);
        let mut xs: Vec<f64> = (0..m - 1).map(|_| r.gen_range(0.0..0.5 * b)).collect();
        xs.push(0.0);
        xs.push(0.5 * b);
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let ks: Vec<f64> = (0..m).map(|_| r.gen_range(-0.5..0.5)).collect();
        let end: f64 = ks.iter().zip(xs.windows(2)).map(|(k, w)| k * (w[1] - w[0])).sum();
        let fix = -end / (0.5 * b);
        let mut pieces = Vec::new();
        let mut s = 0.0;
        for (k, w) in ks.iter().zip(xs.windows(2)) {
            let k = k + fix;
            pieces.push(SinePiece { x0: w[0], x1: w[1], line: Affine { a: s - k * w[0], k } });
            s += k * (w[1] - w[0]);
        }
        let mirrored: Vec<SinePiece> = pieces
            .iter()
            .rev()
            .map(|p| SinePiece {
                x0: b - p.x1,
                x1: b - p.x0,
                line: Affine { a: -p.line.a - p.line.k * b, k: p.line.k },
            })
            .collect();
        pieces.extend(mirrored);
        let top = pieces.iter().flat_map(|p| [p.line.at(p.x0), p.line.at(p.x1)]).fold(0.0, |a: f64, x| a.max(x.abs()));
        if top < 0.95 {
            return pieces_to_curve(Frame::IDENTITY, &pieces);
        }
    }
}

fn length_gap(col: &mut Collector, mode: Execution) {
    let q = Frame::translation(c(3.0, 0.0));
    let cond = exec::map_range(mode, 10_000, |i| {
        let mut r = rng(100_000 + i as u64);
        let c0 = random_condensed_to(&mut r, 3.0);
        (c0.length(), c0.turning_profile().omega, c0.end_frame().distance(&q))
    });
    let diff = exec::map_range(mode, 10_000, |i| {
        let mut r = rng(200_000 + i as u64);
        let c0 = random_condensed_to(&mut r, 3.0);
        let t0 = r.gen_range(0.3..0.7);
        attach_eight(&c0, 1, t0, 0.1, AttachKind::Eight).map(|d| (d.length(), d.class(), d.end_frame().distance(&q)))
    });
    let reach = cond.iter().map(|x| x.2).fold(0.0, f64::max);
    let omega_hat = cond.iter().map(|x| x.1).fold(0.0, f64::max);
    let m = cond.iter().map(|x| x.0).fold(0.0, f64::max);
    let bound = 3.0 / (0.5 * omega_hat).cos();
    let diffuse: Vec<(f64, CurveClass, f64)> = diff.into_iter().filter_map(|d| d.ok()).collect();
    let big_m = diffuse.iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
    let all_diffuse = diffuse.len() == 10_000 && diffuse.iter().all(|d| d.1 == CurveClass::Diffuse && d.2 < 1e-9);
    col.check("samples reach Q", reach < 1e-9 && all_diffuse, format!("max end error {reach:.3e}"));
    col.check("sup length below the secant bound", m < bound, format!("m={m:.6} bound={bound:.6} omega={omega_hat:.6}"));
    col.check("sup condensed below inf diffuse", m < big_m, format!("m={m:.6} M={big_m:.6}"));
}
