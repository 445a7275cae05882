//! Homotopy between locally convex curves by interpolating the radius of curvature as a
//! function of the heading.

use super::{HomotopyTrace, StepDiagnostics};
use crate::curve::{ArcSegment, PiecewiseCurve};
use crate::error::{Error, Result};

/// Radius of curvature as a piecewise-constant function of the relative heading:
/// `(θ_start, θ_end, ρ)` triples covering `[0, θ1]`.
pub fn radius_by_argument(c: &PiecewiseCurve) -> Result<Vec<(f64, f64, f64)>> {
    let mut out = Vec::with_capacity(c.segs.len());
    let mut th = 0.0;
    for s in &c.segs {
        if !(s.kappa > 0.0) {
            return Err(Error::NotLocallyConvex);
        }
        let next = th + s.turning();
        out.push((th, next, 1.0 / s.kappa));
        th = next;
    }
    Ok(out)
}

fn radius_at(pieces: &[(f64, f64, f64)], theta: f64) -> f64 {
    pieces.iter().find(|p| theta <= p.1).unwrap_or_else(|| pieces.last().unwrap()).2
}

/// The curve whose radius at heading `θ` is `(1−s)ρ0(θ) + sρ1(θ)`, on the common refinement
/// of both breakpoint sets.
pub fn interpolate(c0: &PiecewiseCurve, c1: &PiecewiseCurve, s: f64) -> Result<PiecewiseCurve> {
    let (r0, r1) = (radius_by_argument(c0)?, radius_by_argument(c1)?);
    let (t0, t1) = (c0.total_turning(), c1.total_turning());
    if (t0 - t1).abs() > 1e-9 {
        return Err(Error::TurningMismatch(t0, t1));
    }
    let mut cuts: Vec<f64> = r0.iter().chain(&r1).map(|p| p.1.min(t0)).collect();
    cuts.push(0.0);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14);
    let segs = cuts
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            let rho = (1.0 - s) * radius_at(&r0, mid) + s * radius_at(&r1, mid);
            ArcSegment::new(1.0 / rho, rho * (w[1] - w[0]))
        })
        .collect();
    Ok(PiecewiseCurve { start: c0.start, segs })
}

pub fn locally_convex_homotopy(c0: &PiecewiseCurve, c1: &PiecewiseCurve, n_steps: usize) -> Result<HomotopyTrace> {
    c0.validate()?;
    c1.validate()?;
    let gap = c0.start.distance(&c1.start).max(c0.end_frame().distance(&c1.end_frame()));
    if gap > 1e-9 {
        return Err(Error::FrameMismatch { gap });
    }
    let target = c0.end_frame();
    let n = n_steps.max(1);
    let mut trace = HomotopyTrace::default();
    for k in 0..=n {
        let s = k as f64 / n as f64;
        let curve = interpolate(c0, c1, s)?;
        trace.diagnostics.push(StepDiagnostics::of(s, &curve, &target));
        trace.s.push(s);
        trace.curves.push(curve);
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    // Two curves from the identity frame back to it with turning 2π: the unit circle and a
    // curve alternating radii 0.6 and 1.4 on quarter turns (opposite quarters cancel).
    fn pair() -> (PiecewiseCurve, PiecewiseCurve) {
        let circle = PiecewiseCurve::from_pairs(&[(1.0, 2.0 * PI)]);
        let q = PI / 2.0;
        let wobbly = PiecewiseCurve::from_pairs(&[(1.0 / 0.6, 0.6 * q), (1.0 / 1.4, 1.4 * q), (1.0 / 0.6, 0.6 * q), (1.0 / 1.4, 1.4 * q)]);
        (circle, wobbly)
    }

    #[test]
    fn fixtures_close() {
        let (a, b) = pair();
        assert!(a.end_frame().distance(&b.end_frame()) < 1e-12);
    }

    #[test]
    fn intermediates_share_end_frame() {
        let (a, b) = pair();
        let tr = locally_convex_homotopy(&a, &b, 16).unwrap();
        assert!(tr.max_end_drift() < 1e-8);
        for d in &tr.diagnostics {
            assert_abs_diff_eq!(d.theta1, 2.0 * PI, epsilon = 1e-12);
            assert!(d.max_abs_kappa <= 1.0 / 0.6 + 1e-12);
        }
    }

    #[test]
    fn midpoint_is_average_radius() {
        let (a, b) = pair();
        let mid = interpolate(&a, &b, 0.5).unwrap();
        let r = radius_by_argument(&mid).unwrap();
        let (ra, rb) = (radius_by_argument(&a).unwrap(), radius_by_argument(&b).unwrap());
        for j in 0..50 {
            let th = 2.0 * PI * (j as f64 + 0.5) / 50.0;
            assert_abs_diff_eq!(radius_at(&r, th), 0.5 * (radius_at(&ra, th) + radius_at(&rb, th)), epsilon = 1e-12);
        }
    }

    #[test]
    fn constant_trace() {
        let (a, _) = pair();
        let tr = locally_convex_homotopy(&a, &a, 4).unwrap();
        for cv in &tr.curves {
            assert!(cv.end_frame().distance(&a.end_frame()) < 1e-12);
            assert_abs_diff_eq!(cv.length(), a.length(), epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_straight_pieces_and_turning_mismatch() {
        let s = PiecewiseCurve::from_pairs(&[(1.0, 1.0), (0.0, 1.0)]);
        assert!(matches!(locally_convex_homotopy(&s, &s, 2), Err(Error::NotLocallyConvex)));
        let a = PiecewiseCurve::from_pairs(&[(1.0, 2.0 * PI)]);
        let b = PiecewiseCurve::from_pairs(&[(1.0, 4.0 * PI)]);
        assert!(matches!(interpolate(&a, &b, 0.5), Err(Error::TurningMismatch(..))));
    }
}
