//! Loops and figure eights of radius 2: attaching them at a point and spreading them
//! along a whole curve.

use crate::curve::{ArcSegment, PiecewiseCurve};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::geom::{cis, cross, Frame, C64, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const LOOP_RADIUS: f64 = 2.0;
pub const LOOP_KAPPA: f64 = 1.0 / LOOP_RADIUS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttachKind {
    Loop,
    Eight,
}

/// The radius-2 circle traversed `n` times counterclockwise, from the identity frame.
pub fn loop_curve(n: usize) -> PiecewiseCurve {
    PiecewiseCurve::from_pairs(&[(LOOP_KAPPA, 2.0 * PI * LOOP_RADIUS * n as f64)])
}

/// The figure eight traversed `n` times: a counterclockwise loop followed by a clockwise one.
pub fn eight_curve(n: usize) -> PiecewiseCurve {
    let len = 2.0 * PI * LOOP_RADIUS;
    let pairs: Vec<(f64, f64)> = (0..n).flat_map(|_| [(LOOP_KAPPA, len), (-LOOP_KAPPA, len)]).collect();
    PiecewiseCurve::from_pairs(&pairs)
}

/// Inserts `n` loops or eights at the point of `c` at parameter `t0` (arc length rescaled to `[0, 1]`).
///
/// The window `ε` only controls the reparametrization in the time domain, so geometrically
/// it just has to satisfy `0 < 2ε < min(t0, 1 − t0)`.
pub fn attach_eight(c: &PiecewiseCurve, n: usize, t0: f64, eps: f64, kind: AttachKind) -> Result<PiecewiseCurve> {
    if !(n >= 1 && eps > 0.0 && 2.0 * eps < t0.min(1.0 - t0)) {
        return Err(Error::BadWindow { t0, eps, n });
    }
    c.validate()?;
    let mut out = c.clone();
    let at = out.split_at(t0 * c.length());
    let insert = match kind {
        AttachKind::Loop => loop_curve(n),
        AttachKind::Eight => eight_curve(n),
    };
    out.segs.splice(at..at, insert.segs);
    Ok(out)
}

/// `attach_eight` with the default window `t0 = ½`, `ε = ⅛`.
pub fn attach_default(c: &PiecewiseCurve, n: usize, kind: AttachKind) -> Result<PiecewiseCurve> {
    attach_eight(c, n, 0.5, 0.125, kind)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpreadSample {
    pub t: f64,
    pub point: C64,
    pub velocity: C64,
    pub kappa: f64,
}

/// A curve with `n` eights spread along it, sampled densely in its own parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpreadCurve {
    pub n: usize,
    pub samples: Vec<SpreadSample>,
    /// `sup |κ| − ½` deviation over the samples.
    pub sup_deviation: f64,
    /// `n · sup_deviation`, the measured constant of the `O(1/n)` estimate.
    pub constant: f64,
}

impl SpreadCurve {
    pub fn start_frame(&self) -> Frame {
        let s = &self.samples[0];
        Frame::new(s.point, s.velocity)
    }

    pub fn end_frame(&self) -> Frame {
        let s = self.samples.last().unwrap();
        Frame::new(s.point, s.velocity)
    }

    /// Total turning from the unwrapped velocity angle between consecutive samples.
    pub fn total_turning(&self) -> f64 {
        self.samples.windows(2).map(|w| (w[1].velocity / w[0].velocity).arg()).sum()
    }

    pub fn points(&self) -> Vec<C64> {
        self.samples.iter().map(|s| s.point).collect()
    }
}

/// Position, first and second derivatives of `β(n t)` in `t`, taking the one-sided
/// branch to the right of the junctions.
fn eight_jet(n: usize, t: f64) -> (C64, C64, C64) {
    let nf = n as f64;
    let u = 2.0 * nf * t;
    let k = u.floor().min(2.0 * nf - 1.0).max(0.0);
    let v = u - k;
    let s = if (k as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let e = cis(s * 2.0 * PI * v);
    let b = s * 2.0 * I * (C64::new(1.0, 0.0) - e);
    let db = 8.0 * PI * nf * e;
    let ddb = 32.0 * PI * PI * nf * nf * s * I * e;
    (b, db, ddb)
}

/// Curvature of a planar curve from its first two derivatives.
pub fn curvature_from_jet(d1: C64, d2: C64) -> f64 {
    cross(d1, d2) / d1.norm().powi(3)
}

pub fn spread_eights(c: &PiecewiseCurve, n: usize, ds: f64) -> Result<SpreadCurve> {
    spread_eights_with(c, n, ds, Execution::default())
}

/// `S(t) = Φ_c(t)·β_n(t)` with analytic derivatives; samples are spaced so that the
/// arc length between them is at most about `ds`.
pub fn spread_eights_with(c: &PiecewiseCurve, n: usize, ds: f64, mode: Execution) -> Result<SpreadCurve> {
    c.validate()?;
    let n = n.max(1);
    let len = c.length();
    if !(len > 0.0) || !(ds > 0.0) {
        return Err(Error::InvalidCurve("spreading needs positive length and spacing".into()));
    }
    let frames = c.breakpoint_frames();
    let mut cum = Vec::with_capacity(c.segs.len() + 1);
    cum.push(0.0);
    for s in &c.segs {
        cum.push(cum.last().unwrap() + s.len);
    }
    let approx_len = len + 8.0 * PI * n as f64;
    let per = ((approx_len / ds) / (2 * n) as f64).ceil().max(1.0) as usize;
    let m = per * 2 * n;
    let samples = exec::map_range(mode, m + 1, |j| {
        let t = j as f64 / m as f64;
        let s = len * t;
        let idx = match cum.partition_point(|&x| x <= s) {
            0 => 0,
            i => (i - 1).min(c.segs.len() - 1),
        };
        let seg = c.segs[idx];
        let f = frames[idx].mul(&ArcSegment::new(seg.kappa, s - cum[idx]).motion());
        let (g, tau, k) = (f.p, f.w, seg.kappa);
        let dg = len * tau;
        let dtau = I * len * k * tau;
        let ddg = I * len * len * k * tau;
        let ddtau = -len * len * k * k * tau;
        let (b, db, ddb) = eight_jet(n, t);
        let point = g + tau * b;
        let d1 = dg + dtau * b + tau * db;
        let d2 = ddg + ddtau * b + 2.0 * dtau * db + tau * ddb;
        SpreadSample { t, point, velocity: d1, kappa: curvature_from_jet(d1, d2) }
    });
    let sup_deviation = samples.iter().map(|s| (s.kappa.abs() - LOOP_KAPPA).abs()).fold(0.0, f64::max);
    Ok(SpreadCurve { n, samples, sup_deviation, constant: n as f64 * sup_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveClass;
    use crate::geom::c;
    use approx::assert_abs_diff_eq;

    #[test]
    fn building_blocks_close_up() {
        for n in 1..4 {
            assert!(loop_curve(n).end_frame().distance(&Frame::IDENTITY) < 1e-12);
            assert!(eight_curve(n).end_frame().distance(&Frame::IDENTITY) < 1e-12);
            assert_abs_diff_eq!(loop_curve(n).total_turning(), 2.0 * PI * n as f64, epsilon = 1e-12);
            assert_abs_diff_eq!(eight_curve(n).total_turning(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn eight_matches_closed_form() {
        // β(t) = α(2t) then −α(−2t), with α(t) = 2i(1 − e^{2πit}).
        let alpha = |t: f64| 2.0 * I * (C64::new(1.0, 0.0) - cis(2.0 * PI * t));
        let e = eight_curve(1);
        let total = e.length();
        for j in 0..=20 {
            let t = j as f64 / 20.0;
            let want = if t <= 0.5 { alpha(2.0 * t) } else { -alpha(-2.0 * t) };
            assert!((e.frame_at(total * t).p - want).norm() < 1e-12);
            assert!((eight_jet(1, t.min(0.999999)).0 - want).norm() < 1e-4);
        }
    }

    #[test]
    fn attach_preserves_end_frame() {
        let c0 = PiecewiseCurve::from_pairs(&[(0.3, 2.0), (-0.5, 1.5)]);
        let e = attach_default(&c0, 1, AttachKind::Eight).unwrap();
        assert!(e.end_frame().distance(&c0.end_frame()) < 1e-9);
        assert_abs_diff_eq!(e.total_turning(), c0.total_turning(), epsilon = 1e-12);
        let l = attach_default(&c0, 2, AttachKind::Loop).unwrap();
        assert!(l.end_frame().distance(&c0.end_frame()) < 1e-9);
        assert_abs_diff_eq!(l.total_turning(), c0.total_turning() + 4.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn eight_on_segment_is_diffuse() {
        let e = attach_default(&PiecewiseCurve::segment(5.0), 1, AttachKind::Eight).unwrap();
        assert_eq!(e.class(), CurveClass::Diffuse);
        assert_abs_diff_eq!(e.total_turning(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn bad_window() {
        let s = PiecewiseCurve::segment(1.0);
        assert!(matches!(attach_eight(&s, 1, 0.5, 0.3, AttachKind::Loop), Err(Error::BadWindow { .. })));
        assert!(matches!(attach_eight(&s, 0, 0.5, 0.1, AttachKind::Loop), Err(Error::BadWindow { .. })));
    }

    #[test]
    fn spread_curvature_matches_finite_differences() {
        let c0 = PiecewiseCurve::from_pairs(&[(0.4, 3.0), (-0.2, 4.0)]);
        let n = 7;
        let sp = spread_eights(&c0, n, 0.05).unwrap();
        let m = sp.samples.len() - 1;
        let h = 1.0 / m as f64;
        for j in (1..m).step_by(37) {
            let (a, b, c1) = (sp.samples[j - 1].point, sp.samples[j].point, sp.samples[j + 1].point);
            let d1 = (c1 - a) / (2.0 * h);
            let d2 = (c1 - 2.0 * b + a) / (h * h);
            // Skip samples next to a junction of the eight or a breakpoint of c.
            let u = 2.0 * n as f64 * sp.samples[j].t;
            let near_break = (sp.samples[j].t * c0.length() - 3.0).abs() < 2.0 * h * c0.length();
            if (u - u.round()).abs() < 4.0 * h * 2.0 * n as f64 || near_break {
                continue;
            }
            assert_abs_diff_eq!(curvature_from_jet(d1, d2), sp.samples[j].kappa, epsilon = 1e-3);
        }
    }

    #[test]
    fn spread_keeps_frames_and_turning() {
        let c0 = PiecewiseCurve::from_pairs(&[(0.4, 3.0), (-0.2, 4.0)]);
        let sp = spread_eights(&c0, 10, 0.05).unwrap();
        assert!(sp.start_frame().distance(&c0.start) < 1e-9);
        assert!(sp.end_frame().distance(&c0.end_frame()) < 1e-6);
        assert_abs_diff_eq!(sp.total_turning(), c0.total_turning(), epsilon = 1e-9);
    }

    #[test]
    fn spread_on_segment_stays_near_half() {
        let sp = spread_eights(&PiecewiseCurve::segment(10.0), 50, 0.05).unwrap();
        assert!(sp.sup_deviation < 0.2, "{}", sp.sup_deviation);
        assert!((sp.end_frame().p - c(10.0, 0.0)).norm() < 1e-9);
    }
}
