//! Excavator contraction of condensed curves onto the shortest path.
//!
//! Rotate so the x-axis bisects the range of headings. A condensed curve is then the
//! graph of a function on `[0, b]` with finite slope `f = tan(α)`, `α` the rotated
//! heading. We work with `S = sin(α) = f/√(1+f²)` instead: along a circular arc `S`
//! is affine in `x` with slope equal to the curvature, and so are the extremal
//! barriers and the constant clip levels. The median of seven such functions is again
//! piecewise affine in `S`, so every clipped curve is an exact arc spline and its area,
//! length and end frame are integrated in closed form.

use super::{HomotopyTrace, StepDiagnostics};
use crate::curve::{in_bounds, ArcSegment, CurveClass, PiecewiseCurve, Variant};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::geom::{cis, wrap_angle, Frame};
use crate::regions::{condensed_contains, Status};
use std::f64::consts::{FRAC_PI_2, PI};

/// `S(x) = a + k·x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub a: f64,
    pub k: f64,
}

impl Affine {
    pub fn at(&self, x: f64) -> f64 {
        self.a + self.k * x
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinePiece {
    pub x0: f64,
    pub x1: f64,
    pub line: Affine,
}

impl SinePiece {
    fn ends(&self) -> (f64, f64) {
        (self.line.at(self.x0), self.line.at(self.x1))
    }

    /// `∫ f dx` over the piece.
    pub fn area(&self) -> f64 {
        let (sa, sb) = self.ends();
        let (ca, cb) = (cos_of(sa), cos_of(sb));
        (sa + sb) * (self.x1 - self.x0) / (ca + cb)
    }

    /// Change of heading across the piece divided by its curvature, written so that it
    /// stays accurate for tiny curvature.
    pub fn length(&self) -> f64 {
        let (sa, sb) = self.ends();
        let (ca, cb) = (cos_of(sa), cos_of(sb));
        let dx = self.x1 - self.x0;
        let num = dx * (ca + sa * (sa + sb) / (ca + cb));
        let den = ca * cb + sa * sb;
        if self.line.k == 0.0 {
            num / den
        } else {
            (self.line.k * num).atan2(den) / self.line.k
        }
    }
}

fn cos_of(s: f64) -> f64 {
    (1.0 - s * s).max(0.0).sqrt()
}

/// Slope `tan α` for `S = sin α`, saturating to ±∞ outside `(-1, 1)`.
pub fn slope_of(s: f64) -> f64 {
    if s >= 1.0 {
        f64::INFINITY
    } else if s <= -1.0 {
        f64::NEG_INFINITY
    } else {
        s / (1.0 - s * s).sqrt()
    }
}

pub fn sine_of(f: f64) -> f64 {
    if f.is_infinite() {
        f.signum()
    } else {
        f / (1.0 + f * f).sqrt()
    }
}

pub fn total_area(pieces: &[SinePiece]) -> f64 {
    pieces.iter().map(SinePiece::area).sum()
}

/// Median of the seven functions `h−, g−, μ−, F, μ+, g+, h+` (in sine form), piece by piece.
fn clip(base: &[SinePiece], barriers: &[Affine; 4], lo: f64, hi: f64) -> Vec<SinePiece> {
    let mut extra = barriers.to_vec();
    extra.push(Affine { a: lo, k: 0.0 });
    extra.push(Affine { a: hi, k: 0.0 });
    median(base, &extra)
}

/// Pointwise median of each base piece together with `extra` (odd total count).
fn median(base: &[SinePiece], extra: &[Affine]) -> Vec<SinePiece> {
    let mut out: Vec<SinePiece> = Vec::with_capacity(base.len() * 3);
    let mid = extra.len().div_ceil(2);
    for p in base {
        let lines: Vec<Affine> = std::iter::once(p.line).chain(extra.iter().copied()).collect();
        let mut cuts = vec![p.x0, p.x1];
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let dk = lines[i].k - lines[j].k;
                if dk != 0.0 {
                    let x = (lines[j].a - lines[i].a) / dk;
                    if x > p.x0 && x < p.x1 {
                        cuts.push(x);
                    }
                }
            }
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        for w in cuts.windows(2) {
            let (u, v) = (w[0], w[1]);
            if !(v > u) {
                continue;
            }
            let xm = 0.5 * (u + v);
            let mut vals: Vec<(f64, usize)> = lines.iter().enumerate().map(|(i, l)| (l.at(xm), i)).collect();
            vals.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let line = lines[vals[mid].1];
            match out.last_mut() {
                Some(last) if last.line == line && last.x1 == u => last.x1 = v,
                _ => out.push(SinePiece { x0: u, x1: v, line }),
            }
        }
    }
    out
}

/// Arc spline traced by sine-form pieces from `start`.
pub fn pieces_to_curve(start: Frame, pieces: &[SinePiece]) -> PiecewiseCurve {
    let segs: Vec<ArcSegment> = pieces
        .iter()
        .map(|p| ArcSegment::new(p.line.k, p.length()))
        .filter(|s| s.len > 0.0)
        .collect();
    PiecewiseCurve { start, segs }
}

/// Precomputed data of the excavator for one condensed curve.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcavatorState {
    pub start: Frame,
    pub kappa0: f64,
    /// Axis angle relative to the initial heading.
    pub axis: f64,
    pub b: f64,
    pub r0: f64,
    pub rb: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub beta_plus: f64,
    pub beta_minus: f64,
    pub m_minus: f64,
    pub m_plus: f64,
    pub a1: f64,
    /// The input curve's slope function in sine form.
    pub pieces: Vec<SinePiece>,
    /// Gap between the closed-form area of the pieces and the rotated rise of the curve.
    pub area_mismatch: f64,
}

impl ExcavatorState {
    pub fn new(c: &PiecewiseCurve, kappa0: f64) -> Result<ExcavatorState> {
        c.validate()?;
        if !(kappa0 > 0.0) || !in_bounds(c, -kappa0, kappa0, Variant::Closed)? {
            return Err(Error::OutOfBounds);
        }
        let prof = c.turning_profile();
        if prof.class != CurveClass::Condensed {
            return Err(Error::NotCondensed);
        }
        let axis = 0.5 * (prof.theta_plus + prof.theta_minus);
        let thetas = c.breakpoint_thetas();
        let mut pieces = Vec::with_capacity(c.segs.len());
        let mut x = 0.0;
        for (seg, &th) in c.segs.iter().zip(&thetas) {
            let a0 = th - axis;
            let half = 0.5 * seg.kappa * seg.len;
            if (a0 + half).cos() <= 0.0 || a0.abs() >= FRAC_PI_2 {
                return Err(Error::NoAxis);
            }
            let sinc = if half.abs() < 1e-8 { 1.0 - half * half / 6.0 } else { half.sin() / half };
            let dx = seg.len * (a0 + half).cos() * sinc;
            let s0 = a0.sin();
            pieces.push(SinePiece { x0: x, x1: x + dx, line: Affine { a: s0 - seg.kappa * x, k: seg.kappa } });
            x += dx;
        }
        let b = x;
        let end = c.start.inv().mul(&c.end_frame());
        let rotated = cis(-axis) * end.p;
        let a1 = total_area(&pieces);
        let s0 = (-axis).sin();
        let sb = (thetas[thetas.len() - 1] - axis).sin();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &pieces {
            let (sa, sb) = p.ends();
            lo = lo.min(sa).min(sb);
            hi = hi.max(sa).max(sb);
        }
        Ok(ExcavatorState {
            start: c.start,
            kappa0,
            axis,
            b,
            r0: slope_of(s0),
            rb: slope_of(sb),
            alpha_plus: -s0,
            alpha_minus: s0,
            beta_plus: kappa0 * b + sb,
            beta_minus: kappa0 * b - sb,
            m_minus: slope_of(lo),
            m_plus: slope_of(hi),
            a1,
            pieces,
            area_mismatch: (a1 - rotated.im).abs() + (b - rotated.re).abs(),
        })
    }

    /// `g+, g−, h+, h−` in sine form.
    pub fn barriers(&self) -> [Affine; 4] {
        let k = self.kappa0;
        [
            Affine { a: -self.alpha_plus, k },
            Affine { a: self.alpha_minus, k: -k },
            Affine { a: self.beta_plus, k: -k },
            Affine { a: -self.beta_minus, k },
        ]
    }

    /// Slope of the input curve at `x`.
    pub fn f_at(&self, x: f64) -> f64 {
        let p = self
            .pieces
            .iter()
            .find(|p| x <= p.x1)
            .unwrap_or_else(|| self.pieces.last().unwrap());
        slope_of(p.line.at(x))
    }

    pub fn clipped(&self, mu_minus: f64, mu_plus: f64) -> Vec<SinePiece> {
        clip(&self.pieces, &self.barriers(), sine_of(mu_minus), sine_of(mu_plus))
    }

    pub fn area_tol(&self) -> f64 {
        1e-10 * self.b.max(1e-300)
    }

    /// Clip levels `(μ−, μ+)` for parameter `s`, taking the center of the interval of
    /// levels that conserve area.
    pub fn levels(&self, s: f64) -> Result<(f64, f64)> {
        let (m0, m1) = (self.m_minus, self.m_plus);
        if s >= 1.0 {
            return Ok((m0, m1));
        }
        let delta = (m1 - m0) * s.max(0.0);
        let tol = self.area_tol();
        let resid = |t: f64| total_area(&self.clipped(t, t + delta)) - self.a1;
        let (lo0, hi0) = (m0, m1 - delta);
        let bisect = |pred: &dyn Fn(f64) -> bool| {
            // Smallest t in [lo0, hi0] with pred(t), for monotone pred.
            if pred(lo0) {
                return lo0;
            }
            let (mut lo, mut hi) = (lo0, hi0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if pred(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 1e-15 * (1.0 + hi.abs()) {
                    break;
                }
            }
            hi
        };
        let t_lo = bisect(&|t| resid(t) >= -tol);
        let t_hi = bisect(&|t| resid(t) > tol);
        let t_hi = if resid(t_hi) > tol { t_hi.min(hi0) } else { hi0 };
        let t = 0.5 * (t_lo + t_hi.max(t_lo));
        let r = resid(t);
        if r.abs() > tol {
            return Err(Error::GridTooCoarse(r));
        }
        Ok((t, t + delta))
    }

    pub fn curve_at(&self, s: f64) -> Result<(PiecewiseCurve, f64)> {
        let (lo, hi) = self.levels(s)?;
        let pieces = self.clipped(lo, hi);
        Ok((pieces_to_curve(self.start, &pieces), total_area(&pieces) - self.a1))
    }

    /// Slope of the clipped function at `x` for the levels of parameter `s`.
    pub fn clipped_slope_at(&self, s: f64, x: f64) -> Result<f64> {
        let (lo, hi) = self.levels(s)?;
        let pieces = self.clipped(lo, hi);
        let p = pieces.iter().find(|p| x <= p.x1).unwrap_or_else(|| pieces.last().unwrap());
        Ok(slope_of(p.line.at(x)))
    }

    /// Uniform grid of `n` points on `[0, b]`.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        (0..n).map(|j| self.b * j as f64 / (n - 1).max(1) as f64).collect()
    }
}

pub fn excavator_trace(c: &PiecewiseCurve, kappa0: f64, n_steps: usize) -> Result<HomotopyTrace> {
    excavator_trace_with(c, kappa0, n_steps, Execution::default())
}

pub fn excavator_trace_with(
    c: &PiecewiseCurve,
    kappa0: f64,
    n_steps: usize,
    mode: Execution,
) -> Result<HomotopyTrace> {
    let state = ExcavatorState::new(c, kappa0)?;
    let n = n_steps.max(1);
    let target = c.end_frame();
    let steps = exec::map_range(mode, n + 1, |k| {
        let s = k as f64 / n as f64;
        state.curve_at(s).map(|(curve, resid)| {
            let d = StepDiagnostics::of(s, &curve, &target).with_area_residual(resid);
            (curve, d)
        })
    });
    let mut trace = HomotopyTrace::default();
    for (k, step) in steps.into_iter().enumerate() {
        let (curve, d) = step?;
        trace.s.push(k as f64 / n as f64);
        trace.curves.push(curve);
        trace.diagnostics.push(d);
    }
    Ok(trace)
}

/// The s = 0 profile for a fixed axis, or `None` if that axis does not fit.
fn shortest_with_axis(q: &Frame, kappa0: f64, theta1: f64, axis: f64) -> Option<PiecewiseCurve> {
    let rotated = cis(-axis) * q.p;
    let (b, a1) = (rotated.re, rotated.im);
    let (s0, sb) = ((-axis).sin(), (theta1 - axis).sin());
    if !(b > 0.0) || (-axis).cos() <= 0.0 || (theta1 - axis).cos() <= 0.0 {
        return None;
    }
    let k = kappa0;
    let slack = 1e-12 * (1.0 + k * b);
    if s0 > sb + k * b + slack || s0 - k * b > sb + slack || sb - k * b > s0 + slack || sb > s0 + k * b + slack {
        return None;
    }
    let barriers = [
        Affine { a: s0, k },
        Affine { a: s0, k: -k },
        Affine { a: sb + k * b, k: -k },
        Affine { a: sb - k * b, k },
    ];
    // At s = 0 the profile is mid(h−, g−, μ0, g+, h+).
    let pieces_for = |m: f64| median(&[SinePiece { x0: 0.0, x1: b, line: Affine { a: m, k: 0.0 } }], &barriers);
    let area = |m: f64| total_area(&pieces_for(m));
    let tol = 1e-12 * (1.0 + b + a1.abs());
    let edge = 1.0 - 1e-15;
    let (mut lo, mut hi) = (-edge, edge);
    if area(lo) > a1 + tol || area(hi) < a1 - tol {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if area(mid) < a1 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-16 {
            break;
        }
    }
    let curve = pieces_to_curve(Frame::IDENTITY, &pieces_for(0.5 * (lo + hi)));
    if curve.segs.is_empty() || curve.end_frame().distance(q) > 1e-8 * (1.0 + q.p.norm()) {
        return None;
    }
    Some(curve)
}

/// Shortest curve from the identity frame to `q` with curvature in `[-κ0, κ0]`, built as
/// the s = 0 limit of the excavator: a barrier-clipped constant slope.
pub fn dubins_condensed(q: &Frame, kappa0: f64) -> Result<PiecewiseCurve> {
    let theta1 = wrap_angle(q.w.arg());
    if !(theta1.abs() < PI) || !(kappa0 > 0.0) {
        return Err(Error::Unreachable);
    }
    if condensed_contains(q.p * kappa0, theta1).status == Status::Outside {
        return Err(Error::Unreachable);
    }
    let lo = (theta1 - FRAC_PI_2).max(-FRAC_PI_2);
    let hi = (theta1 + FRAC_PI_2).min(FRAC_PI_2);
    let n = 64;
    let axes = std::iter::once(0.5 * theta1).chain((1..n).map(|j| lo + (hi - lo) * j as f64 / n as f64));
    axes.filter_map(|axis| shortest_with_axis(q, kappa0, theta1, axis))
        .next()
        .ok_or(Error::Unreachable)
}

/// The s = 0 curve for a specific axis, exposed so axis independence can be checked.
pub fn dubins_with_axis(q: &Frame, kappa0: f64, axis: f64) -> Option<PiecewiseCurve> {
    shortest_with_axis(q, kappa0, wrap_angle(q.w.arg()), axis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::dubins::dubins_csc_oracle;
    use crate::geom::{c, I};
    use approx::assert_abs_diff_eq;

    #[test]
    fn median_of_seven_oracle() {
        // Pointwise comparison against sorting the seven slopes directly.
        let c0 = PiecewiseCurve::from_pairs(&[(0.8, 0.7), (-0.3, 1.2), (0.9, 0.4), (0.0, 0.5)]);
        let st = ExcavatorState::new(&c0, 1.0).unwrap();
        let (lo, hi) = (st.m_minus * 0.7 + st.m_plus * 0.3, st.m_minus * 0.4 + st.m_plus * 0.6);
        let clipped = st.clipped(lo, hi);
        for j in 0..400 {
            let x = st.b * (j as f64 + 0.5) / 400.0;
            let mut v: Vec<f64> = st.barriers().iter().map(|l| slope_of(l.at(x))).collect();
            v.extend([lo, hi, st.f_at(x)]);
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let p = clipped.iter().find(|p| x <= p.x1).unwrap();
            assert_abs_diff_eq!(slope_of(p.line.at(x)), v[3], epsilon = 1e-12);
        }
    }

    #[test]
    fn straight_input_is_fixed() {
        let c0 = PiecewiseCurve::segment(3.0);
        let tr = excavator_trace(&c0, 1.0, 8).unwrap();
        for cv in &tr.curves {
            assert_eq!(cv.segs.len(), 1);
            assert_abs_diff_eq!(cv.length(), 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn pieces_reproduce_input() {
        let c0 = PiecewiseCurve::from_pairs(&[(0.8, 0.4), (-0.8, 0.4), (0.2, 1.0)]);
        let st = ExcavatorState::new(&c0, 1.0).unwrap();
        assert!(st.area_mismatch < 1e-14);
        let (back, _) = st.curve_at(1.0).unwrap();
        assert!(back.end_frame().distance(&c0.end_frame()) < 1e-13);
        assert_abs_diff_eq!(back.length(), c0.length(), epsilon = 1e-13);
    }

    #[test]
    fn s_zero_matches_oracle() {
        let c0 = PiecewiseCurve::from_pairs(&[(0.8, 0.4), (-0.8, 0.4)]);
        let (s0, _) = ExcavatorState::new(&c0, 1.0).unwrap().curve_at(0.0).unwrap();
        let oracle = dubins_csc_oracle(&c0.end_frame(), 1.0).unwrap();
        assert_abs_diff_eq!(s0.length(), oracle.length(), epsilon = 1e-9);
        assert!(s0.end_frame().distance(&c0.end_frame()) < 1e-9);
    }

    #[test]
    fn dubins_examples() {
        let s = dubins_condensed(&Frame::translation(c(2.5, 0.0)), 1.0).unwrap();
        assert_abs_diff_eq!(s.length(), 2.5, epsilon = 1e-12);
        let q = dubins_condensed(&Frame::new(c(1.0, 1.0), I), 1.0).unwrap();
        assert_abs_diff_eq!(q.length(), FRAC_PI_2, epsilon = 1e-6);
        assert!(dubins_condensed(&Frame::translation(c(-1.0, 0.0)), 1.0).is_err());
    }

    #[test]
    fn axis_does_not_matter() {
        let q = Frame::from_angle(c(3.0, 1.0), 0.5);
        let lens: Vec<f64> = (-5..=5)
            .filter_map(|j| dubins_with_axis(&q, 1.0, 0.25 + 0.1 * j as f64))
            .map(|c| c.length())
            .collect();
        assert!(lens.len() > 5);
        for l in &lens {
            assert_abs_diff_eq!(*l, lens[0], epsilon = 1e-9);
        }
    }
}
