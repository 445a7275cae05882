//! Arc-length parametrized curves of piecewise-constant curvature.

use crate::error::{Error, Result};
use crate::geom::{cis, Frame, C64};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Band around π inside which a curve counts as critical.
pub const CLASS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcSegment {
    pub kappa: f64,
    pub len: f64,
}

impl ArcSegment {
    pub fn new(kappa: f64, len: f64) -> ArcSegment {
        ArcSegment { kappa, len }
    }

    pub fn turning(&self) -> f64 {
        self.kappa * self.len
    }

    /// Motion traced by this segment when started at the identity frame.
    pub fn motion(&self) -> Frame {
        let x = self.kappa * self.len;
        // (i/κ)(1 - e^{iκL}) = L·(sin x / x + i(1 - cos x)/x), written without cancellation.
        let (re, im) = if x.abs() < 1e-8 {
            (1.0 - x * x / 6.0, x / 2.0)
        } else {
            let h = (x / 2.0).sin();
            (x.sin() / x, 2.0 * h * h / x)
        };
        Frame { p: C64::new(re, im) * self.len, w: cis(x) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveClass {
    Condensed,
    Critical,
    Diffuse,
}

impl CurveClass {
    pub fn from_amplitude(omega: f64) -> CurveClass {
        if omega < PI - CLASS_TOL {
            CurveClass::Condensed
        } else if omega > PI + CLASS_TOL {
            CurveClass::Diffuse
        } else {
            CurveClass::Critical
        }
    }
}

/// Whether curvature bounds (and region boundaries) are strict or inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Open,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurningProfile {
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub theta1: f64,
    pub omega: f64,
    pub class: CurveClass,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub s: f64,
    pub point: C64,
    pub heading: C64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseCurve {
    pub start: Frame,
    pub segs: Vec<ArcSegment>,
}

impl PiecewiseCurve {
    pub fn new(start: Frame, segs: Vec<ArcSegment>) -> Result<PiecewiseCurve> {
        let c = PiecewiseCurve { start, segs };
        c.validate()?;
        Ok(c)
    }

    /// Builds from `(kappa, len)` pairs starting at the identity frame.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> PiecewiseCurve {
        PiecewiseCurve {
            start: Frame::IDENTITY,
            segs: pairs.iter().map(|&(k, l)| ArcSegment::new(k, l)).collect(),
        }
    }

    pub fn segment(len: f64) -> PiecewiseCurve {
        PiecewiseCurve::from_pairs(&[(0.0, len)])
    }

    pub fn validate(&self) -> Result<()> {
        if self.segs.is_empty() {
            return Err(Error::InvalidCurve("no segments".into()));
        }
        for s in &self.segs {
            if !(s.len > 0.0) || !s.len.is_finite() {
                return Err(Error::InvalidCurve(format!("segment length {}", s.len)));
            }
            if !s.kappa.is_finite() {
                return Err(Error::InvalidCurve(format!("segment curvature {}", s.kappa)));
            }
        }
        if !(self.start.p.re.is_finite() && self.start.p.im.is_finite() && self.start.w.norm().is_finite()) {
            return Err(Error::InvalidCurve("start frame is not finite".into()));
        }
        Ok(())
    }

    pub fn length(&self) -> f64 {
        self.segs.iter().map(|s| s.len).sum()
    }

    pub fn end_frame(&self) -> Frame {
        self.segs.iter().fold(self.start, |f, s| f.mul(&s.motion()))
    }

    /// Frames at the start of each segment followed by the end frame.
    pub fn breakpoint_frames(&self) -> Vec<Frame> {
        let mut out = Vec::with_capacity(self.segs.len() + 1);
        let mut f = self.start;
        out.push(f);
        for s in &self.segs {
            f = f.mul(&s.motion());
            out.push(f);
        }
        out
    }

    /// Relative heading θ at each breakpoint, starting from θ(0) = 0.
    pub fn breakpoint_thetas(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.segs.len() + 1);
        let mut t = 0.0;
        out.push(t);
        for s in &self.segs {
            t += s.turning();
            out.push(t);
        }
        out
    }

    pub fn total_turning(&self) -> f64 {
        self.segs.iter().map(|s| s.turning()).sum()
    }

    pub fn turning_profile(&self) -> TurningProfile {
        let thetas = self.breakpoint_thetas();
        let theta_plus = thetas.iter().cloned().fold(0.0, f64::max);
        let theta_minus = thetas.iter().cloned().fold(0.0, f64::min);
        let omega = theta_plus - theta_minus;
        TurningProfile {
            theta_plus,
            theta_minus,
            theta1: self.total_turning(),
            omega,
            class: CurveClass::from_amplitude(omega),
        }
    }

    pub fn class(&self) -> CurveClass {
        self.turning_profile().class
    }

    pub fn max_abs_curvature(&self) -> f64 {
        self.segs.iter().map(|s| s.kappa.abs()).fold(0.0, f64::max)
    }

    /// Frame at arc length `s`, clamped to `[0, L]`.
    pub fn frame_at(&self, s: f64) -> Frame {
        let mut f = self.start;
        let mut rem = s.max(0.0);
        for seg in &self.segs {
            if rem <= seg.len {
                return f.mul(&ArcSegment::new(seg.kappa, rem).motion());
            }
            f = f.mul(&seg.motion());
            rem -= seg.len;
        }
        f
    }

    /// Relative heading at arc length `s`, clamped to `[0, L]`.
    pub fn theta_at(&self, s: f64) -> f64 {
        let mut t = 0.0;
        let mut rem = s.max(0.0);
        for seg in &self.segs {
            if rem <= seg.len {
                return t + seg.kappa * rem;
            }
            t += seg.turning();
            rem -= seg.len;
        }
        t
    }

    /// Unit tangent at arc length `s`.
    pub fn tangent_at(&self, s: f64) -> C64 {
        self.start.w * cis(self.theta_at(s))
    }

    /// Splits the segment containing arc length `s` so that `s` is a breakpoint and
    /// returns the index of the first segment starting at `s`.
    pub fn split_at(&mut self, s: f64) -> usize {
        let mut acc = 0.0;
        for i in 0..self.segs.len() {
            let seg = self.segs[i];
            let rel = s - acc;
            if rel <= 1e-12 * seg.len.max(1.0) {
                return i;
            }
            if rel < seg.len - 1e-12 * seg.len.max(1.0) {
                self.segs[i] = ArcSegment::new(seg.kappa, rel);
                self.segs.insert(i + 1, ArcSegment::new(seg.kappa, seg.len - rel));
                return i + 1;
            }
            acc += seg.len;
        }
        self.segs.len()
    }

    /// Samples at arc-length steps of at most `ds`, including both endpoints.
    pub fn sample_points(&self, ds: f64) -> Vec<Sample> {
        assert!(ds > 0.0, "sample spacing must be positive");
        let mut out = vec![Sample { s: 0.0, point: self.start.p, heading: self.start.w }];
        let mut f = self.start;
        let mut s0 = 0.0;
        for seg in &self.segs {
            let n = (seg.len / ds).ceil().max(1.0) as usize;
            for k in 1..=n {
                let t = seg.len * k as f64 / n as f64;
                let g = f.mul(&ArcSegment::new(seg.kappa, t).motion());
                out.push(Sample { s: s0 + t, point: g.p, heading: g.w });
            }
            f = f.mul(&seg.motion());
            s0 += seg.len;
        }
        out
    }

    /// Merges consecutive segments of identical curvature.
    pub fn simplified(&self) -> PiecewiseCurve {
        let mut segs: Vec<ArcSegment> = Vec::with_capacity(self.segs.len());
        for s in &self.segs {
            match segs.last_mut() {
                Some(last) if last.kappa == s.kappa => last.len += s.len,
                _ => segs.push(*s),
            }
        }
        PiecewiseCurve { start: self.start, segs }
    }
}

pub fn end_frame(c: &PiecewiseCurve) -> Frame {
    c.end_frame()
}

pub fn turning_profile(c: &PiecewiseCurve) -> TurningProfile {
    c.turning_profile()
}

pub fn concat(c1: &PiecewiseCurve, c2: &PiecewiseCurve) -> Result<PiecewiseCurve> {
    let gap = c1.end_frame().distance(&c2.start);
    if gap > 1e-9 {
        return Err(Error::FrameMismatch { gap });
    }
    let mut segs = c1.segs.clone();
    segs.extend_from_slice(&c2.segs);
    Ok(PiecewiseCurve { start: c1.start, segs })
}

pub fn reverse(c: &PiecewiseCurve) -> PiecewiseCurve {
    let end = c.end_frame();
    PiecewiseCurve {
        start: Frame { p: end.p, w: -end.w },
        segs: c.segs.iter().rev().map(|s| ArcSegment::new(-s.kappa, s.len)).collect(),
    }
}

/// Whether `k` lies in the bounds; infinite bounds are only allowed for the open variant.
pub fn kappa_in(k: f64, k1: f64, k2: f64, variant: Variant) -> bool {
    match variant {
        Variant::Open => k1 < k && k < k2,
        Variant::Closed => k1 <= k && k <= k2,
    }
}

pub fn in_bounds(c: &PiecewiseCurve, k1: f64, k2: f64, variant: Variant) -> Result<bool> {
    if !(k1 < k2) {
        return Err(Error::InvalidBounds(k1, k2));
    }
    if variant == Variant::Closed && !(k1.is_finite() && k2.is_finite()) {
        return Err(Error::InvalidBounds(k1, k2));
    }
    Ok(c.segs.iter().all(|s| kappa_in(s.kappa, k1, k2, variant)))
}

/// Sampling knobs for [`random_curve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomCurveConfig {
    /// Relative margin kept away from each bound.
    pub delta: f64,
    /// Replacement magnitude for infinite bounds.
    pub cap: f64,
}

impl Default for RandomCurveConfig {
    fn default() -> Self {
        RandomCurveConfig { delta: 1e-6, cap: 10.0 }
    }
}

/// Curvature range actually sampled for the bounds `(k1, k2)`.
pub fn sampling_range(k1: f64, k2: f64, cfg: &RandomCurveConfig) -> (f64, f64) {
    let lo = if k1.is_finite() { k1 } else { (k2.min(0.0)) - cfg.cap };
    let hi = if k2.is_finite() { k2 } else { (k1.max(0.0)) + cfg.cap };
    let d = cfg.delta * (hi - lo);
    (lo + d, hi - d)
}

pub fn random_curve_with<R: Rng + ?Sized>(
    k1: f64,
    k2: f64,
    n_segs: usize,
    max_seg_len: f64,
    cfg: &RandomCurveConfig,
    rng: &mut R,
) -> PiecewiseCurve {
    assert!(k1 < k2 && n_segs >= 1 && max_seg_len > 0.0);
    let (lo, hi) = sampling_range(k1, k2, cfg);
    let segs = (0..n_segs)
        .map(|_| {
            let kappa = lo + (hi - lo) * rng.gen::<f64>();
            let len = max_seg_len * (1.0 - rng.gen::<f64>());
            ArcSegment::new(kappa, len)
        })
        .collect();
    PiecewiseCurve { start: Frame::IDENTITY, segs }
}

pub fn random_curve(k1: f64, k2: f64, n_segs: usize, max_seg_len: f64, seed: u64) -> PiecewiseCurve {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_curve_with(k1, k2, n_segs, max_seg_len, &RandomCurveConfig::default(), &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{c, I, ONE};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn end_frame_examples() {
        let e = PiecewiseCurve::segment(2.5).end_frame();
        assert!(e.distance(&Frame::translation(c(2.5, 0.0))) < 1e-15);
        let q = PiecewiseCurve::from_pairs(&[(1.0, FRAC_PI_2)]).end_frame();
        assert!(q.distance(&Frame::new(c(1.0, 1.0), I)) < 1e-15);
        let full = PiecewiseCurve::from_pairs(&[(1.0, 2.0 * PI)]).end_frame();
        assert!(full.distance(&Frame::IDENTITY) < 1e-15);
    }

    #[test]
    fn small_curvature_motion_is_continuous() {
        let a = ArcSegment::new(1e-9, 3.0).motion();
        let b = ArcSegment::new(2e-8, 3.0).motion();
        let exact = |k: f64| (I / k) * (ONE - cis(k * 3.0));
        assert!((a.p - c(3.0, 0.0)).norm() < 1e-8);
        assert!((b.p - exact(2e-8)).norm() < 1e-7);
        assert!((ArcSegment::new(0.3, 3.0).motion().p - exact(0.3)).norm() < 1e-14);
    }

    #[test]
    fn turning_profile_examples() {
        let t = PiecewiseCurve::segment(5.0).turning_profile();
        assert_eq!((t.theta1, t.omega, t.class), (0.0, 0.0, CurveClass::Condensed));
        let t = PiecewiseCurve::from_pairs(&[(1.0, PI)]).turning_profile();
        assert_abs_diff_eq!(t.theta1, PI);
        assert_eq!(t.class, CurveClass::Critical);
        let t = PiecewiseCurve::from_pairs(&[(1.0, 1.5 * PI)]).turning_profile();
        assert_eq!(t.class, CurveClass::Diffuse);
        let t = PiecewiseCurve::from_pairs(&[(1.0, 1.0), (-1.0, 3.0)]).turning_profile();
        assert_abs_diff_eq!(t.theta_plus, 1.0);
        assert_abs_diff_eq!(t.theta_minus, -2.0);
        assert_abs_diff_eq!(t.omega, 3.0);
    }

    #[test]
    fn concat_examples() {
        let a = PiecewiseCurve::segment(2.0);
        let mut b = PiecewiseCurve::segment(3.0);
        b.start = a.end_frame();
        let ab = concat(&a, &b).unwrap();
        assert!(ab.end_frame().distance(&PiecewiseCurve::segment(5.0).end_frame()) < 1e-14);

        let q1 = PiecewiseCurve::from_pairs(&[(1.0, FRAC_PI_2)]);
        let mut q2 = PiecewiseCurve::from_pairs(&[(-1.0, FRAC_PI_2)]);
        q2.start = q1.end_frame();
        assert_abs_diff_eq!(concat(&q1, &q2).unwrap().total_turning(), 0.0);

        assert!(matches!(concat(&a, &PiecewiseCurve::segment(1.0)), Err(Error::FrameMismatch { .. })));
    }

    #[test]
    fn reverse_examples() {
        let r = reverse(&PiecewiseCurve::segment(4.0));
        assert!(r.start.distance(&Frame::new(c(4.0, 0.0), -ONE)) < 1e-15);
        assert!(r.end_frame().distance(&Frame::new(c(0.0, 0.0), -ONE)) < 1e-14);
        let h = PiecewiseCurve::from_pairs(&[(1.0, PI)]);
        assert_abs_diff_eq!(reverse(&h).total_turning(), -PI);
    }

    #[test]
    fn in_bounds_examples() {
        let a = PiecewiseCurve::from_pairs(&[(0.5, 1.0)]);
        assert!(in_bounds(&a, -1.0, 1.0, Variant::Open).unwrap());
        let h = PiecewiseCurve::from_pairs(&[(1.0, PI)]);
        assert!(!in_bounds(&h, -1.0, 1.0, Variant::Open).unwrap());
        assert!(in_bounds(&h, -1.0, 1.0, Variant::Closed).unwrap());
        let k = PiecewiseCurve::from_pairs(&[(2.0, 1.0)]);
        assert!(in_bounds(&k, 0.0, f64::INFINITY, Variant::Open).unwrap());
        assert!(in_bounds(&k, 1.0, 1.0, Variant::Open).is_err());
    }

    #[test]
    fn random_curve_is_deterministic_and_in_bounds() {
        assert_eq!(random_curve(-1.0, 1.0, 5, 2.0, 0), random_curve(-1.0, 1.0, 5, 2.0, 0));
        assert_eq!(random_curve(-1.0, 1.0, 1, 2.0, 3).segs.len(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cfg = RandomCurveConfig::default();
        for _ in 0..10_000 {
            let c = random_curve_with(-1.0, 1.0, 3, 1.0, &cfg, &mut rng);
            assert!(in_bounds(&c, -1.0, 1.0, Variant::Open).unwrap());
        }
        for _ in 0..100 {
            let c = random_curve_with(0.0, f64::INFINITY, 3, 1.0, &cfg, &mut rng);
            assert!(in_bounds(&c, 0.0, f64::INFINITY, Variant::Open).unwrap());
        }
    }

    #[test]
    fn sample_points_examples() {
        let s = PiecewiseCurve::segment(1.0).sample_points(0.5);
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|x| x.point.im == 0.0));
        let c = random_curve(-1.0, 1.0, 4, 2.0, 9);
        let last = c.sample_points(0.01).last().unwrap().point;
        assert!((last - c.end_frame().p).norm() < 1e-9);
    }

    #[test]
    fn fd_curvature_on_circle() {
        // Oracle: central differences on the closed-form unit circle samples.
        let circle = PiecewiseCurve::from_pairs(&[(1.0, 2.0 * PI)]);
        let pts = circle.sample_points(0.01);
        for w in pts.windows(3) {
            let h1 = w[1].s - w[0].s;
            let h2 = w[2].s - w[1].s;
            let d1 = (w[2].point - w[0].point) / (h1 + h2);
            let d2 = ((w[2].point - w[1].point) / h2 - (w[1].point - w[0].point) / h1) * (2.0 / (h1 + h2));
            let k = crate::geom::cross(d1, d2) / d1.norm().powi(3);
            assert!((k - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn split_and_frame_at() {
        let mut c = PiecewiseCurve::from_pairs(&[(1.0, 1.0), (-0.5, 2.0)]);
        let e = c.end_frame();
        let f = c.frame_at(1.7);
        let i = c.split_at(1.7);
        assert_eq!(i, 2);
        assert!(c.end_frame().distance(&e) < 1e-14);
        assert!(c.breakpoint_frames()[2].distance(&f) < 1e-14);
        assert_eq!(c.split_at(1.0), 1);
        assert_abs_diff_eq!(c.theta_at(2.0), 1.0 - 0.5, epsilon = 1e-15);
    }
}
