//! Frames in the plane and the circle/line primitives used by the region predicates.
//!
//! A frame `(p, w)` is a point together with a unit heading. It doubles as the
//! proper motion `a ↦ p + w·a`, and frames compose as `(p,w)·(q,z) = (p + wq, wz)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type C64 = Complex64;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{iθ}`.
pub fn cis(theta: f64) -> C64 {
    let (s, co) = theta.sin_cos();
    C64::new(co, s)
}

pub fn unit(w: C64) -> C64 {
    let n = w.norm();
    if n == 0.0 || !n.is_finite() {
        ONE
    } else if (n - 1.0).abs() < 1e-15 {
        w
    } else {
        w / n
    }
}

/// Reduce an angle to `(-π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub p: C64,
    pub w: C64,
}

impl Frame {
    pub const IDENTITY: Frame = Frame { p: C64 { re: 0.0, im: 0.0 }, w: ONE };

    pub fn new(p: C64, w: C64) -> Frame {
        Frame { p, w: unit(w) }
    }

    pub fn from_angle(p: C64, theta: f64) -> Frame {
        Frame { p, w: cis(theta) }
    }

    pub fn translation(p: C64) -> Frame {
        Frame { p, w: ONE }
    }

    pub fn heading(&self) -> f64 {
        self.w.arg()
    }

    pub fn mul(&self, g: &Frame) -> Frame {
        Frame { p: self.p + self.w * g.p, w: unit(self.w * g.w) }
    }

    pub fn inv(&self) -> Frame {
        let wc = self.w.conj();
        Frame { p: -(wc * self.p), w: unit(wc) }
    }

    pub fn apply(&self, a: C64) -> C64 {
        self.p + self.w * a
    }

    /// Largest componentwise gap, used for frame equality within a tolerance.
    pub fn distance(&self, g: &Frame) -> f64 {
        (self.p - g.p).norm().max((self.w - g.w).norm())
    }
}

impl Default for Frame {
    fn default() -> Self {
        Frame::IDENTITY
    }
}

pub fn frame_mul(f: &Frame, g: &Frame) -> Frame {
    f.mul(g)
}

pub fn frame_inv(f: &Frame) -> Frame {
    f.inv()
}

pub fn frame_apply(f: &Frame, a: C64) -> C64 {
    f.apply(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: C64,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: C64, radius: f64) -> Circle {
        assert!(radius > 0.0, "circle radius must be positive");
        Circle { center, radius }
    }

    pub fn point(&self, angle: f64) -> C64 {
        self.center + self.radius * cis(angle)
    }
}

/// A line through `anchor` with unit `direction`; `side` (±1) picks the half-plane,
/// +1 meaning the left of the direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub anchor: C64,
    pub direction: C64,
    pub side: f64,
}

impl HalfPlane {
    pub fn new(anchor: C64, direction: C64, side: f64) -> HalfPlane {
        HalfPlane { anchor, direction: unit(direction), side: side.signum() }
    }
}

/// Signed distance from `q` to the boundary line of `hp`, positive on `hp.side`.
pub fn side_of_line(q: C64, hp: &HalfPlane) -> f64 {
    cross(hp.direction, q - hp.anchor) * hp.side
}

/// `det(a, b)` for vectors in the plane.
pub fn cross(a: C64, b: C64) -> f64 {
    a.re * b.im - a.im * b.re
}

pub fn dot(a: C64, b: C64) -> f64 {
    a.re * b.re + a.im * b.im
}

/// Distance from `q` to the segment `[a, b]`.
pub fn segment_distance(q: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (q - a).norm();
    }
    let t = (dot(q - a, d) / len2).clamp(0.0, 1.0);
    (q - (a + d * t)).norm()
}

/// Distance from `q` to the ray starting at `a` in unit direction `d`.
pub fn ray_distance(q: C64, a: C64, d: C64) -> f64 {
    let t = dot(q - a, d).max(0.0);
    (q - (a + d * t)).norm()
}
