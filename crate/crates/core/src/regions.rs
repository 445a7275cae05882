//! Where condensed and critical curves can end.
//!
//! Every region here is bounded by a chain: a ray coming in from infinity, one or two
//! circular arcs, and a ray leaving to infinity. The chain splits the plane in two and
//! the region is the side away from the enclosed pocket. Membership is decided by the
//! winding number of the chain closed up far away through the pocket's opening,
//! with an exact distance test for the boundary band.

use crate::curve::{ArcSegment, PiecewiseCurve, Variant};
use crate::error::{Error, Result};
use crate::geom::{c, cis, cross, dot, ray_distance, Circle, Frame, HalfPlane, C64, I, ONE};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Inside,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub status: Status,
    pub boundary_tol: f64,
}

impl RegionVerdict {
    fn new(status: Status) -> RegionVerdict {
        RegionVerdict { status, boundary_tol: BOUNDARY_TOL }
    }

    /// Membership in the open region, or in its closure for [`Variant::Closed`].
    pub fn holds(&self, variant: Variant) -> bool {
        match self.status {
            Status::Inside => true,
            Status::Boundary => variant == Variant::Closed,
            Status::Outside => false,
        }
    }
}

/// An alternating string of signs, stored as its first sign and its length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignString {
    pub first_positive: bool,
    pub len: usize,
}

impl SignString {
    pub fn new(first_positive: bool, len: usize) -> Result<SignString> {
        if len < 2 {
            return Err(Error::DomainError(format!("sign string of length {len}")));
        }
        Ok(SignString { first_positive, len })
    }

    pub fn parse(s: &str) -> Result<SignString> {
        let signs: Vec<char> = s.chars().filter(|ch| !ch.is_whitespace()).collect();
        let ok = signs.iter().all(|&ch| ch == '+' || ch == '-')
            && signs.windows(2).all(|w| w[0] != w[1]);
        if !ok || signs.is_empty() {
            return Err(Error::DomainError(format!("not an alternating sign string: {s:?}")));
        }
        SignString::new(signs[0] == '+', signs.len())
    }

    pub fn first(&self) -> f64 {
        if self.first_positive {
            1.0
        } else {
            -1.0
        }
    }

    pub fn negated(&self) -> SignString {
        SignString { first_positive: !self.first_positive, len: self.len }
    }

    /// Sign at position `k` (zero-based).
    pub fn sign(&self, k: usize) -> f64 {
        if k.is_multiple_of(2) {
            self.first()
        } else {
            -self.first()
        }
    }

    /// Center and radius of the circle bounding this type's region.
    pub fn circle(&self, theta1: f64) -> (C64, f64) {
        let z = cis(theta1);
        let parity = if self.len % 2 == 1 { 1.0 } else { -1.0 };
        (I * self.first() * (ONE + z * parity), 2.0 * self.len as f64)
    }
}

impl fmt::Display for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len {
            f.write_str(if self.sign(k) > 0.0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// The arc of `circle` starting at `start_angle` and sweeping `sweep` radians
/// (negative for clockwise).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryArc {
    pub circle: Circle,
    pub start_angle: f64,
    pub sweep: f64,
}

impl BoundaryArc {
    pub fn point(&self, t: f64) -> C64 {
        self.circle.point(self.start_angle + t * self.sweep)
    }

    pub fn start(&self) -> C64 {
        self.point(0.0)
    }

    pub fn end(&self) -> C64 {
        self.point(1.0)
    }

    fn conj(&self) -> BoundaryArc {
        BoundaryArc {
            circle: Circle { center: self.circle.center.conj(), radius: self.circle.radius },
            start_angle: -self.start_angle,
            sweep: -self.sweep,
        }
    }

    pub fn distance(&self, q: C64) -> f64 {
        let v = q - self.circle.center;
        if v.norm() > 0.0 {
            let along = ((v.arg() - self.start_angle) * self.sweep.signum()).rem_euclid(2.0 * PI);
            if along <= self.sweep.abs() {
                return (v.norm() - self.circle.radius).abs();
            }
        }
        (q - self.start()).norm().min((q - self.end()).norm())
    }

    /// Signed angle swept by `x - q` as `x` runs along the arc. `q` must not lie on it.
    fn winding_angle(&self, q: C64) -> f64 {
        let pieces = (self.sweep.abs() / (PI / 4.0)).ceil().max(1.0) as usize;
        'split: for n in [pieces, pieces + 1, pieces + 3] {
            let mut total = 0.0;
            for k in 0..n {
                let sub = BoundaryArc {
                    circle: self.circle,
                    start_angle: self.start_angle + self.sweep * k as f64 / n as f64,
                    sweep: self.sweep / n as f64,
                };
                let (a, b) = (sub.start() - q, sub.end() - q);
                let (cr, dt) = (cross(a, b), dot(a, b));
                if cr.abs() <= 1e-14 * a.norm() * b.norm() && dt < 0.0 {
                    continue 'split;
                }
                total += cr.atan2(dt);
                let inside_disk = (q - self.circle.center).norm() < self.circle.radius;
                let mid = sub.point(0.5);
                let chord = sub.end() - sub.start();
                let same_side = cross(chord, q - sub.start()) * cross(chord, mid - sub.start()) > 0.0;
                if inside_disk && same_side {
                    total += 2.0 * PI * sub.sweep.signum();
                }
            }
            return total;
        }
        unreachable!("point lies on every chord subdivision")
    }
}

/// Boundary data of a region. An empty spec is the empty region; a spec with a single
/// half-plane and no arcs is that half-plane; otherwise the boundary is the chain
/// `half_planes[0]` ray, `arcs`, `half_planes[1]` ray, where each ray is stored with its
/// anchor on the chain and its direction pointing away from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub arcs: Vec<BoundaryArc>,
    pub half_planes: Vec<HalfPlane>,
    pub excluded_point: Option<C64>,
}

impl RegionSpec {
    pub fn empty() -> RegionSpec {
        RegionSpec { arcs: vec![], half_planes: vec![], excluded_point: None }
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty() && self.half_planes.is_empty()
    }

    fn conj(&self) -> RegionSpec {
        RegionSpec {
            arcs: self.arcs.iter().map(|a| a.conj()).collect(),
            half_planes: self
                .half_planes
                .iter()
                .map(|h| HalfPlane { anchor: h.anchor.conj(), direction: h.direction.conj(), side: -h.side })
                .collect(),
            excluded_point: self.excluded_point.map(|e| e.conj()),
        }
    }

    /// Distance from `q` to the boundary curve.
    pub fn boundary_distance(&self, q: C64) -> f64 {
        if self.arcs.is_empty() {
            return self
                .half_planes
                .iter()
                .map(|h| crate::geom::side_of_line(q, h).abs())
                .fold(f64::INFINITY, f64::min);
        }
        let rays = self.half_planes.iter().map(|h| ray_distance(q, h.anchor, h.direction));
        let arcs = self.arcs.iter().map(|a| a.distance(q));
        rays.chain(arcs).fold(f64::INFINITY, f64::min)
    }

    pub fn verdict(&self, q: C64, tol: f64) -> RegionVerdict {
        if self.is_empty() {
            return RegionVerdict::new(Status::Outside);
        }
        if self.boundary_distance(q) <= tol {
            return RegionVerdict::new(Status::Boundary);
        }
        if self.arcs.is_empty() {
            let inside = self.half_planes.iter().all(|h| crate::geom::side_of_line(q, h) > 0.0);
            return RegionVerdict::new(if inside { Status::Inside } else { Status::Outside });
        }
        let in_pocket = self.winding(q).abs() > 0.5;
        RegionVerdict::new(if in_pocket { Status::Outside } else { Status::Inside })
    }

    /// Winding number of the chain closed through the far end of the pocket.
    fn winding(&self, q: C64) -> f64 {
        let (h0, h1) = (self.half_planes[0], self.half_planes[1]);
        let scale = self
            .arcs
            .iter()
            .map(|a| a.circle.center.norm() + a.circle.radius)
            .fold(q.norm(), f64::max);
        let opening = c(dot(h0.direction, h1.direction), cross(h0.direction, h1.direction)).arg().abs();
        let big = 1e3 * (1.0 + scale) / (0.5 * (PI - opening)).sin().max(1e-6);
        let bis = h0.direction + h1.direction;
        let bis = if bis.norm() > 1e-12 { bis / bis.norm() } else { I * h0.direction * h0.side };
        let far0 = h0.anchor + h0.direction * big;
        let far1 = h1.anchor + h1.direction * big;
        let mid = 0.5 * (h0.anchor + h1.anchor) + bis * (2.0 * big);
        let seg = |a: C64, b: C64| {
            let (u, v) = (a - q, b - q);
            cross(u, v).atan2(dot(u, v))
        };
        let mut total = seg(far0, h0.anchor);
        total += self.arcs.iter().map(|a| a.winding_angle(q)).sum::<f64>();
        total += seg(h1.anchor, far1) + seg(far1, mid) + seg(mid, far0);
        total / (2.0 * PI)
    }

    /// Sampled arcs and rays truncated at `ray_len`.
    pub fn polylines(&self, ds: f64, ray_len: f64) -> Vec<Vec<C64>> {
        assert!(ds > 0.0, "sample spacing must be positive");
        let mut out = Vec::new();
        if self.arcs.is_empty() {
            for h in &self.half_planes {
                out.push(vec![h.anchor - h.direction * ray_len, h.anchor + h.direction * ray_len]);
            }
            return out;
        }
        let ray = |h: &HalfPlane| vec![h.anchor, h.anchor + h.direction * ray_len];
        out.push(ray(&self.half_planes[0]));
        for a in &self.arcs {
            let n = (a.sweep.abs() * a.circle.radius / ds).ceil().max(1.0) as usize;
            out.push((0..=n).map(|k| a.point(k as f64 / n as f64)).collect());
        }
        out.push(ray(&self.half_planes[1]));
        out
    }
}

fn chain_spec(arcs: Vec<BoundaryArc>, theta1: f64, excluded: C64) -> RegionSpec {
    let z = cis(theta1);
    let first = arcs[0].start();
    let last = arcs[arcs.len() - 1].end();
    RegionSpec {
        arcs,
        half_planes: vec![HalfPlane::new(first, -ONE, -1.0), HalfPlane::new(last, -z, 1.0)],
        excluded_point: Some(excluded),
    }
}

/// Region of endpoints reachable by condensed curves from the identity frame with
/// curvature in (-1, 1) and total turning `theta1`.
pub fn condensed_region(theta1: f64) -> RegionSpec {
    if !(theta1.abs() < PI) {
        return RegionSpec::empty();
    }
    if theta1 < 0.0 {
        return condensed_region(-theta1).conj();
    }
    let z = cis(theta1);
    let upper = BoundaryArc {
        circle: Circle::new(I + I * z, 2.0),
        start_angle: FRAC_PI_2,
        sweep: theta1 - PI,
    };
    let lower = BoundaryArc {
        circle: Circle::new(-(I + I * z), 2.0),
        start_angle: FRAC_PI_2,
        sweep: theta1 - PI,
    };
    // At zero turning the usual excluded point lies on the boundary.
    let excluded = if theta1 == 0.0 { -ONE } else { -I + I * z };
    chain_spec(vec![upper, lower], theta1, excluded)
}

pub fn condensed_contains(q: C64, theta1: f64) -> RegionVerdict {
    condensed_region(theta1).verdict(q, BOUNDARY_TOL)
}

/// Turnings within rounding of ±π are treated as exactly ±π.
fn snap_half_turn(theta1: f64) -> f64 {
    if (theta1.abs() - PI).abs() <= 1e-12 {
        PI.copysign(theta1)
    } else {
        theta1
    }
}

/// Region of endpoints of critical curves of type `sigma`.
pub fn critical_region(theta1: f64, sigma: SignString) -> RegionSpec {
    let theta1 = snap_half_turn(theta1);
    if !(theta1.abs() <= PI) {
        return RegionSpec::empty();
    }
    if theta1 < 0.0 {
        return critical_region(-theta1, sigma.negated()).conj();
    }
    let (a, r) = sigma.circle(theta1);
    if theta1 == PI {
        return RegionSpec {
            arcs: vec![],
            half_planes: vec![HalfPlane::new(a + I * r, ONE, 1.0)],
            excluded_point: Some(-I + I * cis(theta1)),
        };
    }
    let arc = BoundaryArc { circle: Circle::new(a, r), start_angle: FRAC_PI_2, sweep: theta1 - PI };
    chain_spec(vec![arc], theta1, a)
}

pub fn critical_contains(q: C64, theta1: f64, sigma: SignString) -> RegionVerdict {
    critical_region(theta1, sigma).verdict(q, BOUNDARY_TOL)
}

/// The sign string whose region holds every critical endpoint for this turning.
pub fn dominant_sign_string(theta1: f64) -> SignString {
    SignString { first_positive: theta1 < 0.0, len: 2 }
}

pub fn any_critical_region(theta1: f64) -> RegionSpec {
    critical_region(theta1, dominant_sign_string(theta1))
}

pub fn any_critical_contains(q: C64, theta1: f64) -> RegionVerdict {
    any_critical_region(theta1).verdict(q, BOUNDARY_TOL)
}

/// Whether condensed curves reach `(q, θ1)` but critical ones do not.
pub fn disconnection_test(q: C64, theta1: f64, variant: Variant) -> bool {
    if !(theta1.abs() < PI) {
        return false;
    }
    let cond = condensed_contains(q, theta1).status;
    let crit = any_critical_contains(q, theta1).status;
    match variant {
        Variant::Open => cond == Status::Inside && crit != Status::Inside,
        Variant::Closed => cond != Status::Outside && crit == Status::Outside,
    }
}

/// True when no curve of amplitude exactly `omega` ends at `q`.
pub fn amplitude_circle_test(q: C64, theta1: f64, omega: f64) -> Result<bool> {
    if !(theta1.abs() <= PI) || !(omega >= theta1.abs() && omega <= PI) {
        return Err(Error::DomainError(format!("amplitude {omega} with turning {theta1}")));
    }
    let sign = if theta1 > 0.0 {
        1.0
    } else if theta1 < 0.0 {
        -1.0
    } else {
        0.0
    };
    let center = I * sign * (cis(theta1) - ONE);
    Ok((q - center).norm() < 4.0 * (omega / 2.0).sin())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum ExtremalFamily {
    /// Turn left up to heading `phi`, then right down to the final heading.
    CondensedPlus { phi: f64 },
    /// Turn right down to heading `psi`, then left up to the final heading.
    CondensedMinus { psi: f64 },
    /// Half-turns alternating between headings `mu` and `mu + π` in the order of `sigma`.
    Critical { sigma: SignString, mu: f64 },
}

const RANGE_TOL: f64 = 1e-12;

fn check_range(x: f64, lo: f64, hi: f64) -> Result<()> {
    if x >= lo - RANGE_TOL && x <= hi + RANGE_TOL {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(x))
    }
}

/// Heading waypoints of the extremal curve, starting at 0 and ending at `theta1`.
fn extremal_waypoints(theta1: f64, family: &ExtremalFamily) -> Result<Vec<f64>> {
    let (hi0, lo0) = (theta1.max(0.0), theta1.min(0.0));
    match *family {
        ExtremalFamily::CondensedPlus { phi } => {
            check_range(theta1, -PI, PI)?;
            check_range(phi, hi0, PI + lo0)?;
            Ok(vec![0.0, phi, theta1])
        }
        ExtremalFamily::CondensedMinus { psi } => {
            check_range(theta1, -PI, PI)?;
            check_range(psi, hi0 - PI, lo0)?;
            Ok(vec![0.0, psi, theta1])
        }
        ExtremalFamily::Critical { sigma, mu } => {
            check_range(theta1, -PI, PI)?;
            check_range(mu, hi0 - PI, lo0)?;
            let mut w = vec![0.0];
            w.extend((0..sigma.len).map(|k| if sigma.sign(k) > 0.0 { mu + PI } else { mu }));
            w.push(theta1);
            Ok(w)
        }
    }
}

/// The extremal curve itself: unit-curvature arcs between the heading waypoints.
pub fn extremal_curve(theta1: f64, family: &ExtremalFamily) -> Result<PiecewiseCurve> {
    let w = extremal_waypoints(theta1, family)?;
    let segs: Vec<ArcSegment> = w
        .windows(2)
        .filter(|p| (p[1] - p[0]).abs() > 0.0)
        .map(|p| ArcSegment::new((p[1] - p[0]).signum(), (p[1] - p[0]).abs()))
        .collect();
    if segs.is_empty() {
        return Err(Error::ParameterOutOfRange(theta1));
    }
    Ok(PiecewiseCurve { start: Frame::IDENTITY, segs })
}

/// End frame of the extremal curve, from the closed-form endpoint expressions.
pub fn extremal_boundary_point(theta1: f64, family: &ExtremalFamily) -> Result<Frame> {
    extremal_waypoints(theta1, family)?;
    let z = cis(theta1);
    let p = match *family {
        ExtremalFamily::CondensedPlus { phi } => (I + I * z) - 2.0 * I * cis(phi),
        ExtremalFamily::CondensedMinus { psi } => -(I + I * z) + 2.0 * I * cis(psi),
        ExtremalFamily::Critical { sigma, mu } => {
            let (a, r) = sigma.circle(theta1);
            a + I * r * cis(mu)
        }
    };
    Ok(Frame { p, w: z })
}

pub fn emit_region_boundary(spec: &RegionSpec, ds: f64) -> Vec<Vec<C64>> {
    spec.polylines(ds, 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn st(q: C64, t: f64) -> Status {
        condensed_contains(q, t).status
    }

    #[test]
    fn condensed_examples() {
        assert_eq!(st(c(1.0, 0.0), 0.0), Status::Inside);
        assert_eq!(st(c(2.0, 2.0), 0.0), Status::Boundary);
        assert_eq!(st(c(-1.0, 0.0), 0.0), Status::Outside);
        assert_eq!(st(c(3.0, 0.0), 0.0), Status::Inside);
        assert_eq!(st(c(-10.0, 10.0), 0.0), Status::Inside);
        assert_eq!(st(c(-10.0, 3.0), 0.0), Status::Outside);
        assert_eq!(st(c(0.0, 4.0), 0.0), Status::Boundary);
        assert_eq!(st(c(-5.0, 4.0), 0.0), Status::Boundary);
        assert!(condensed_region(PI).is_empty());
        assert!(condensed_region(-4.0).is_empty());
    }

    #[test]
    fn condensed_region_at_zero_passes_through_remark_points() {
        let lines = emit_region_boundary(&condensed_region(0.0), 0.01);
        let near = |p: C64| lines.iter().flatten().any(|x| (x - p).norm() < 1e-2);
        for p in [c(0.0, 0.0), c(2.0, 2.0), c(2.0, -2.0), c(0.0, 4.0), c(0.0, -4.0)] {
            assert!(near(p), "{p}");
        }
        assert!(emit_region_boundary(&RegionSpec::empty(), 0.1).is_empty());
    }

    #[test]
    fn condensed_near_half_turn_is_finite() {
        let spec = condensed_region(PI - 1e-12);
        assert_eq!(spec.arcs.len(), 2);
        assert!(spec.arcs.iter().all(|a| a.sweep.abs() < 1e-11));
        assert_eq!(st(c(0.0, 5.0), PI - 1e-12), Status::Inside);
        assert_eq!(st(c(0.0, -5.0), PI - 1e-12), Status::Outside);
    }

    #[test]
    fn excluded_point_is_outside() {
        for k in -9..=9 {
            let t = k as f64 * 0.33;
            let spec = condensed_region(t);
            let e = spec.excluded_point.unwrap();
            assert_eq!(spec.verdict(e, BOUNDARY_TOL).status, Status::Outside, "theta {t}");
            let spec = any_critical_region(t);
            let e = spec.excluded_point.unwrap();
            assert_eq!(spec.verdict(e, BOUNDARY_TOL).status, Status::Outside, "theta {t}");
        }
    }

    #[test]
    fn tangent_line_oracle_rejects_minus_one() {
        // Every extremal endpoint's tangent line has -1 weakly on its left.
        let q = c(-1.0, 0.0);
        let z = ONE;
        for k in 0..=2000 {
            let phi = PI * k as f64 / 2000.0;
            let e = (I + I * z) - 2.0 * I * cis(phi);
            assert!(cross(cis(phi), q - e) >= -1e-12);
        }
        assert_eq!(st(q, 0.0), Status::Outside);
    }

    #[test]
    fn critical_examples() {
        let s = SignString::parse("-+").unwrap();
        let spec = critical_region(0.0, s);
        assert_abs_diff_eq!(spec.arcs[0].circle.center.norm(), 0.0);
        assert_abs_diff_eq!(spec.arcs[0].circle.radius, 4.0);
        assert_abs_diff_eq!((spec.arcs[0].point(0.5) - c(4.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        let hp = critical_region(PI, s);
        assert!(hp.arcs.is_empty() && hp.half_planes.len() == 1);
        assert_eq!(hp.verdict(c(0.0, 3.0), BOUNDARY_TOL).status, Status::Inside);
        assert_eq!(hp.verdict(c(7.0, 2.0), BOUNDARY_TOL).status, Status::Boundary);
        assert_eq!(hp.verdict(c(0.0, 1.0), BOUNDARY_TOL).status, Status::Outside);
        let long = SignString::parse("+-+-").unwrap();
        assert_abs_diff_eq!(critical_region(0.3, long).arcs[0].circle.radius, 8.0);
        let lower = any_critical_region(-PI);
        assert_eq!(lower.verdict(c(0.0, -3.0), BOUNDARY_TOL).status, Status::Inside);
    }

    #[test]
    fn any_critical_examples() {
        assert_eq!(any_critical_contains(c(5.0, 0.0), 0.0).status, Status::Inside);
        assert_eq!(any_critical_contains(c(3.0, 0.0), 0.0).status, Status::Outside);
        assert_eq!(any_critical_contains(c(4.0, 0.0), 0.0).status, Status::Boundary);
        assert_eq!(any_critical_contains(c(-6.0, 3.0), 0.0).status, Status::Outside);
        assert_eq!(any_critical_contains(c(-6.0, 5.0), 0.0).status, Status::Inside);
    }

    #[test]
    fn disconnection_examples() {
        assert!(disconnection_test(c(3.0, 0.0), 0.0, Variant::Open));
        assert!(!disconnection_test(c(5.0, 0.0), 0.0, Variant::Open));
        assert!(disconnection_test(c(4.0, 0.0), 0.0, Variant::Open));
        assert!(!disconnection_test(c(4.0, 0.0), 0.0, Variant::Closed));
        assert!(!disconnection_test(c(2.0, 2.0), 0.0, Variant::Open));
        assert!(disconnection_test(c(2.0, 2.0), 0.0, Variant::Closed));
        assert!(!disconnection_test(c(3.0, 0.0), PI, Variant::Open));
    }

    #[test]
    fn amplitude_circle_examples() {
        assert!(amplitude_circle_test(c(3.0, 0.0), 0.0, PI).unwrap());
        assert!(!amplitude_circle_test(c(3.0, 0.0), 0.0, FRAC_PI_2).unwrap());
        assert!(amplitude_circle_test(c(0.1, 0.0), 0.0, PI / 6.0).unwrap());
        assert!(amplitude_circle_test(c(0.1, 0.0), 1.0, 0.5).is_err());
    }

    #[test]
    fn extremal_examples() {
        let f = extremal_boundary_point(0.0, &ExtremalFamily::CondensedPlus { phi: FRAC_PI_2 }).unwrap();
        assert_abs_diff_eq!((f.p - c(2.0, 2.0)).norm(), 0.0, epsilon = 1e-15);
        let f = extremal_boundary_point(0.0, &ExtremalFamily::CondensedPlus { phi: 0.0 }).unwrap();
        assert_abs_diff_eq!(f.p.norm(), 0.0, epsilon = 1e-15);
        let sigma = SignString::parse("-+").unwrap();
        let f = extremal_boundary_point(0.0, &ExtremalFamily::Critical { sigma, mu: 0.0 }).unwrap();
        assert_abs_diff_eq!((f.p - c(0.0, 4.0)).norm(), 0.0, epsilon = 1e-15);
        assert!(extremal_boundary_point(0.5, &ExtremalFamily::CondensedPlus { phi: 0.2 }).is_err());
    }

    #[test]
    fn extremal_curves_match_closed_forms() {
        for t in [-2.5, -1.0, 0.0, 0.7, 2.9] {
            let (hi0, lo0) = (f64::max(t, 0.0), f64::min(t, 0.0));
            for k in 0..=20 {
                let x = k as f64 / 20.0;
                let mut fams = vec![
                    ExtremalFamily::CondensedPlus { phi: hi0 + x * (PI + lo0 - hi0) },
                    ExtremalFamily::CondensedMinus { psi: hi0 - PI + x * (lo0 - hi0 + PI) },
                ];
                for s in ["+-", "-+", "+-+", "-+-+-"] {
                    let sigma = SignString::parse(s).unwrap();
                    fams.push(ExtremalFamily::Critical { sigma, mu: hi0 - PI + x * (lo0 - hi0 + PI) });
                }
                for fam in fams {
                    let Ok(curve) = extremal_curve(t, &fam) else { continue };
                    let e = extremal_boundary_point(t, &fam).unwrap();
                    assert!(curve.end_frame().distance(&e) < 1e-9, "{t} {fam:?}");
                }
            }
        }
    }

    #[test]
    fn sign_string_display_roundtrip() {
        for s in ["+-", "-+-", "+-+-+"] {
            assert_eq!(SignString::parse(s).unwrap().to_string(), s);
        }
        assert!(SignString::parse("++").is_err());
        assert!(SignString::parse("+").is_err());
    }
}
