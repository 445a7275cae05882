//! Number of connected components of a curve space and same-component decisions.

pub mod surface;

use crate::curve::{in_bounds, ArcSegment, CurveClass, PiecewiseCurve, Variant};
use crate::error::{Error, Result};
use crate::geom::{cis, cross, dot, wrap_angle, Frame, C64, I};
use crate::normalize::{canonicalize, q_hat, untransform_curve, Bounds, CanonicalType, NormalizationRecord};
use crate::regions::disconnection_test;
use serde::{Serialize, Serializer};
use std::f64::consts::PI;

pub const TURNING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentMode {
    /// One component per realizable total turning.
    PerTurning,
    /// The total turning is fixed and the space may split by amplitude.
    FixedTurning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Zero,
    One,
    Two,
    Unknown,
}

impl Count {
    pub fn as_number(&self) -> Option<u8> {
        match self {
            Count::Zero => Some(0),
            Count::One => Some(1),
            Count::Two => Some(2),
            Count::Unknown => None,
        }
    }
}

impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.as_number() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "unknown"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_number() {
            Some(n) => s.serialize_u8(n),
            None => s.serialize_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentLabel {
    CondensedComponent,
    DiffuseComponent,
    Single,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentReport {
    pub mode: ComponentMode,
    pub count: Count,
    pub component_labels: Vec<ComponentLabel>,
    pub theta1: f64,
    /// Total turning in the reduced problem (negated when the reduction reverses curves).
    pub canonical_theta1: f64,
    /// Reduced endpoint position for bounds of opposite signs.
    pub q_hat: Option<C64>,
    pub canonical: NormalizationRecord,
    pub witnesses: Vec<PiecewiseCurve>,
    pub notes: Vec<String>,
}

/// Checks `e^{iθ1} = z·w̄`.
pub fn check_turning(p: &Frame, q: &Frame, theta1: f64) -> Result<()> {
    if (cis(theta1) - q.w * p.w.conj()).norm() > TURNING_TOL {
        return Err(Error::TurningIncompatible(theta1));
    }
    Ok(())
}

pub fn component_count(p: &Frame, q: &Frame, b: &Bounds, theta1: f64, variant: Variant) -> Result<ComponentReport> {
    check_turning(p, q, theta1)?;
    let rec = canonicalize(p, q, b)?;
    let canonical_theta1 = rec.turning_sign * theta1;
    let mut report = ComponentReport {
        mode: ComponentMode::PerTurning,
        count: Count::One,
        component_labels: vec![ComponentLabel::Single],
        theta1,
        canonical_theta1,
        q_hat: None,
        canonical: rec.clone(),
        witnesses: vec![],
        notes: vec![],
    };
    match rec.canonical_type {
        CanonicalType::Unconstrained => {
            report.notes.push("unconstrained curvature: one component per total turning".into());
        }
        CanonicalType::Symmetric => {
            let qh = q_hat(p, q, b);
            if (qh - rec.q0.p).norm() > 1e-9 * (1.0 + qh.norm()) {
                return Err(Error::NotApplicable(format!("reduced endpoint mismatch: {qh} vs {}", rec.q0.p)));
            }
            report.mode = ComponentMode::FixedTurning;
            report.q_hat = Some(qh);
            if disconnection_test(qh, theta1, variant) {
                report.count = Count::Two;
                report.component_labels = vec![ComponentLabel::CondensedComponent, ComponentLabel::DiffuseComponent];
            }
            if (theta1.abs() - PI).abs() <= TURNING_TOL {
                report.notes.push("turning of exactly a half-turn: connected by the boundary remark".into());
            }
        }
        CanonicalType::Positive | CanonicalType::AboveOne => {
            if !(canonical_theta1 > 0.0) {
                report.count = Count::Zero;
                report.component_labels.clear();
                report.notes.push("curvature of one sign forces total turning of that sign".into());
            } else {
                let rho_hi = match rec.canonical_type {
                    CanonicalType::AboveOne => 1.0 - 1e-6,
                    _ => 10.0 * (1.0 + rec.q0.p.norm()) / canonical_theta1.min(1.0),
                };
                let rho_lo = 1e-6 * rho_hi.min(1.0);
                let witness = convex_witness(rec.q0.p, canonical_theta1, rho_lo, rho_hi)
                    .and_then(|w| untransform_curve(&w, &rec).ok())
                    .filter(|w| w.end_frame().distance(q) <= 1e-6 * (1.0 + q.p.norm()))
                    .filter(|w| in_bounds(w, b.kappa1, b.kappa2, Variant::Open).unwrap_or(false));
                match witness {
                    Some(w) => report.witnesses.push(w),
                    None => {
                        report.count = Count::Unknown;
                        report.component_labels.clear();
                        report.notes.push("no witness found by the bounded search".into());
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Coefficients `δ ∈ [−1, 1]^n` with `Σ δ_k g_k = r`, if `r` lies in the zonotope spanned
/// by the generators. The zonotope is cut into triangles from its center to consecutive
/// vertices and `r` is written as a combination of the two vertices of its triangle.
pub fn zonotope_coefficients(gens: &[C64], r: C64) -> Option<Vec<f64>> {
    if r.norm() == 0.0 {
        return Some(vec![0.0; gens.len()]);
    }
    let mut angles: Vec<f64> = gens
        .iter()
        .filter(|g| g.norm() > 0.0)
        .flat_map(|g| {
            let a = (g.arg() + 0.5 * PI).rem_euclid(2.0 * PI);
            [a, (a + PI).rem_euclid(2.0 * PI)]
        })
        .collect();
    if angles.is_empty() {
        return None;
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    let m = angles.len();
    let signs: Vec<Vec<f64>> = (0..m)
        .map(|j| {
            let next = if j + 1 < m { angles[j + 1] } else { angles[0] + 2.0 * PI };
            let u = cis(0.5 * (angles[j] + next));
            gens.iter().map(|g| dot(*g, u).signum() * (g.norm() > 0.0) as u8 as f64).collect()
        })
        .collect();
    let verts: Vec<C64> = signs
        .iter()
        .map(|d| gens.iter().zip(d).map(|(g, s)| g * s).sum())
        .collect();
    let tol = 1e-12;
    for j in 0..m {
        let k = (j + 1) % m;
        let (a, b) = (verts[j], verts[k]);
        let det = cross(a, b);
        if det.abs() < 1e-300 {
            continue;
        }
        let x = cross(r, b) / det;
        let y = cross(a, r) / det;
        if x >= -tol && y >= -tol && x + y <= 1.0 + tol {
            let (x, y) = (x.max(0.0), y.max(0.0));
            let scale = 1.0 / (x + y).max(1.0);
            return Some(
                signs[j].iter().zip(&signs[k]).map(|(s, t)| ((x * s + y * t) * scale).clamp(-1.0, 1.0)).collect(),
            );
        }
    }
    None
}

/// A locally convex curve from the identity frame to `(q, e^{iΘ})` with total turning `Θ > 0`,
/// built from a radius of curvature that is piecewise constant in the heading and lies in
/// `[ρ_lo, ρ_hi]`.
pub fn convex_witness(q: C64, turning: f64, rho_lo: f64, rho_hi: f64) -> Option<PiecewiseCurve> {
    if !(turning > 0.0) || !(rho_lo > 0.0 && rho_hi > rho_lo) {
        return None;
    }
    let k = ((turning / (PI / 64.0)).ceil() as usize).clamp(64, 8192);
    let dth = turning / k as f64;
    let moments: Vec<C64> = (0..k)
        .map(|j| (cis((j + 1) as f64 * dth) - cis(j as f64 * dth)) / I)
        .collect();
    let (mid, half) = (0.5 * (rho_lo + rho_hi), 0.5 * (rho_hi - rho_lo));
    let r = q - moments.iter().sum::<C64>() * mid;
    let gens: Vec<C64> = moments.iter().map(|e| e * half).collect();
    let delta = zonotope_coefficients(&gens, r)?;
    let segs = delta
        .iter()
        .map(|d| {
            let rho = mid + half * d;
            ArcSegment::new(1.0 / rho, rho * dth)
        })
        .collect();
    let curve = PiecewiseCurve { start: Frame::IDENTITY, segs };
    let target = Frame::new(q, cis(turning));
    (curve.end_frame().distance(&target) <= 1e-8 * (1.0 + q.norm())).then_some(curve)
}

fn check_same_frames(c1: &PiecewiseCurve, c2: &PiecewiseCurve) -> Result<()> {
    let gap = c1.start.distance(&c2.start).max(c1.end_frame().distance(&c2.end_frame()));
    if gap > 1e-9 {
        return Err(Error::FrameMismatch { gap });
    }
    Ok(())
}

/// Whether two curves with common end frames lie in the same component of the space with
/// open bounds `b`.
pub fn same_component(c1: &PiecewiseCurve, c2: &PiecewiseCurve, b: &Bounds) -> Result<bool> {
    let b = Bounds::new(b.kappa1, b.kappa2)?;
    check_same_frames(c1, c2)?;
    for c in [c1, c2] {
        if !in_bounds(c, b.kappa1, b.kappa2, Variant::Open)? {
            return Err(Error::OutOfBounds);
        }
    }
    let (t1, t2) = (c1.total_turning(), c2.total_turning());
    if (t1 - t2).abs() > TURNING_TOL {
        return Ok(false);
    }
    if !(b.kappa1 < 0.0 && b.kappa2 > 0.0) || b.is_unconstrained() {
        return Ok(true);
    }
    let qh = q_hat(&c1.start, &c1.end_frame(), &b);
    let split = disconnection_test(qh, t1, Variant::Open);
    Ok(!(split && c1.class() != c2.class()))
}

/// Whether `c` lies in the same component as `c` with one figure eight attached.
pub fn eight_same_component(c: &PiecewiseCurve, b: &Bounds, variant: Variant) -> Result<bool> {
    let b = Bounds::new(b.kappa1, b.kappa2)?;
    if !(b.kappa1 < 0.0 && b.kappa2 > 0.0) {
        return Err(Error::NotApplicable("a figure eight needs curvature of both signs".into()));
    }
    if !in_bounds(c, b.kappa1, b.kappa2, variant)? {
        return Err(Error::OutOfBounds);
    }
    if b.is_unconstrained() || c.class() == CurveClass::Diffuse {
        return Ok(true);
    }
    let qh = q_hat(&c.start, &c.end_frame(), &b);
    Ok(!disconnection_test(qh, c.total_turning(), variant))
}

/// Principal turning `arg(z·w̄)` shifted by whole turns.
pub fn turning_for(p: &Frame, q: &Frame, whole_turns: i64) -> f64 {
    wrap_angle((q.w * p.w.conj()).arg()) + 2.0 * PI * whole_turns as f64
}
