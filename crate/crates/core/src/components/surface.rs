//! Complete flat surfaces as quotients of the plane. Components of a curve space on the
//! surface are the disjoint union over the lifts of the final frame.

use super::{component_count, turning_for, ComponentReport};
use crate::curve::Variant;
use crate::error::{Error, Result};
use crate::geom::{Frame, C64};
use crate::normalize::Bounds;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Plane,
    Cylinder,
    Torus,
    Mobius,
    Klein,
}

/// Plane isometry `z ↦ rotation·z + translation`, or `rotation·z̄ + translation` when reflecting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub rotation: C64,
    pub translation: C64,
    pub reflection: bool,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry { rotation: C64::new(1.0, 0.0), translation: C64::new(0.0, 0.0), reflection: false };

    pub fn translation(t: C64) -> Isometry {
        Isometry { translation: t, ..Isometry::IDENTITY }
    }

    /// Reflection in the real axis followed by translation along it.
    pub fn glide(d: f64) -> Isometry {
        Isometry { translation: C64::new(d, 0.0), reflection: true, ..Isometry::IDENTITY }
    }

    fn lin(&self, z: C64) -> C64 {
        self.rotation * if self.reflection { z.conj() } else { z }
    }

    pub fn apply_point(&self, z: C64) -> C64 {
        self.lin(z) + self.translation
    }

    /// Image of a frame; reflections reverse orientation, so the heading is reflected too.
    pub fn apply_frame(&self, f: &Frame) -> Frame {
        Frame::new(self.apply_point(f.p), self.lin(f.w))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Isometry) -> Isometry {
        Isometry {
            rotation: self.rotation * if self.reflection { g.rotation.conj() } else { g.rotation },
            translation: self.apply_point(g.translation),
            reflection: self.reflection != g.reflection,
        }
    }

    pub fn inverse(&self) -> Isometry {
        let rot = if self.reflection { self.rotation } else { self.rotation.conj() };
        let inv = Isometry { rotation: rot, translation: C64::new(0.0, 0.0), reflection: self.reflection };
        Isometry { translation: -inv.lin(self.translation), ..inv }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub kind: SurfaceKind,
    pub generators: Vec<Isometry>,
}

impl SurfaceModel {
    pub fn plane() -> SurfaceModel {
        SurfaceModel { kind: SurfaceKind::Plane, generators: vec![] }
    }

    pub fn cylinder(t: C64) -> SurfaceModel {
        SurfaceModel { kind: SurfaceKind::Cylinder, generators: vec![Isometry::translation(t)] }
    }

    pub fn torus(a: C64, b: C64) -> SurfaceModel {
        SurfaceModel { kind: SurfaceKind::Torus, generators: vec![Isometry::translation(a), Isometry::translation(b)] }
    }

    pub fn mobius(d: f64) -> SurfaceModel {
        SurfaceModel { kind: SurfaceKind::Mobius, generators: vec![Isometry::glide(d)] }
    }

    /// Glide reflection of length `d` along the real axis and translation by `h·i`.
    pub fn klein(d: f64, h: f64) -> SurfaceModel {
        SurfaceModel {
            kind: SurfaceKind::Klein,
            generators: vec![Isometry::glide(d), Isometry::translation(C64::new(0.0, h))],
        }
    }

    pub fn is_orientable(&self) -> bool {
        self.generators.iter().all(|g| !g.reflection)
    }

    /// Checks that the generators move every point, which rules out fixed points for the
    /// translation and glide generators used here.
    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            let moves = if g.reflection {
                // A glide along the axis parallel to its translation moves points by its component along that axis.
                g.translation.re.abs() > 1e-12 && (g.rotation - C64::new(1.0, 0.0)).norm() < 1e-12
            } else {
                (g.rotation - C64::new(1.0, 0.0)).norm() < 1e-12 && g.translation.norm() > 1e-12
            };
            if !moves {
                return Err(Error::Unsupported("deck generator with fixed points".into()));
            }
        }
        Ok(())
    }

    /// Deck transformations that move `base` to within `radius` of `center`.
    pub fn orbit(&self, base: &Frame, center: C64, radius: f64) -> Vec<(Isometry, Frame)> {
        let mut steps: Vec<Isometry> = Vec::new();
        for g in &self.generators {
            steps.push(*g);
            steps.push(g.inverse());
        }
        let reach = steps.iter().map(|g| g.translation.norm()).fold(0.0, f64::max);
        let mut out: Vec<(Isometry, Frame)> = vec![(Isometry::IDENTITY, *base)];
        let mut frontier = vec![Isometry::IDENTITY];
        while let Some(g) = frontier.pop() {
            for s in &steps {
                let h = s.compose(&g);
                let f = h.apply_frame(base);
                if (f.p - center).norm() > radius + 2.0 * reach {
                    continue;
                }
                if out.iter().any(|(_, o)| o.distance(&f) < 1e-9) {
                    continue;
                }
                out.push((h, f));
                frontier.push(h);
            }
        }
        out.retain(|(_, f)| (f.p - center).norm() <= radius);
        out
    }
}

/// Lift search radius `|q − p| + 8π / min(|κ1|, |κ2|, 1)`, ignoring zero and infinite bounds.
pub fn default_radius(p: &Frame, q: &Frame, b: &Bounds) -> f64 {
    let m = [b.kappa1.abs(), b.kappa2.abs(), 1.0]
        .into_iter()
        .filter(|k| *k > 0.0 && k.is_finite())
        .fold(1.0, f64::min);
    (q.p - p.p).norm() + 8.0 * PI / m
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TurningChoice {
    /// Principal turning of each lift shifted by this many whole turns.
    WholeTurns(i64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftReport {
    pub lift: Frame,
    pub deck: Isometry,
    /// The lift has the same position as the base frame.
    pub degenerate: bool,
    pub report: ComponentReport,
}

pub fn surface_components(
    surface: &SurfaceModel,
    u: &Frame,
    v: &Frame,
    b: &Bounds,
    turning: TurningChoice,
    max_radius: Option<f64>,
    variant: Variant,
) -> Result<Vec<LiftReport>> {
    let b = Bounds::new(b.kappa1, b.kappa2)?;
    surface.validate()?;
    if !surface.is_orientable() && b.kappa1 != -b.kappa2 {
        return Err(Error::AsymmetricBoundsOnNonorientable(b.kappa1, b.kappa2));
    }
    let radius = max_radius.unwrap_or_else(|| default_radius(u, v, &b));
    let TurningChoice::WholeTurns(k) = turning;
    surface
        .orbit(v, u.p, radius)
        .into_iter()
        .map(|(deck, lift)| {
            let theta1 = turning_for(u, &lift, k);
            Ok(LiftReport {
                lift,
                deck,
                degenerate: (lift.p - u.p).norm() < 1e-12,
                report: component_count(u, &lift, &b, theta1, variant)?,
            })
        })
        .collect()
}
