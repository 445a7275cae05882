//! Explicit homotopies between curves with bounded curvature.

pub mod convex;
pub mod dubins;
pub mod eights;
pub mod excavator;
pub mod graft;

use crate::curve::PiecewiseCurve;
use crate::geom::Frame;
use serde::{Deserialize, Serialize};

/// Per-step health of a homotopy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepDiagnostics {
    pub s: f64,
    pub theta1: f64,
    pub omega: f64,
    pub length: f64,
    pub max_abs_kappa: f64,
    /// Distance of the end frame from the target.
    pub end_drift: f64,
    pub area_residual: Option<f64>,
}

impl StepDiagnostics {
    pub fn of(s: f64, c: &PiecewiseCurve, target: &Frame) -> StepDiagnostics {
        let prof = c.turning_profile();
        StepDiagnostics {
            s,
            theta1: prof.theta1,
            omega: prof.omega,
            length: c.length(),
            max_abs_kappa: c.max_abs_curvature(),
            end_drift: c.end_frame().distance(target),
            area_residual: None,
        }
    }

    pub fn with_area_residual(mut self, r: f64) -> StepDiagnostics {
        self.area_residual = Some(r);
        self
    }
}

/// Curves sampled along a homotopy parameter.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HomotopyTrace {
    pub s: Vec<f64>,
    pub curves: Vec<PiecewiseCurve>,
    pub diagnostics: Vec<StepDiagnostics>,
}

impl HomotopyTrace {
    pub fn max_end_drift(&self) -> f64 {
        self.diagnostics.iter().map(|d| d.end_drift).fold(0.0, f64::max)
    }

    pub fn max_abs_kappa(&self) -> f64 {
        self.diagnostics.iter().map(|d| d.max_abs_kappa).fold(0.0, f64::max)
    }
}
