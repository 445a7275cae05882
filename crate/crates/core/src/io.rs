//! JSON and SVG serialization.

use crate::components::surface::LiftReport;
use crate::components::ComponentReport;
use crate::curve::{ArcSegment, PiecewiseCurve};
use crate::deform::HomotopyTrace;
use crate::error::{Error, Result};
use crate::geom::{Frame, C64};
use crate::normalize::Bounds;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameJson {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl From<&Frame> for FrameJson {
    fn from(f: &Frame) -> Self {
        FrameJson { x: f.p.re, y: f.p.im, theta: f.heading() }
    }
}

impl From<FrameJson> for Frame {
    fn from(f: FrameJson) -> Self {
        Frame::from_angle(C64::new(f.x, f.y), f.theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentJson {
    pub kappa: f64,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveJson {
    pub start: FrameJson,
    pub segments: Vec<SegmentJson>,
}

impl From<&PiecewiseCurve> for CurveJson {
    fn from(c: &PiecewiseCurve) -> Self {
        CurveJson {
            start: (&c.start).into(),
            segments: c.segs.iter().map(|s| SegmentJson { kappa: s.kappa, length: s.len }).collect(),
        }
    }
}

impl TryFrom<CurveJson> for PiecewiseCurve {
    type Error = Error;

    fn try_from(c: CurveJson) -> Result<PiecewiseCurve> {
        let segs = c.segments.iter().map(|s| ArcSegment::new(s.kappa, s.length)).collect();
        PiecewiseCurve::new(c.start.into(), segs)
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Json(e.to_string())
}

pub fn curve_to_value(c: &PiecewiseCurve) -> Value {
    serde_json::to_value(CurveJson::from(c)).expect("curve fields are plain numbers")
}

pub fn curve_to_json(c: &PiecewiseCurve) -> String {
    curve_to_value(c).to_string()
}

pub fn curve_from_json(text: &str) -> Result<PiecewiseCurve> {
    let raw: CurveJson = serde_json::from_str(text).map_err(json_err)?;
    raw.try_into()
}

pub fn frame_to_value(f: &Frame) -> Value {
    serde_json::to_value(FrameJson::from(f)).expect("frame fields are plain numbers")
}

pub fn point_to_value(z: C64) -> Value {
    json!({ "x": z.re, "y": z.im })
}

/// Infinite values become `"+inf"` / `"-inf"`; JSON has no number for them.
pub fn extended_to_value(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x > 0.0 {
        json!("+inf")
    } else {
        json!("-inf")
    }
}

pub fn bounds_to_value(b: &Bounds) -> Value {
    json!({ "kappa1": extended_to_value(b.kappa1), "kappa2": extended_to_value(b.kappa2) })
}

pub fn report_to_value(r: &ComponentReport) -> Value {
    let rec = &r.canonical;
    json!({
        "mode": r.mode,
        "count": r.count,
        "labels": r.component_labels,
        "theta1": r.theta1,
        "canonical_theta1": r.canonical_theta1,
        "q_hat": r.q_hat.map(point_to_value),
        "canonical": {
            "type": rec.canonical_type,
            "case": rec.case,
            "bounds": bounds_to_value(&rec.bounds),
            "q0": frame_to_value(&rec.q0),
            "turning_sign": rec.turning_sign,
            "pipeline": rec.pipeline,
        },
        "witnesses": r.witnesses.iter().map(curve_to_value).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

pub fn lifts_to_value(lifts: &[LiftReport]) -> Value {
    let items: Vec<Value> = lifts
        .iter()
        .map(|l| {
            json!({
                "lift": frame_to_value(&l.lift),
                "degenerate": l.degenerate,
                "reflected": l.deck.reflection,
                "report": report_to_value(&l.report),
            })
        })
        .collect();
    json!({ "lifts": items })
}

pub fn trace_to_value(t: &HomotopyTrace) -> Value {
    json!({
        "s": t.s,
        "curves": t.curves.iter().map(curve_to_value).collect::<Vec<_>>(),
        "diagnostics": t.diagnostics,
    })
}

/// SVG 1.1 document with one path per polyline. The y-axis points up.
pub fn svg_document(polylines: &[Vec<C64>]) -> String {
    let pts = polylines.iter().flatten();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(-p.im);
        y1 = y1.max(-p.im);
    }
    if !x0.is_finite() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let stroke = 0.004 * w.max(h);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        x0 - pad,
        y0 - pad,
        w,
        h
    );
    for line in polylines {
        let mut d = String::new();
        for (i, p) in line.iter().enumerate() {
            let _ = write!(d, "{}{:.9} {:.9}", if i == 0 { "M" } else { " L" }, p.re, -p.im);
        }
        let _ = writeln!(out, r#"  <path d="{d}" fill="none" stroke="black" stroke-width="{stroke}"/>"#);
    }
    out.push_str("</svg>\n");
    out
}

pub fn curves_svg(curves: &[PiecewiseCurve], ds: f64) -> String {
    let lines: Vec<Vec<C64>> = curves.iter().map(|c| c.sample_points(ds).iter().map(|s| s.point).collect()).collect();
    svg_document(&lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::random_curve;
    use crate::normalize::canonicalize;

    #[test]
    fn curve_round_trip() {
        for seed in 0..200 {
            let mut c = random_curve(-2.0, 3.0, 5, 2.0, seed);
            c.start = Frame::from_angle(C64::new(seed as f64 * 0.37, -1.5), seed as f64 * 0.731 - 3.0);
            let once = curve_from_json(&curve_to_json(&c)).unwrap();
            assert_eq!(once.segs, c.segs);
            assert_eq!(once.start.p, c.start.p);
            // The heading travels as an angle, so it is exact only up to a few ulps.
            assert!((once.start.w - c.start.w).norm() <= 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn spec_schema() {
        let c = curve_from_json(r#"{"start":{"x":0,"y":0,"theta":0},"segments":[{"kappa":1,"length":1.5707963267948966}]}"#).unwrap();
        let e = c.end_frame();
        assert!((e.p - C64::new(1.0, 1.0)).norm() < 1e-12);
        assert!(curve_from_json(r#"{"start":{"x":0,"y":0,"theta":0},"segments":[]}"#).is_err());
        assert!(curve_from_json("{").is_err());
    }

    #[test]
    fn infinite_bounds_in_reports() {
        let b = Bounds::new(0.0, f64::INFINITY).unwrap();
        let v = bounds_to_value(&canonicalize(&Frame::IDENTITY, &Frame::IDENTITY, &b).unwrap().bounds);
        assert_eq!(v["kappa2"], "+inf");
    }

    #[test]
    fn svg_paths_and_xml() {
        let lines = vec![vec![C64::new(0.0, 0.0), C64::new(1.0, 2.0)], vec![C64::new(-1.0, 0.5), C64::new(2.0, 0.0), C64::new(0.0, -1.0)]];
        let svg = svg_document(&lines);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let paths = doc.descendants().filter(|n| n.has_tag_name("path")).count();
        assert_eq!(paths, 2);
        // Upward y in the plane is downward in SVG coordinates.
        assert!(svg.contains("L1.000000000 -2.000000000"));
    }
}
