//! Flag value parsers.

use curvspace::curve::PiecewiseCurve;
use curvspace::geom::{Frame, C64};
use curvspace::io::curve_from_json;
use curvspace::normalize::extended;
use std::io::Read;

/// A real number, `inf` or `-inf`.
pub fn number(s: &str) -> Result<f64, String> {
    extended::parse(s).ok_or_else(|| format!("not a number: {s}"))
}

/// `x` or `x,y`.
pub fn point(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let finite = |t: &str| number(t).and_then(|x| if x.is_finite() { Ok(x) } else { Err(format!("coordinate must be finite: {t}")) });
    match parts.as_slice() {
        [x] => Ok(C64::new(finite(x)?, 0.0)),
        [x, y] => Ok(C64::new(finite(x)?, finite(y)?)),
        _ => Err(format!("expected x or x,y: {s}")),
    }
}

/// `x,y,theta` with the heading in radians.
pub fn frame(s: &str) -> Result<Frame, String> {
    let parts: Vec<f64> = s.split(',').map(number).collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [x, y, t] if parts.iter().all(|v| v.is_finite()) => Ok(Frame::from_angle(C64::new(*x, *y), *t)),
        _ => Err(format!("expected finite x,y,theta: {s}")),
    }
}

/// Curve JSON given inline, as `@path`, or as `-` for standard input.
pub fn curve(s: &str) -> Result<PiecewiseCurve, String> {
    let text = if s == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| e.to_string())?;
        buf
    } else if let Some(path) = s.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    } else {
        s.to_string()
    };
    curve_from_json(&text).map_err(|e| e.to_string())
}
