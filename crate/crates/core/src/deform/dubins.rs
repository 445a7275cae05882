//! Closed-form enumeration of arc-segment-arc paths with arcs shorter than a half-turn.

use crate::curve::{ArcSegment, PiecewiseCurve};
use crate::error::{Error, Result};
use crate::geom::{wrap_angle, Frame, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Word {
    LSL,
    LSR,
    RSL,
    RSR,
}

impl Word {
    pub const ALL: [Word; 4] = [Word::LSL, Word::LSR, Word::RSL, Word::RSR];

    fn signs(&self) -> (f64, f64) {
        match self {
            Word::LSL => (1.0, 1.0),
            Word::LSR => (1.0, -1.0),
            Word::RSL => (-1.0, 1.0),
            Word::RSR => (-1.0, -1.0),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One arc-segment-arc path: first turn `a1`, straight run `l`, second turn `a2`
/// (turn amplitudes in radians, all nonnegative).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CscCandidate {
    pub word: Word,
    pub a1: f64,
    pub l: f64,
    pub a2: f64,
    pub kappa0: f64,
}

impl CscCandidate {
    pub fn length(&self) -> f64 {
        (self.a1 + self.a2) / self.kappa0 + self.l
    }

    pub fn curve(&self) -> PiecewiseCurve {
        let (s1, s2) = self.word.signs();
        let k = self.kappa0;
        let segs = [
            ArcSegment::new(s1 * k, self.a1 / k),
            ArcSegment::new(0.0, self.l),
            ArcSegment::new(s2 * k, self.a2 / k),
        ]
        .into_iter()
        .filter(|s| s.len > 0.0)
        .collect();
        PiecewiseCurve { start: Frame::IDENTITY, segs }
    }
}

/// Turn amplitude in `[0, 2π)`, snapping values just short of a full turn to zero.
fn turn(x: f64) -> f64 {
    let t = x.rem_euclid(2.0 * PI);
    if 2.0 * PI - t < 1e-12 {
        0.0
    } else {
        t
    }
}

/// All four words from the identity frame to `q`, without filtering.
pub fn csc_all(q: &Frame, kappa0: f64) -> Vec<CscCandidate> {
    let r = 1.0 / kappa0;
    let theta1 = q.w.arg();
    let mut out = Vec::new();
    for word in Word::ALL {
        let (s1, s2) = word.signs();
        let c1 = I * r * s1;
        let c2 = q.p + I * r * s2 * q.w;
        let d = c2 - c1;
        let dist = d.norm();
        let (psi, l) = if s1 == s2 {
            (d.arg(), dist)
        } else {
            if dist < 2.0 * r {
                continue;
            }
            let l = (dist * dist - 4.0 * r * r).max(0.0).sqrt();
            // The tangent direction is rotated off the center line by the inner-tangent angle.
            (d.arg() + s1 * (2.0 * r).atan2(l), l)
        };
        let a1 = turn(s1 * psi);
        let a2 = turn(s2 * (theta1 - psi));
        out.push(CscCandidate { word, a1, l, a2, kappa0 });
    }
    out
}

/// Candidates whose arcs are shorter than a half-turn and whose total turning is the
/// principal turning of `q`, shortest first.
pub fn csc_candidates(q: &Frame, kappa0: f64) -> Vec<CscCandidate> {
    let theta1 = wrap_angle(q.w.arg());
    let mut out: Vec<CscCandidate> = csc_all(q, kappa0)
        .into_iter()
        .filter(|c| {
            let (s1, s2) = c.word.signs();
            c.a1 < PI && c.a2 < PI && (s1 * c.a1 + s2 * c.a2 - theta1).abs() < 1e-9
        })
        .collect();
    out.sort_by(|x, y| {
        x.length()
            .partial_cmp(&y.length())
            .unwrap()
            .then(x.a1.partial_cmp(&y.a1).unwrap())
    });
    out
}

/// Shortest admissible arc-segment-arc path from the identity frame to `q`.
pub fn dubins_csc_oracle(q: &Frame, kappa0: f64) -> Result<PiecewiseCurve> {
    let best = csc_candidates(q, kappa0).into_iter().next().ok_or(Error::Unreachable)?;
    if !(best.length() > 0.0) {
        return Err(Error::Unreachable);
    }
    let curve = best.curve();
    let gap = curve.end_frame().distance(q);
    if gap > 1e-8 * (1.0 + q.p.norm()) {
        return Err(Error::Unreachable);
    }
    Ok(curve)
}

/// Word of an arc-segment-arc curve, ignoring degenerate pieces.
pub fn csc_word(c: &PiecewiseCurve) -> Option<Word> {
    let turns: Vec<f64> = c.segs.iter().filter(|s| s.kappa != 0.0).map(|s| s.kappa.signum()).collect();
    match turns.as_slice() {
        [a, b] => Some(match (*a > 0.0, *b > 0.0) {
            (true, true) => Word::LSL,
            (true, false) => Word::LSR,
            (false, true) => Word::RSL,
            (false, false) => Word::RSR,
        }),
        _ => None,
    }
}

/// Words whose length is within `tol` of the shortest candidate.
pub fn word_ties(q: &Frame, kappa0: f64, tol: f64) -> Vec<Word> {
    let c = csc_candidates(q, kappa0);
    match c.first() {
        Some(best) => c.iter().filter(|x| x.length() - best.length() <= tol).map(|x| x.word).collect(),
        None => vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::c;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn straight_target() {
        let p = dubins_csc_oracle(&Frame::translation(c(3.5, 0.0)), 1.0).unwrap();
        assert_abs_diff_eq!(p.length(), 3.5, epsilon = 1e-12);
        assert!(p.segs.iter().all(|s| s.kappa == 0.0 || s.len < 1e-12));
    }

    #[test]
    fn quarter_circle_target() {
        let p = dubins_csc_oracle(&Frame::new(c(1.0, 1.0), I), 1.0).unwrap();
        assert_abs_diff_eq!(p.length(), FRAC_PI_2, epsilon = 1e-9);
    }

    #[test]
    fn every_word_reaches_its_target() {
        let q = Frame::from_angle(c(4.0, 1.5), 0.6);
        for cand in csc_all(&q, 1.0) {
            assert!(cand.curve().end_frame().distance(&q) < 1e-9, "{:?}", cand.word);
        }
    }

    #[test]
    fn unreachable_when_turning_needs_half_turn() {
        assert!(dubins_csc_oracle(&Frame::from_angle(c(-1.0, 0.0), 0.0), 1.0).is_err());
    }
}
