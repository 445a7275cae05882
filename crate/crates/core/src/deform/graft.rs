//! Grafting: inserting straight segments at points whose headings are opposite.

use crate::curve::{ArcSegment, CurveClass, PiecewiseCurve};
use crate::error::{Error, Result};

pub const HEADING_TOL: f64 = 1e-9;

/// Inserts a segment of length `σ_i` at arc length `s_i` for every insertion. The pairing
/// `p` must match equal lengths with opposite headings so the translations cancel.
pub fn graft(c: &PiecewiseCurve, insertions: &[(f64, f64)], pairing: &[usize]) -> Result<PiecewiseCurve> {
    c.validate()?;
    let m = insertions.len();
    if pairing.len() != m {
        return Err(Error::PairingViolation(format!("pairing has {} entries for {m} insertions", pairing.len())));
    }
    let mut seen = vec![false; m];
    for &j in pairing {
        if j >= m || std::mem::replace(&mut seen[j], true) {
            return Err(Error::PairingViolation("pairing is not a permutation".into()));
        }
    }
    let len = c.length();
    for &(s, sigma) in insertions {
        if !(0.0..=len).contains(&s) || !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(Error::PairingViolation(format!("insertion ({s}, {sigma}) outside the curve")));
        }
    }
    for (i, &j) in pairing.iter().enumerate() {
        let (si, gi) = insertions[i];
        let (sj, gj) = insertions[j];
        if gi != gj {
            return Err(Error::PairingViolation(format!("lengths {gi} and {gj} differ")));
        }
        if (c.tangent_at(si) + c.tangent_at(sj)).norm() > HEADING_TOL {
            return Err(Error::PairingViolation(format!("headings at {si} and {sj} are not opposite")));
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| insertions[b].0.partial_cmp(&insertions[a].0).unwrap());
    let mut out = c.clone();
    // Descending order keeps the earlier arc lengths valid after each insertion.
    for i in order {
        let (s, sigma) = insertions[i];
        if sigma > 0.0 {
            let at = out.split_at(s);
            out.segs.insert(at, ArcSegment::new(0.0, sigma));
        }
    }
    Ok(out)
}

/// Level crossing of the piecewise-linear turning function between arc lengths `a` and `b`.
fn crossing(c: &PiecewiseCurve, a: f64, b: f64, level: f64) -> Option<f64> {
    let thetas = c.breakpoint_thetas();
    let mut acc = 0.0;
    let mut pieces = Vec::new();
    for (seg, &t0) in c.segs.iter().zip(&thetas) {
        pieces.push((acc, acc + seg.len, t0, seg.kappa));
        acc += seg.len;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let mut hits: Vec<f64> = pieces
        .iter()
        .filter(|p| p.1 >= lo && p.0 <= hi && p.3 != 0.0)
        .filter_map(|&(s0, s1, t0, k)| {
            let s = s0 + (level - t0) / k;
            (s >= s0.max(lo) && s <= s1.min(hi)).then_some(s)
        })
        .collect();
    hits.sort_by(|x, y| (x - a).abs().partial_cmp(&(y - a).abs()).unwrap());
    hits.first().copied()
}

/// Pairs of arc lengths `(s, s′)` with opposite headings, found between the points of
/// minimal and maximal turning.
pub fn find_antipodal_pairs(c: &PiecewiseCurve) -> Result<Vec<(f64, f64)>> {
    c.validate()?;
    if c.class() != CurveClass::Diffuse {
        return Err(Error::NotDiffuse);
    }
    let thetas = c.breakpoint_thetas();
    let mut arcs = vec![0.0];
    for s in &c.segs {
        arcs.push(arcs.last().unwrap() + s.len);
    }
    let imin = (0..thetas.len()).min_by(|&i, &j| thetas[i].partial_cmp(&thetas[j]).unwrap()).unwrap();
    let imax = (0..thetas.len()).max_by(|&i, &j| thetas[i].partial_cmp(&thetas[j]).unwrap()).unwrap();
    let (tmin, tmax) = (thetas[imin], thetas[imax]);
    let (smin, smax) = (arcs[imin], arcs[imax]);
    let mut out = Vec::new();
    // A crossing of `tmin + π` pairs with the minimum, a crossing of `tmax − π` with the maximum.
    if let Some(s) = crossing(c, smin, smax, tmin + std::f64::consts::PI) {
        out.push((smin.min(s), smin.max(s)));
    }
    if let Some(s) = crossing(c, smax, smin, tmax - std::f64::consts::PI) {
        let pair = (smax.min(s), smax.max(s));
        if !out.iter().any(|p: &(f64, f64)| (p.0 - pair.0).abs() < 1e-12 && (p.1 - pair.1).abs() < 1e-12) {
            out.push(pair);
        }
    }
    if out.is_empty() {
        return Err(Error::NotDiffuse);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn zero_lengths_are_identity() {
        let c0 = PiecewiseCurve::from_pairs(&[(1.0, 1.5 * PI)]);
        let pairs = find_antipodal_pairs(&c0).unwrap();
        let (a, b) = pairs[0];
        let g = graft(&c0, &[(a, 0.0), (b, 0.0)], &[1, 0]).unwrap();
        assert_eq!(g, c0);
    }

    #[test]
    fn circle_arc_pair() {
        let c0 = PiecewiseCurve::from_pairs(&[(1.0, 1.5 * PI)]);
        let pairs = find_antipodal_pairs(&c0).unwrap();
        for (a, b) in &pairs {
            assert_abs_diff_eq!(b - a, PI, epsilon = 1e-12);
        }
        let (a, b) = pairs[0];
        let g = graft(&c0, &[(a, 2.0), (b, 2.0)], &[1, 0]).unwrap();
        assert_abs_diff_eq!(g.length(), c0.length() + 4.0, epsilon = 1e-12);
        assert!(g.end_frame().distance(&c0.end_frame()) < 1e-9);
    }

    #[test]
    fn mismatched_heading() {
        let c0 = PiecewiseCurve::from_pairs(&[(1.0, 1.5 * PI)]);
        assert!(matches!(graft(&c0, &[(0.0, 1.0), (1.0, 1.0)], &[1, 0]), Err(Error::PairingViolation(_))));
        assert!(matches!(graft(&c0, &[(0.0, 1.0), (PI, 2.0)], &[1, 0]), Err(Error::PairingViolation(_))));
    }

    #[test]
    fn condensed_rejected() {
        assert!(matches!(find_antipodal_pairs(&PiecewiseCurve::segment(2.0)), Err(Error::NotDiffuse)));
    }
}
