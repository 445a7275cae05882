//! Normal translation, dilation and the reduction of arbitrary curvature bounds and
//! end frames to one of three canonical forms.

use crate::curve::{reverse, ArcSegment, PiecewiseCurve};
use crate::error::{Error, Result};
use crate::geom::{Frame, C64, I};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignClass {
    /// κ1 < 0 < κ2.
    Neg,
    /// One bound is zero (a zero times an infinity counts as zero).
    Zero,
    /// Both bounds strictly on the same side of zero.
    Pos,
}

/// Curvature bounds `κ1 < κ2` on the extended real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    #[serde(with = "extended")]
    pub kappa1: f64,
    #[serde(with = "extended")]
    pub kappa2: f64,
}

/// Extended reals in JSON: finite values as numbers, infinities as `"+inf"` / `"-inf"`.
pub mod extended {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if *x == f64::INFINITY {
            s.serialize_str("+inf")
        } else if *x == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(*x)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => parse(&t).ok_or_else(|| de::Error::custom(format!("not a curvature: {t}"))),
        }
    }

    /// Accepts decimal numbers and `inf`, `+inf`, `-inf` (also spelled `infinity`).
    pub fn parse(t: &str) -> Option<f64> {
        match t.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => Some(f64::INFINITY),
            "-inf" | "-infinity" => Some(f64::NEG_INFINITY),
            other => other.parse::<f64>().ok().filter(|x| !x.is_nan()),
        }
    }
}

/// Radius of curvature with `1/±∞ = 0`.
pub fn rho(k: f64) -> f64 {
    if k.is_infinite() {
        0.0
    } else {
        1.0 / k
    }
}

impl Bounds {
    pub fn new(kappa1: f64, kappa2: f64) -> Result<Bounds> {
        if kappa1.is_nan() || kappa2.is_nan() || !(kappa1 < kappa2) {
            return Err(Error::InvalidBounds(kappa1, kappa2));
        }
        Ok(Bounds { kappa1, kappa2 })
    }

    pub fn symmetric(k: f64) -> Bounds {
        Bounds { kappa1: -k, kappa2: k }
    }

    pub fn rho1(&self) -> f64 {
        rho(self.kappa1)
    }

    pub fn rho2(&self) -> f64 {
        rho(self.kappa2)
    }

    pub fn sign_class(&self) -> SignClass {
        if self.kappa1 == 0.0 || self.kappa2 == 0.0 {
            SignClass::Zero
        } else if self.kappa1 < 0.0 && self.kappa2 > 0.0 {
            SignClass::Neg
        } else {
            SignClass::Pos
        }
    }

    pub fn is_unconstrained(&self) -> bool {
        self.kappa1 == f64::NEG_INFINITY && self.kappa2 == f64::INFINITY
    }

    pub fn contains(&self, k: f64) -> bool {
        self.kappa1 < k && k < self.kappa2
    }
}

/// Image of a curvature under normal translation by `u`.
pub fn translate_kappa(k: f64, u: f64) -> f64 {
    if k.is_infinite() {
        if u == 0.0 {
            k
        } else {
            -1.0 / u
        }
    } else {
        k / (1.0 - u * k)
    }
}

/// The closed interval of `u` with `1 - u·k > 0` for every `k` strictly inside the bounds.
pub fn admissible_u_interval(b: &Bounds) -> (f64, f64) {
    if b.kappa1 >= 0.0 {
        (f64::NEG_INFINITY, b.rho2())
    } else if b.kappa2 <= 0.0 {
        (b.rho1(), f64::INFINITY)
    } else {
        (b.rho1(), b.rho2())
    }
}

pub fn normal_translate(c: &PiecewiseCurve, u: f64) -> Result<PiecewiseCurve> {
    let mut segs = Vec::with_capacity(c.segs.len());
    for s in &c.segs {
        let f = 1.0 - u * s.kappa;
        if !(f > 0.0) {
            return Err(Error::InadmissibleU { u, kappa: s.kappa });
        }
        segs.push(ArcSegment::new(s.kappa / f, s.len * f));
    }
    Ok(PiecewiseCurve { start: translate_frame(&c.start, u), segs })
}

/// Moves a frame by `u` along its left normal.
pub fn translate_frame(f: &Frame, u: f64) -> Frame {
    Frame { p: f.p + I * f.w * u, w: f.w }
}

pub fn dilate(c: &PiecewiseCurve, scale: f64) -> PiecewiseCurve {
    assert!(scale > 0.0, "dilation factor must be positive");
    PiecewiseCurve {
        start: Frame { p: c.start.p * scale, w: c.start.w },
        segs: c.segs.iter().map(|s| ArcSegment::new(s.kappa / scale, s.len * scale)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "op")]
pub enum Transform {
    Reverse,
    NormalTranslate { u: f64 },
    Dilate { scale: f64 },
    LeftMultiply { frame: Frame },
}

impl Transform {
    pub fn apply_curve(&self, c: &PiecewiseCurve) -> Result<PiecewiseCurve> {
        Ok(match *self {
            Transform::Reverse => reverse(c),
            Transform::NormalTranslate { u } => normal_translate(c, u)?,
            Transform::Dilate { scale } => dilate(c, scale),
            Transform::LeftMultiply { frame } => {
                PiecewiseCurve { start: frame.mul(&c.start), segs: c.segs.clone() }
            }
        })
    }

    pub fn apply_frames(&self, (p, q): (Frame, Frame)) -> (Frame, Frame) {
        match *self {
            Transform::Reverse => (Frame { p: q.p, w: -q.w }, Frame { p: p.p, w: -p.w }),
            Transform::NormalTranslate { u } => (translate_frame(&p, u), translate_frame(&q, u)),
            Transform::Dilate { scale } => {
                (Frame { p: p.p * scale, w: p.w }, Frame { p: q.p * scale, w: q.w })
            }
            Transform::LeftMultiply { frame } => (frame.mul(&p), frame.mul(&q)),
        }
    }

    pub fn apply_bounds(&self, (k1, k2): (f64, f64)) -> (f64, f64) {
        match *self {
            Transform::Reverse => (-k2, -k1),
            Transform::NormalTranslate { u } => (translate_kappa(k1, u), translate_kappa(k2, u)),
            Transform::Dilate { scale } => (k1 / scale, k2 / scale),
            Transform::LeftMultiply { .. } => (k1, k2),
        }
    }

    pub fn inverse(&self) -> Transform {
        match *self {
            Transform::Reverse => Transform::Reverse,
            Transform::NormalTranslate { u } => Transform::NormalTranslate { u: -u },
            Transform::Dilate { scale } => Transform::Dilate { scale: 1.0 / scale },
            Transform::LeftMultiply { frame } => Transform::LeftMultiply { frame: frame.inv() },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CanonicalType {
    #[serde(rename = "(-1,1)")]
    Symmetric,
    #[serde(rename = "(0,+inf)")]
    Positive,
    #[serde(rename = "(1,+inf)")]
    AboveOne,
    #[serde(rename = "unconstrained")]
    Unconstrained,
}

impl CanonicalType {
    pub fn bounds(&self) -> Bounds {
        match self {
            CanonicalType::Symmetric => Bounds { kappa1: -1.0, kappa2: 1.0 },
            CanonicalType::Positive => Bounds { kappa1: 0.0, kappa2: f64::INFINITY },
            CanonicalType::AboveOne => Bounds { kappa1: 1.0, kappa2: f64::INFINITY },
            CanonicalType::Unconstrained => {
                Bounds { kappa1: f64::NEG_INFINITY, kappa2: f64::INFINITY }
            }
        }
    }
}

/// Which of the five reductions applies to a set of bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionCase {
    Straddle,
    PositivePair,
    ZeroBelow,
    NegativePair,
    ZeroAbove,
    Unconstrained,
}

pub fn reduction_case(b: &Bounds) -> ReductionCase {
    let (k1, k2) = (b.kappa1, b.kappa2);
    if b.is_unconstrained() {
        ReductionCase::Unconstrained
    } else if k1 < 0.0 && k2 > 0.0 {
        ReductionCase::Straddle
    } else if k1 > 0.0 {
        ReductionCase::PositivePair
    } else if k1 == 0.0 {
        ReductionCase::ZeroBelow
    } else if k2 < 0.0 {
        ReductionCase::NegativePair
    } else {
        ReductionCase::ZeroAbove
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationRecord {
    pub canonical_type: CanonicalType,
    pub case: ReductionCase,
    pub source: (Frame, Frame),
    pub bounds: Bounds,
    pub q0: Frame,
    pub turning_sign: f64,
    pub pipeline: Vec<Transform>,
}

impl NormalizationRecord {
    pub fn apply_frames(&self, pq: (Frame, Frame)) -> (Frame, Frame) {
        self.pipeline.iter().fold(pq, |acc, t| t.apply_frames(acc))
    }

    pub fn canonical_bounds(&self) -> Bounds {
        self.canonical_type.bounds()
    }
}

/// Endpoint of the reduced problem, computed directly from the closed-form expressions.
pub fn canonical_endpoint(p: &Frame, q: &Frame, b: &Bounds) -> Frame {
    let (r1, r2) = (b.rho1(), b.rho2());
    let (pp, w, qq, z) = (p.p, p.w, q.p, q.w);
    let d = qq - pp;
    match reduction_case(b) {
        ReductionCase::Straddle => Frame::new(
            w.conj() * (d + I * 0.5 * (r1 + r2) * (z - w)) * (2.0 / (r2 - r1)),
            z * w.conj(),
        ),
        ReductionCase::PositivePair => {
            Frame::new(w.conj() * (d + I * r2 * (z - w)) / (r1 - r2), z * w.conj())
        }
        ReductionCase::ZeroBelow => Frame::new(w.conj() * (d + I * r2 * (z - w)), z * w.conj()),
        ReductionCase::NegativePair => {
            Frame::new(z.conj() * (d + I * r1 * (z - w)) / (r1 - r2), w * z.conj())
        }
        ReductionCase::ZeroAbove => Frame::new(z.conj() * (d + I * r1 * (z - w)), w * z.conj()),
        ReductionCase::Unconstrained => p.inv().mul(q),
    }
}

/// Position of the reduced endpoint for bounds with κ1 < 0 < κ2.
pub fn q_hat(p: &Frame, q: &Frame, b: &Bounds) -> C64 {
    let (r1, r2) = (b.rho1(), b.rho2());
    p.w.conj() * ((q.p - p.p) + I * 0.5 * (r1 + r2) * (q.w - p.w)) * (2.0 / (r2 - r1))
}

fn straddle_like_pipeline(k1: f64, k2: f64) -> Vec<Transform> {
    let (r1, r2) = (rho(k1), rho(k2));
    let mut out = Vec::new();
    let push_u = |u: f64, out: &mut Vec<Transform>| {
        if u != 0.0 {
            out.push(Transform::NormalTranslate { u });
        }
    };
    if k1 < 0.0 && k2 > 0.0 {
        push_u(0.5 * (r1 + r2), &mut out);
        let k0 = 2.0 / (r2 - r1);
        if k0 != 1.0 {
            out.push(Transform::Dilate { scale: k0 });
        }
    } else if k1 > 0.0 {
        push_u(r2, &mut out);
        let s = 1.0 / (r1 - r2);
        if s != 1.0 {
            out.push(Transform::Dilate { scale: s });
        }
    } else {
        push_u(r2, &mut out);
    }
    out
}

pub fn canonicalize(p: &Frame, q: &Frame, b: &Bounds) -> Result<NormalizationRecord> {
    let b = Bounds::new(b.kappa1, b.kappa2)?;
    let case = reduction_case(&b);
    let (canonical_type, reversed) = match case {
        ReductionCase::Straddle => (CanonicalType::Symmetric, false),
        ReductionCase::PositivePair => (CanonicalType::AboveOne, false),
        ReductionCase::ZeroBelow => (CanonicalType::Positive, false),
        ReductionCase::NegativePair => (CanonicalType::AboveOne, true),
        ReductionCase::ZeroAbove => (CanonicalType::Positive, true),
        ReductionCase::Unconstrained => (CanonicalType::Unconstrained, false),
    };
    let mut pipeline = Vec::new();
    let mut k = (b.kappa1, b.kappa2);
    if reversed {
        pipeline.push(Transform::Reverse);
        k = Transform::Reverse.apply_bounds(k);
    }
    if case != ReductionCase::Unconstrained {
        pipeline.extend(straddle_like_pipeline(k.0, k.1));
    }
    let (start, _) = pipeline.iter().fold((*p, *q), |acc, t| t.apply_frames(acc));
    pipeline.push(Transform::LeftMultiply { frame: start.inv() });
    Ok(NormalizationRecord {
        canonical_type,
        case,
        source: (*p, *q),
        bounds: b,
        q0: canonical_endpoint(p, q, &b),
        turning_sign: if reversed { -1.0 } else { 1.0 },
        pipeline,
    })
}

pub fn transform_curve(c: &PiecewiseCurve, rec: &NormalizationRecord) -> Result<PiecewiseCurve> {
    rec.pipeline.iter().try_fold(c.clone(), |acc, t| t.apply_curve(&acc))
}

/// Maps a curve of the reduced problem back to the original bounds and frames.
pub fn untransform_curve(c: &PiecewiseCurve, rec: &NormalizationRecord) -> Result<PiecewiseCurve> {
    rec.pipeline.iter().rev().try_fold(c.clone(), |acc, t| t.inverse().apply_curve(&acc))
}
