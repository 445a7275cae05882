use curvspace::components::{component_count, same_component};
use curvspace::curve::{concat, reverse, ArcSegment, PiecewiseCurve, Variant};
use curvspace::deform::eights::{attach_eight, AttachKind};
use curvspace::geom::{Frame, C64};
use curvspace::io::{curve_from_json, curve_to_json, svg_document};
use curvspace::normalize::{normal_translate, translate_frame, Bounds};
use proptest::prelude::*;
use std::f64::consts::PI;

fn frame() -> impl Strategy<Value = Frame> {
    (-10.0..10.0f64, -10.0..10.0f64, -PI..PI).prop_map(|(x, y, t)| Frame::from_angle(C64::new(x, y), t))
}

fn curve_from(start: impl Strategy<Value = Frame>, kmax: f64) -> impl Strategy<Value = PiecewiseCurve> {
    (start, prop::collection::vec((-kmax..kmax, 0.01..2.0f64), 1..7))
        .prop_map(|(f, s)| PiecewiseCurve::new(f, s.into_iter().map(|(k, l)| ArcSegment::new(k, l)).collect()).unwrap())
}

fn curve() -> impl Strategy<Value = PiecewiseCurve> {
    curve_from(frame(), 3.0)
}

proptest! {
    #[test]
    fn end_frame_factorizes_over_concatenation(a in curve(), tail in curve()) {
        let b = PiecewiseCurve { start: a.end_frame(), segs: tail.segs.clone() };
        let ab = concat(&a, &b).unwrap();
        prop_assert!(ab.end_frame().distance(&b.end_frame()) < 1e-9);
        // The end frame is the start frame times the product of the segment motions.
        let moved = a.segs.iter().chain(&b.segs).fold(a.start, |f, s| f.mul(&s.motion()));
        prop_assert!(ab.end_frame().distance(&moved) < 1e-9);
    }

    #[test]
    fn turning_is_additive(a in curve(), tail in curve()) {
        let b = PiecewiseCurve { start: a.end_frame(), segs: tail.segs };
        let ab = concat(&a, &b).unwrap();
        prop_assert!((ab.total_turning() - a.total_turning() - b.total_turning()).abs() < 1e-12);
    }

    #[test]
    fn reversal_swaps_ends(c in curve()) {
        let r = reverse(&c);
        let turned = Frame::new(c.start.p, -c.start.w);
        prop_assert!(r.end_frame().distance(&turned) < 1e-9);
        prop_assert!((r.total_turning() + c.total_turning()).abs() < 1e-12);
        prop_assert_eq!(reverse(&r).segs, c.segs);
    }

    #[test]
    fn rigid_motion_keeps_class(c in curve(), g in frame()) {
        let moved = PiecewiseCurve { start: g.mul(&c.start), segs: c.segs.clone() };
        prop_assert_eq!(moved.class(), c.class());
        prop_assert!((moved.total_turning() - c.total_turning()).abs() < 1e-12);
        prop_assert!(moved.end_frame().distance(&g.mul(&c.end_frame())) < 1e-9);
    }

    #[test]
    fn normal_translation_round_trip(c in curve_from(frame(), 1.0), u in -0.9..0.9f64) {
        let t = normal_translate(&c, u).unwrap();
        prop_assert!(t.end_frame().distance(&translate_frame(&c.end_frame(), u)) < 1e-9);
        prop_assert!((t.total_turning() - c.total_turning()).abs() < 1e-12);
        let back = normal_translate(&t, -u).unwrap();
        for (x, y) in back.segs.iter().zip(&c.segs) {
            prop_assert!((x.kappa - y.kappa).abs() < 1e-12 && (x.len - y.len).abs() < 1e-12);
        }
        prop_assert!(back.start.distance(&c.start) < 1e-12);
    }

    #[test]
    fn same_component_is_an_equivalence(a in curve_from(Just(Frame::IDENTITY), 0.99), t0 in 0.3..0.7f64) {
        let bnd = Bounds::symmetric(1.0);
        // Loops and eights keep the end frame, so these all join the same two frames.
        let eight = attach_eight(&a, 1, t0, 0.1, AttachKind::Eight).unwrap();
        let looped = attach_eight(&a, 1, t0, 0.1, AttachKind::Loop).unwrap();
        let both = attach_eight(&looped, 1, 0.5, 0.05, AttachKind::Eight).unwrap();
        let family = [a, eight, looped, both];
        let rel = |i: usize, j: usize| same_component(&family[i], &family[j], &bnd).unwrap();
        for i in 0..4 {
            prop_assert!(rel(i, i));
            for j in 0..4 {
                prop_assert_eq!(rel(i, j), rel(j, i));
                for k in 0..4 {
                    prop_assert!(!(rel(i, j) && rel(j, k)) || rel(i, k));
                }
            }
        }
        prop_assert!(!rel(0, 2));
    }

    #[test]
    fn count_is_invariant_under_rigid_motion(q in frame(), g in frame(), turns in -1i64..=1) {
        let b = Bounds::symmetric(1.0);
        let theta1 = curvspace::components::turning_for(&Frame::IDENTITY, &q, turns);
        let base = component_count(&Frame::IDENTITY, &q, &b, theta1, Variant::Open).unwrap();
        let moved = component_count(&g, &g.mul(&q), &b, theta1, Variant::Open).unwrap();
        prop_assert_eq!(base.count, moved.count);
    }

    #[test]
    fn json_round_trip(c in curve()) {
        let back = curve_from_json(&curve_to_json(&c)).unwrap();
        prop_assert_eq!(&back.segs, &c.segs);
        prop_assert_eq!(back.start.p, c.start.p);
        prop_assert!((back.start.w - c.start.w).norm() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn svg_has_one_path_per_polyline(lines in prop::collection::vec(prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 1..20), 0..6)) {
        let lines: Vec<Vec<C64>> = lines.into_iter().map(|l| l.into_iter().map(|(x, y)| C64::new(x, y)).collect()).collect();
        let svg = svg_document(&lines);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        prop_assert_eq!(doc.descendants().filter(|n| n.has_tag_name("path")).count(), lines.len());
    }
}
