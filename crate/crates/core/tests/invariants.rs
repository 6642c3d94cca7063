use dirfib_core::fibration::{check_lifting_pair, make_product_fibration, PointedPath};
use dirfib_core::homotopy::{smooth, theta_warp, DHomotopy, Side};
use dirfib_core::{certify_directed_path, Alpha, CheckConfig, DPath, DSpace, Point, SampleGrid, StandardKind};
use proptest::prelude::*;

fn directed_square() -> DSpace {
    DSpace::standard(StandardKind::DirectedIn, 2).unwrap()
}

fn ramp(space: &DSpace, a: [f64; 2], b: [f64; 2]) -> DPath {
    DPath::new(space, vec![], move |t| Point::from_slice(&[a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t]))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn grid_is_sorted_and_covers_mandatory(n in 2usize..300) {
        let g = SampleGrid::new(n).unwrap();
        let pts = g.points();
        prop_assert!(pts.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(pts[0], 0.0);
        prop_assert_eq!(*pts.last().unwrap(), 1.0);
        for m in [0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0] {
            prop_assert!(pts.iter().any(|&p| p == m));
        }
    }

    #[test]
    fn monotone_segment_is_directed(a in prop::array::uniform2(0.0..0.5f64), d in prop::array::uniform2(0.0..0.5f64)) {
        let s = directed_square();
        let p = ramp(&s, a, [a[0] + d[0], a[1] + d[1]]);
        prop_assert!(certify_directed_path(&s, &p, &CheckConfig::default()).is_pass());
    }

    #[test]
    fn opposite_reverses_directedness(a in prop::array::uniform2(0.0..0.5f64), d in prop::array::uniform2(0.01..0.5f64)) {
        let s = directed_square();
        let op = DSpace::opposite(&s);
        let p = ramp(&s, a, [a[0] + d[0], a[1] + d[1]]);
        let cfg = CheckConfig::default();
        prop_assert!(!certify_directed_path(&op, &p.retag(&op), &cfg).is_pass());
        prop_assert!(certify_directed_path(&op, &p.opposite(), &cfg).is_pass());
        let twice = p.opposite().opposite();
        prop_assert!(twice.distance(&p) < 1e-15);
        let op2 = DSpace::opposite(&op);
        prop_assert!(certify_directed_path(&op2, &p.retag(&op2), &cfg).is_pass());
    }

    #[test]
    fn theta_round_trip(eps in 0.01..0.99f64, t in 0.0..=1.0f64) {
        let w = theta_warp(eps).unwrap();
        prop_assert!((w.inverse.eval(w.forward.eval(t)) - t).abs() < 1e-12);
        prop_assert!((w.forward.eval(w.inverse.eval(t)) - t).abs() < 1e-12);
        prop_assert!((w.forward.eval(0.5) - eps).abs() < 1e-15);
    }

    #[test]
    fn smoothing_keeps_faces(c in 0.0..1.0f64, k in 0.0..1.0f64) {
        let s = DSpace::standard(StandardKind::NaturalIn, 1).unwrap();
        let phi = DHomotopy::new(&s, &s, vec![], move |x, t| Point::scalar(x.coord(0) * (1.0 - k * t)));
        let x = Point::scalar(c);
        for side in [Side::Lower, Side::Upper] {
            let sm = smooth(&phi, side);
            prop_assert!(sm.eval(&x, 0.0).distance(&phi.eval(&x, 0.0)) < 1e-15);
            prop_assert!(sm.eval(&x, 1.0).distance(&phi.eval(&x, 1.0)) < 1e-15);
        }
        let lo = smooth(&phi, Side::Lower);
        prop_assert!(lo.eval(&x, 0.25).distance(&x) < 1e-15);
        let up = smooth(&phi, Side::Upper);
        prop_assert!(up.eval(&x, 0.75).distance(&phi.eval(&x, 1.0)) < 1e-15);
    }

    #[test]
    fn product_pair_contract(b0 in 0.0..0.5f64, db in 0.0..0.5f64, c in 0.0..1.0f64, up in any::<bool>()) {
        let w = make_product_fibration(&DSpace::interval(), &DSpace::standard(StandardKind::NaturalIn, 1).unwrap());
        let base = w.base().clone();
        let omega = DPath::new(&base, vec![0.5], move |t| {
            let u = if up { (2.0 * t).min(1.0) } else { (2.0 * t - 1.0).max(0.0) };
            Point::scalar(b0 + db * u)
        });
        let (mode, anchor) = if up { (Alpha::One, b0 + db) } else { (Alpha::Zero, b0) };
        let probe = PointedPath::new(Point::from_slice(&[anchor, c]), omega, mode, None);
        let cert = check_lifting_pair(&w.pair, &w.p, &[probe], &CheckConfig::default()).unwrap();
        prop_assert!(cert.is_pass(), "{}", cert);
    }
}
