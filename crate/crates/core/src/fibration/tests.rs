use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::grid::CheckConfig;
use crate::homotopy::{certify_homotopy, DHomotopy, HomotopyChain, Orientation, VerticalChain};
use crate::map::DMap;
use crate::path::DPath;
use crate::point::Point;
use crate::probe::ProbeSet;
use crate::space::{Carrier, DSpace, StandardKind};
use crate::{Alpha, Error, Verdict};

fn up_i() -> DSpace {
    DSpace::interval()
}

fn nat_r() -> DSpace {
    DSpace::standard(StandardKind::NaturalRn, 1).unwrap()
}

fn product() -> FibrationWitness {
    make_product_fibration(&up_i(), &nat_r())
}

fn ramp(space: &DSpace, a: f64, b: f64) -> DPath {
    DPath::new(space, vec![], move |t| Point::scalar(a + (b - a) * t))
}

fn semistationary(space: &DSpace, mode: Alpha, a: f64, b: f64) -> DPath {
    match mode {
        Alpha::Zero => DPath::new(space, vec![0.5], move |t| {
            Point::scalar(if t < 0.5 { a } else { a + (b - a) * (2.0 * t - 1.0) })
        }),
        Alpha::One => DPath::new(space, vec![0.5], move |t| {
            Point::scalar(if t < 0.5 { a + (b - a) * 2.0 * t } else { b })
        }),
    }
}

#[test]
fn product_pair_satisfies_contract() {
    let w = product();
    let cfg = CheckConfig::default();
    let probes: Vec<PointedPath> = [(Alpha::Zero, 0.1, 0.7, 2.0), (Alpha::One, 0.2, 0.9, -1.0)]
        .iter()
        .map(|&(m, a, b, c)| {
            let omega = semistationary(&up_i(), m, a, b);
            let e = Point::from_slice(&[if m == Alpha::Zero { a } else { b }, c]);
            PointedPath::new(e, omega, m, None)
        })
        .collect();
    let cert = check_lifting_pair(&w.pair, &w.p, &probes, &cfg).unwrap();
    assert!(cert.is_pass(), "{cert}");
}

#[test]
fn invalid_probe_is_an_error() {
    let w = product();
    let bad = PointedPath::new(Point::from_slice(&[0.5, 0.0]), ramp(&up_i(), 0.0, 1.0), Alpha::Zero, None);
    let err = check_lifting_pair(&w.pair, &w.p, &[bad], &CheckConfig::default()).unwrap_err();
    assert!(matches!(err, Error::InvalidProbe { index: 0, .. }));
}

#[test]
fn wedge_counterexample() {
    let cfg = CheckConfig::default();
    let (w, infeasible) = make_wedge_fibration(&cfg).unwrap();
    assert_eq!(infeasible.verdict, Verdict::Infeasible);
    assert_eq!(infeasible.max_violation, 1.0);
    assert_eq!(infeasible.witness.as_ref().unwrap().params, vec![0.0, 0.01]);

    let star = DSpace::standard(StandardKind::NaturalRn, 1).unwrap();
    let x = Point::scalar(0.0);
    let f_lift = DMap::constant(&star, w.total(), Point::from_slice(&[0.0, -1.0]));
    let phi = DHomotopy::new(&star, w.base(), vec![], |_, t| Point::scalar(t));
    let prob = LiftProblem::new(f_lift, phi, Alpha::Zero, vec![x.clone()]);
    let sol = weak_lift(&w, &prob, &cfg).unwrap();
    for t in cfg.grid.points() {
        let q = sol.phi_lift.eval(&x, t);
        assert!((q.coord(0) - t).abs() < 1e-12 && (q.coord(1) - t).abs() < 1e-12);
        let k = sol.vertical.chain.steps()[0].homotopy.eval(&x, t);
        assert!(k.coord(0).abs() < 1e-12 && (k.coord(1) - (t - 1.0)).abs() < 1e-12);
    }
    assert_eq!(sol.vertical.chain.steps()[0].orientation, Orientation::Backward);
    let cert = certify_lift(&w, &prob, &sol, &ProbeSet::points(vec![x]), &cfg);
    assert!(cert.is_pass(), "{cert}");
}

#[test]
fn wedge_feasible_start_has_no_contradiction() {
    let cfg = CheckConfig::default();
    let h = ramp(&wedge_spaces().1, 0.0, 1.0);
    let c = wedge_strict_infeasibility(&Point::from_slice(&[0.0, 1.0]), &h, &cfg);
    assert_eq!(c.verdict, Verdict::Pass);
}

#[test]
fn wedge_pair_contract_both_modes() {
    let cfg = CheckConfig::default();
    let (w, _) = make_wedge_fibration(&cfg).unwrap();
    let b = w.base().clone();
    let probes = vec![
        PointedPath::new(Point::from_slice(&[-1.0, -3.0]), semistationary(&b, Alpha::Zero, -1.0, 2.0), Alpha::Zero, None),
        PointedPath::new(Point::from_slice(&[2.0, 0.5]), semistationary(&b, Alpha::One, -1.0, 2.0), Alpha::One, None),
        PointedPath::new(Point::from_slice(&[0.0, -4.0]), semistationary(&b, Alpha::Zero, 0.0, 1.0), Alpha::Zero, None),
    ];
    let cert = check_lifting_pair(&w.pair, &w.p, &probes, &cfg).unwrap();
    assert!(cert.is_pass(), "{cert}");
}

fn round_trip(w: &FibrationWitness, f_lift: DMap, phi: DHomotopy, alpha: Alpha, probes: Vec<Point>) {
    let cfg = CheckConfig::default();
    let prob = LiftProblem::new(f_lift, phi, alpha, probes.clone());
    let sol = weak_lift(w, &prob, &cfg).unwrap();
    let ps = ProbeSet::points(probes);
    let cert = certify_lift(w, &prob, &sol, &ps, &cfg);
    assert!(cert.is_pass(), "{cert}");
    assert_eq!(sol.vertical.chain.len(), 1);
}

#[test]
fn weak_lift_round_trip_product_both_modes() {
    let w = product();
    let x = up_i();
    let f0 = DMap::new(&x, w.total(), |p| Point::from_slice(&[0.5 * p.coord(0), p.coord(0) - 3.0]));
    let phi0 = DHomotopy::new(&x, w.base(), vec![], |p, t| Point::scalar(0.5 * p.coord(0) + 0.5 * t * t));
    round_trip(&w, f0, phi0, Alpha::Zero, vec![Point::scalar(0.0), Point::scalar(0.4), Point::scalar(1.0)]);
    let f1 = DMap::new(&x, w.total(), |p| Point::from_slice(&[0.5 + 0.5 * p.coord(0), 1.0]));
    let phi1 = DHomotopy::new(&x, w.base(), vec![], |p, t| Point::scalar((0.5 + 0.5 * p.coord(0)) * t));
    round_trip(&w, f1, phi1, Alpha::One, vec![Point::scalar(0.0), Point::scalar(0.7)]);
}

#[test]
fn weak_lift_round_trip_wedge_upper() {
    let cfg = CheckConfig::default();
    let (w, _) = make_wedge_fibration(&cfg).unwrap();
    let x = up_i();
    let f1 = DMap::new(&x, w.total(), |p| Point::from_slice(&[1.0 + p.coord(0), 2.0]));
    let phi = DHomotopy::new(&x, w.base(), vec![], |p, t| Point::scalar(-1.0 + (2.0 + p.coord(0)) * t));
    round_trip(&w, f1, phi, Alpha::One, vec![Point::scalar(0.0), Point::scalar(0.5), Point::scalar(1.0)]);
}

#[test]
fn lift_semistationary_rejects_moving_homotopy() {
    let w = product();
    let x = up_i();
    let f = DMap::new(&x, w.total(), |p| Point::from_slice(&[0.0, p.coord(0)]));
    let phi = DHomotopy::new(&x, w.base(), vec![], |_, t| Point::scalar(t));
    let prob = LiftProblem::new(f, phi, Alpha::Zero, vec![Point::scalar(0.3)]);
    let err = lift_semistationary(&w, &prob, &CheckConfig::default()).unwrap_err();
    assert!(matches!(err, Error::NotSemistationary { side: "lower", .. }));
}

#[test]
fn face_precondition_is_enforced() {
    let w = product();
    let x = up_i();
    let f = DMap::new(&x, w.total(), |_| Point::from_slice(&[0.2, 0.0]));
    let phi = DHomotopy::new(&x, w.base(), vec![], |_, t| Point::scalar(t));
    let prob = LiftProblem::new(f, phi, Alpha::Zero, vec![Point::scalar(0.3)]);
    assert!(matches!(weak_lift(&w, &prob, &CheckConfig::default()), Err(Error::Precondition { .. })));
}

#[test]
fn strict_from_weak_has_exact_face() {
    let cfg = CheckConfig::default();
    let (w, _) = make_wedge_fibration(&cfg).unwrap();
    let star = nat_r();
    let x = Point::scalar(0.0);
    for (alpha, e, path) in [
        (Alpha::Zero, [0.0, -1.0], semistationary(w.base(), Alpha::Zero, 0.0, 1.0)),
        (Alpha::One, [1.0, 3.0], semistationary(w.base(), Alpha::One, -2.0, 1.0)),
    ] {
        let f = DMap::constant(&star, w.total(), Point::from_slice(&e));
        let pth = path.clone();
        let phi = DHomotopy::new(&star, w.base(), vec![0.5], move |_, t| pth.eval(t));
        let prob = LiftProblem::new(f, phi.clone(), alpha, vec![x.clone()]);
        let strict = strict_from_weak(&w, &prob, &cfg).unwrap();
        assert!(certify_strict_face(&prob, &strict, &cfg).is_pass());
        assert!(certify_projection(&w.p, &phi, &strict, &[x.clone()], &cfg).is_pass());
        let c = certify_homotopy(&strict, &ProbeSet::points(vec![x.clone()]), &cfg);
        assert!(c.is_pass(), "{c}");
    }
}

#[test]
fn pair_from_product_strict_lifter_matches_closed_form() {
    let cfg = CheckConfig::default();
    let w = product();
    let strict = product_strict_lifter(&up_i(), &nat_r());
    let omega = semistationary(&up_i(), Alpha::Zero, 0.2, 0.8);
    let probe = PointedPath::new(Point::from_slice(&[0.2, 5.0]), omega, Alpha::Zero, None);
    let (pair, cert) = semistationary_pair_from_lifter(&w.p, &strict, &[probe.clone()], &cfg).unwrap();
    assert!(cert.is_pass(), "{cert}");
    assert!(pair.lift(&probe).distance(&w.pair.lift(&probe)) < 1e-12);
}

#[test]
fn epsilon_pair_contract() {
    let cfg = CheckConfig::default();
    let (w, _) = make_wedge_fibration(&cfg).unwrap();
    for eps in [0.1, 0.9] {
        let pair = epsilon_pair(&w, eps).unwrap();
        let b = w.base().clone();
        let lower = DPath::new(&b, vec![eps], move |t| Point::scalar(if t < eps { 0.0 } else { (t - eps) / (1.0 - eps) }));
        let upper = DPath::new(&b, vec![eps], move |t| Point::scalar(if t < eps { t / eps - 1.0 } else { 0.0 }));
        let probes = vec![
            PointedPath::new(Point::from_slice(&[0.0, -1.0]), lower, Alpha::Zero, None),
            PointedPath::new(Point::from_slice(&[0.0, -2.0]), upper, Alpha::One, None),
        ];
        let cert = check_lifting_pair(&pair, &w.p, &probes, &cfg).unwrap();
        assert!(cert.is_pass(), "eps {eps}: {cert}");
    }
}

#[test]
fn pullback_along_cubic() {
    let cfg = CheckConfig::nonlinear();
    let w = product();
    let f = DMap::new(&up_i(), &up_i(), |p| Point::scalar(p.coord(0).powi(3)));
    let pb = pullback_fibration(&w, &f, &[ramp(&up_i(), 0.0, 1.0)], &cfg).unwrap();
    let omega = semistationary(&up_i(), Alpha::One, 0.1, 0.9);
    let e = Point::from_slice(&[0.9, 0.729, 4.0]);
    assert!(pb.total().defect(&e) < 1e-12);
    let probe = PointedPath::new(e, omega, Alpha::One, None);
    let cert = check_lifting_pair(&pb.pair, &pb.p, &[probe], &cfg).unwrap();
    assert!(cert.is_pass(), "{cert}");
    let not_dmap = DMap::new(&up_i(), &up_i(), |p| Point::scalar(1.0 - p.coord(0)));
    assert!(pullback_fibration(&w, &not_dmap, &[ramp(&up_i(), 0.0, 1.0)], &cfg).is_err());
}

#[test]
fn opposite_of_wedge() {
    let cfg = CheckConfig::default();
    let (w, _) = make_wedge_fibration(&cfg).unwrap();
    let op = opposite_fibration(&w);
    let b = op.base().clone();
    let down = DPath::new(&b, vec![0.5], |t| Point::scalar(if t < 0.5 { 1.0 } else { 1.0 - 2.0 * (2.0 * t - 1.0) }));
    let probe = PointedPath::new(Point::from_slice(&[1.0, 0.5]), down, Alpha::Zero, None);
    let cert = check_lifting_pair(&op.pair, &op.p, &[probe], &cfg).unwrap();
    assert!(cert.is_pass(), "{cert}");
}

#[test]
fn max_structure_on_plane() {
    let cfg = CheckConfig::default();
    let base = DSpace::standard(StandardKind::DirectedRn, 1).unwrap();
    let plane = DSpace::standard(StandardKind::NaturalRn, 2).unwrap();
    let lift: LiftFn = {
        let plane = plane.clone();
        alloc::sync::Arc::new(move |e: &Point, w: &DPath| {
            let (y, w) = (e.coord(1), w.clone());
            DPath::new(&plane, w.breakpoints().to_vec(), move |t| Point::from_slice(&[w.eval(t).coord(0), y]))
        })
    };
    let pair = LiftingPair::new(Flavor::Strict, lift.clone(), lift);
    let probe = PointedPath::new(Point::from_slice(&[0.0, 7.0]), ramp(&base, 0.0, 2.0), Alpha::Zero, None);
    let (w, cert) = max_structure_fibration(
        Carrier::euclidean(2),
        alloc::sync::Arc::new(|q: &Point| Point::scalar(q.coord(0))),
        &base,
        &pair,
        &[probe],
        &cfg,
    )
    .unwrap();
    assert!(cert.is_pass(), "{cert}");
    let bad = DPath::new(w.total(), vec![], |t| Point::from_slice(&[-t, 0.0]));
    assert!(!crate::path::certify_directed_path(w.total(), &bad, &cfg).is_pass());
}

#[test]
fn dominated_and_reversed_lifts() {
    let cfg = CheckConfig::default();
    let w = product();
    let x = up_i();
    let probes = vec![Point::scalar(0.0), Point::scalar(1.0)];
    let f = DMap::new(&x, w.total(), |p| Point::from_slice(&[0.0, p.coord(0)]));
    let phi = DHomotopy::new(&x, w.base(), vec![], |_, t| Point::scalar(t));
    let prob = LiftProblem::new(f.clone(), phi.clone(), Alpha::Zero, probes.clone());
    let dom = self_domination(&w);
    let sol = dominated_lift(&w, &w.p, &dom, &prob, &cfg).unwrap();
    assert!(certify_lift(&w, &prob, &sol, &ProbeSet::points(probes.clone()), &cfg).is_pass());

    let moved = transport_lift(&w, &f, &phi, Alpha::Zero, &probes, &cfg).unwrap();
    assert_eq!(moved.apply(&Point::scalar(0.5)).coords(), &[1.0, 0.5]);

    let g = DMap::new(&x, w.total(), |p| Point::from_slice(&[1.0, p.coord(0)]));
    let psi = DHomotopy::new(&x, w.base(), vec![], |_, t| Point::scalar(1.0 - t)).time_reversed(true);
    let rsol = reversed_lift(&w, &g, &psi, Alpha::Zero, &probes, &cfg).unwrap();
    let q = rsol.phi_lift.eval(&Point::scalar(0.25), 0.75);
    assert!((q.coord(0) - 0.25).abs() < 1e-12);
    assert!(rsol.phi_lift.is_time_reversed());
    let c = certify_homotopy(&rsol.phi_lift, &ProbeSet::points(probes), &cfg);
    assert!(c.is_pass(), "{c}");
    let _ = VerticalChain { chain: HomotopyChain::stationary(&g), base: w.p.clone(), anchor: g };
}
