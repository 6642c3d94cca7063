use alloc::sync::Arc;
use alloc::vec::Vec;

use super::pair::{check_lifting_pair, Flavor, LiftFn, LiftingPair};
use super::pointed::PointedPath;
use super::lift::semistationary_pair_from_lifter;
use super::witness::{FibrationWitness, LiftProblem, StrictLifter};
use crate::certificate::{Certificate, Witness};
use crate::grid::CheckConfig;
use crate::homotopy::DHomotopy;
use crate::map::{certify_dmap, DMap, MapFn};
use crate::path::DPath;
use crate::point::Point;
use crate::space::{Carrier, DSpace, Sample, StandardKind};
use crate::{Alpha, Error, Result};

fn projection(e: &DSpace, b: &DSpace) -> DMap {
    let (d, c) = (b.dim(), b.curves());
    DMap::new(e, b, move |x| x.split_at(d, c).0)
}

/// `B × F → B` with `λ^s_α((b, f), ω)(t) = (ω(t), f)`.
pub fn make_product_fibration(base: &DSpace, fiber: &DSpace) -> FibrationWitness {
    let e = DSpace::product(base, fiber);
    let p = projection(&e, base);
    let (d, c) = (base.dim(), base.curves());
    let lift: LiftFn = {
        let e = e.clone();
        Arc::new(move |pt, omega| {
            let f = pt.split_at(d, c).1;
            let w = omega.clone();
            DPath::new(&e, omega.breakpoints().to_vec(), move |t| w.eval(t).concat(&f))
        })
    };
    let pair = LiftingPair::new(Flavor::Semistationary, lift.clone(), lift);
    let mut w = FibrationWitness::new(p, pair, alloc::format!("product {} × {}", base.label(), fiber.label()));
    if let Some((b0, i)) = base.factors() {
        if base.tag() == crate::space::StructureTag::Cylinder && i.dim() == 1 {
            w = w.with_cylinder_base(b0.dim());
        }
    }
    w
}

/// The product's strict lifter `φ'(x, t) = (φ(x, t), fiber(f'(x)))`.
pub fn product_strict_lifter(base: &DSpace, fiber: &DSpace) -> StrictLifter {
    let e = DSpace::product(base, fiber);
    let (d, c) = (base.dim(), base.curves());
    Arc::new(move |prob: &LiftProblem, _cfg: &CheckConfig| {
        let (f, phi) = (prob.f_lift.clone(), prob.phi.clone());
        Ok(DHomotopy::new(prob.phi.source(), &e, prob.phi.t_breakpoints().to_vec(), move |x, t| {
            phi.eval(x, t).concat(&f.apply(x).split_at(d, c).1)
        }))
    })
}

/// Identity fibration `B → B` with `λ(b, ω) = ω`.
pub fn identity_fibration(base: &DSpace) -> FibrationWitness {
    let lift: LiftFn = Arc::new(|_, omega| omega.clone());
    FibrationWitness::new(
        DMap::identity(base),
        LiftingPair::new(Flavor::Semistationary, lift.clone(), lift),
        alloc::format!("identity on {}", base.label()),
    )
}

/// The wedge `E = {(x, y) : xy ≥ 0} ⊂ ↑R × R` over `↑R`, `p(x, y) = x`.
pub fn wedge_spaces() -> (DSpace, DSpace) {
    let up = DSpace::standard(StandardKind::DirectedRn, 1).expect("n = 1");
    let r = DSpace::standard(StandardKind::NaturalRn, 1).expect("n = 1");
    let e = DSpace::subspace(&DSpace::product(&up, &r), "wedge", Arc::new(|q: &Point| -q.coord(0) * q.coord(1)));
    (e, up)
}

/// Lifter for semistationary problems over the wedge: on the stationary
/// half slide `y` to `x`, then follow the diagonal.
pub fn wedge_strict_lifter() -> StrictLifter {
    let (e, _) = wedge_spaces();
    Arc::new(move |prob: &LiftProblem, _cfg: &CheckConfig| {
        let (f, phi) = (prob.f_lift.clone(), prob.phi.clone());
        let mut bps = alloc::vec![0.5];
        bps.extend_from_slice(prob.phi.t_breakpoints());
        let h = match prob.alpha {
            Alpha::Zero => DHomotopy::new(prob.phi.source(), &e, bps, move |x, t| {
                let q = f.apply(x);
                let (x0, y0) = (q.coord(0), q.coord(1));
                if t < 0.5 {
                    let s = 2.0 * t;
                    Point::new(alloc::vec![x0, (1.0 - s) * y0 + s * x0])
                } else {
                    let b = phi.eval(x, t).coord(0);
                    Point::new(alloc::vec![b, b])
                }
            }),
            Alpha::One => DHomotopy::new(prob.phi.source(), &e, bps, move |x, t| {
                if t < 0.5 {
                    let b = phi.eval(x, t).coord(0);
                    Point::new(alloc::vec![b, b])
                } else {
                    let q = f.apply(x);
                    let (x1, y1) = (q.coord(0), q.coord(1));
                    let s = 2.0 * t - 1.0;
                    Point::new(alloc::vec![x1, (1.0 - s) * x1 + s * y1])
                }
            }),
        };
        Ok(h)
    })
}

/// Wedge weak fibration; its pair is derived from [`wedge_strict_lifter`].
/// The certificate records that the point `(0, -1)` over `t ↦ t` has no strict lift.
pub fn make_wedge_fibration(cfg: &CheckConfig) -> Result<(FibrationWitness, Certificate)> {
    let (e, b) = wedge_spaces();
    let p = DMap::new(&e, &b, |q| Point::scalar(q.coord(0)));
    let (pair, _) = semistationary_pair_from_lifter(&p, &wedge_strict_lifter(), &[], cfg)?;
    let h = DPath::new(&b, Vec::new(), |t| Point::scalar(t));
    let cert = wedge_strict_infeasibility(&Point::from_slice(&[0.0, -1.0]), &h, cfg);
    Ok((FibrationWitness::new(p, pair, "wedge {xy ≥ 0} over ↑R"), cert))
}

/// Decides whether `h` lifts strictly from `e0` in the wedge. A strict lift
/// has `x(t) = h(t)`, and `h(t) > 0` forces `y(t) ≥ 0`; starting from `x0 = 0`,
/// `y0 < 0` this is a jump of at least `|y0|` before the first grid point.
pub fn wedge_strict_infeasibility(e0: &Point, h: &DPath, cfg: &CheckConfig) -> Certificate {
    const CONTRACT: &str = "strict lift in the wedge";
    let (x0, y0) = (e0.coord(0), e0.coord(1));
    let start_gap = (h.eval(0.0).coord(0) - x0).abs();
    if start_gap > cfg.tol {
        return Certificate::failure(CONTRACT, cfg.tol, alloc::format!("h(0) differs from x0 by {start_gap:e}"));
    }
    if x0.abs() <= cfg.tol && y0 < -cfg.tol {
        let grid = cfg.grid.points_with(h.breakpoints());
        if let Some(&t1) = grid.iter().find(|&&t| t > 0.0 && h.eval(t).coord(0) > cfg.tol) {
            let x1 = h.eval(t1).coord(0);
            let note = alloc::format!("x({t1}) = {x1} > 0 forces y({t1}) ≥ 0 but y(0) = {y0}");
            return Certificate::infeasible(CONTRACT, -y0, cfg.tol, Witness::new(alloc::vec![0.0, t1], alloc::vec![x1, 0.0], note));
        }
    }
    Certificate::pass(CONTRACT, cfg.tol)
}

/// The maximal d-structure on `E` making `p` a d-map: a path is directed
/// when its image is directed in `B`. The supplied pair is re-tagged into
/// the new space and re-certified on `probes`.
pub fn max_structure_fibration(
    carrier: Carrier,
    p: MapFn,
    base: &DSpace,
    pair: &LiftingPair,
    probes: &[PointedPath],
    cfg: &CheckConfig,
) -> Result<(FibrationWitness, Certificate)> {
    let (pf, b) = (p.clone(), base.clone());
    let oracle = Arc::new(move |sample: &Sample| {
        let image: Vec<(f64, Point)> = sample.iter().map(|(t, q)| (*t, pf(q))).collect();
        b.oracle_violation(&image)
    });
    let e = DSpace::custom(carrier, alloc::format!("max structure over {}", base.label()), oracle);
    let pmap = DMap::from_arc(&e, base, p);
    let retag = |mode: Alpha| -> LiftFn {
        let (l, e) = (pair.lifter(mode), e.clone());
        Arc::new(move |x, w| l(x, w).retag(&e))
    };
    let new_pair = LiftingPair::new(pair.flavor(), retag(Alpha::Zero), retag(Alpha::One));
    let cert = check_lifting_pair(&new_pair, &pmap, probes, cfg)?;
    Ok((FibrationWitness::new(pmap, new_pair, "maximal d-structure"), cert))
}

/// Pullback of `w` along `f: B' → B`. Points of `E_f` are `(b', e)`; lifts
/// are `(ω'(t), λ^s_α(e, f∘ω')(t))`. `f` is certified on `probes` first.
pub fn pullback_fibration(w: &FibrationWitness, f: &DMap, probes: &[DPath], cfg: &CheckConfig) -> Result<FibrationWitness> {
    let c = certify_dmap(f, probes, cfg);
    if !c.is_pass() {
        return Err(Error::Precondition { contract: "f is a d-map".into(), violation: c.max_violation });
    }
    let b2 = f.source().clone();
    let (d, cc) = (b2.dim(), b2.curves());
    let (ff, pp) = (f.clone(), w.p.clone());
    let e = DSpace::subspace(
        &DSpace::product(&b2, w.total()),
        alloc::format!("pullback along {}", f.source().label()),
        Arc::new(move |q: &Point| {
            let (b, e) = q.split_at(d, cc);
            ff.apply(&b).distance(&pp.apply(&e))
        }),
    );
    let p = DMap::new(&e, &b2, move |q| q.split_at(d, cc).0);
    let lifter = |mode: Alpha| -> LiftFn {
        let (l, f, e) = (w.pair.lifter(mode), f.clone(), e.clone());
        Arc::new(move |q, omega| {
            let upstairs = q.split_at(d, cc).1;
            let lifted = l(&upstairs, &f.apply_path(omega));
            let w2 = omega.clone();
            let mut bps = omega.breakpoints().to_vec();
            bps.extend_from_slice(lifted.breakpoints());
            DPath::new(&e, bps, move |t| w2.eval(t).concat(&lifted.eval(t)))
        })
    };
    let pair = LiftingPair::new(w.pair.flavor(), lifter(Alpha::Zero), lifter(Alpha::One));
    Ok(FibrationWitness::new(p, pair, alloc::format!("pullback of ({})", w.provenance)))
}

/// `p^op: E^op → B^op` with `(λ^op)_α(e, ω) = (λ_{1-α}(e, ω^op))^op`.
pub fn opposite_fibration(w: &FibrationWitness) -> FibrationWitness {
    let (e_op, b_op) = (DSpace::opposite(w.total()), DSpace::opposite(w.base()));
    let p = w.p.retag(&e_op, &b_op);
    let b = w.base().clone();
    let lifter = |mode: Alpha| -> LiftFn {
        let (l, e_op, b) = (w.pair.lifter(mode.flip()), e_op.clone(), b.clone());
        Arc::new(move |x, omega| l(x, &omega.reversed().retag(&b)).reversed().retag(&e_op))
    };
    let flavor = match w.pair.flavor() {
        Flavor::Epsilon(e) => Flavor::Epsilon(1.0 - e),
        f => f,
    };
    let pair = LiftingPair::new(flavor, lifter(Alpha::Zero), lifter(Alpha::One));
    let mut out = FibrationWitness::new(p, pair, alloc::format!("opposite of ({})", w.provenance));
    out.cylinder_base = None;
    out
}
