use alloc::vec::Vec;

use super::pack::EquivalencePack;
use crate::fibration::{pointed_path_space, split_pointed, FibrationWitness, Flavor, PointedPath, Window};
use crate::homotopy::{shape_path, theta_warp, DHomotopy, HomotopyChain, ShapeKind};
use crate::map::DMap;
use crate::path::{DPath, IntervalMap};
use crate::point::Point;
use crate::space::DSpace;
use crate::{Alpha, Result};

/// Two pointed-path spaces and an equivalence between them.
#[derive(Clone, Debug)]
pub struct PathSpaceEquivalence {
    pub source: DSpace,
    pub target: DSpace,
    pub pack: EquivalencePack,
}

fn pt(e: Point, omega: DPath) -> Point {
    PointedPath::new(e, omega, Alpha::Zero, None).to_point()
}

fn shape(kind: ShapeKind, w: &DPath, t: Option<f64>) -> DPath {
    shape_path(kind, w, t).expect("parameter in [0,1]")
}

/// `B^s_0 ≃ B^s_1` via `f(e,ω) = (λ^s_0(e,ω)(1), ω_+)` and
/// `g(e',ω') = (λ^s_1(e',ω')(0), ω'_-)`.
pub fn bs_spaces_equivalence(w: &FibrationWitness) -> PathSpaceEquivalence {
    let s0 = pointed_path_space(&w.p, Alpha::Zero, Flavor::Semistationary.window(Alpha::Zero));
    let s1 = pointed_path_space(&w.p, Alpha::One, Flavor::Semistationary.window(Alpha::One));
    let l0 = w.pair.lifter(Alpha::Zero);
    let l1 = w.pair.lifter(Alpha::One);
    let base = w.base().clone();

    let f = {
        let l0 = l0.clone();
        DMap::new(&s0, &s1, move |x| {
            let (e, om) = split_pointed(x);
            pt(l0(&e, &om).eval(1.0), shape(ShapeKind::HalfPlus, &om, None))
        })
    };
    let g = {
        let l1 = l1.clone();
        DMap::new(&s1, &s0, move |x| {
            let (e, om) = split_pointed(x);
            pt(l1(&e, &om).eval(0.0), shape(ShapeKind::HalfMinus, &om, None))
        })
    };
    let phi = {
        let (l0, l1) = (l0.clone(), l1.clone());
        DHomotopy::new(&s0, &s0, Vec::new(), move |x, t| {
            let (e, om) = split_pointed(x);
            let plus = shape(ShapeKind::HalfPlus, &shape(ShapeKind::Scale, &om, Some(t)), None);
            let y = l1(&l0(&e, &om).eval(t), &plus).eval(0.0);
            pt(y, shape(ShapeKind::HalfMinus, &plus, None))
        })
    };
    let psi = {
        let (l1, base) = (l1.clone(), base.clone());
        DHomotopy::new(&s0, &s0, Vec::new(), move |x, t| {
            let (e, om) = split_pointed(x);
            let start = DPath::constant(&base, om.eval(0.0));
            pt(l1(&e, &start).eval(t), shape(ShapeKind::Scale, &om, Some(t)))
        })
    };
    let phi_prime = {
        let (l0, l1) = (l0.clone(), l1.clone());
        DHomotopy::new(&s1, &s1, Vec::new(), move |x, t| {
            let (e, om) = split_pointed(x);
            let minus = shape(ShapeKind::HalfMinus, &shape(ShapeKind::ScaleTail, &om, Some(t)), None);
            let y = l0(&l1(&e, &om).eval(t), &minus).eval(1.0);
            pt(y, shape(ShapeKind::HalfPlus, &minus, None))
        })
    };
    let psi_prime = {
        let (l0, base) = (l0.clone(), base.clone());
        DHomotopy::new(&s1, &s1, Vec::new(), move |x, t| {
            let (e, om) = split_pointed(x);
            let end = DPath::constant(&base, om.eval(1.0));
            pt(l0(&e, &end).eval(t), shape(ShapeKind::ScaleTail, &om, Some(t)))
        })
    };
    let pack = EquivalencePack {
        forward: f,
        backward: g,
        forward_chain: HomotopyChain::backward(phi).then(&HomotopyChain::forward(psi)),
        backward_chain: HomotopyChain::forward(phi_prime).then(&HomotopyChain::backward(psi_prime)),
        vertical: false,
        projections: None,
    };
    PathSpaceEquivalence { source: s0, target: s1, pack }
}

fn warp_curve(source: &DSpace, target: &DSpace, h: &IntervalMap) -> DMap {
    let h = h.clone();
    DMap::new(source, target, move |x| {
        let (e, om) = split_pointed(x);
        pt(e, om.reparametrize(&h))
    })
}

/// `B_ε ≃ B^ε`: the semistationary equivalence conjugated by the warp θ.
pub fn epsilon_spaces_equivalence(w: &FibrationWitness, eps: f64) -> Result<PathSpaceEquivalence> {
    let theta = theta_warp(eps)?;
    let inner = bs_spaces_equivalence(w);
    let se = pointed_path_space(&w.p, Alpha::Zero, Some(Window::Initial(eps)));
    let su = pointed_path_space(&w.p, Alpha::One, Some(Window::Final(eps)));
    let u = warp_curve(&se, &inner.source, &theta.forward);
    let u_inv = warp_curve(&inner.source, &se, &theta.inverse);
    let v = warp_curve(&inner.target, &su, &theta.inverse);
    let v_inv = warp_curve(&su, &inner.target, &theta.forward);
    let p = &inner.pack;
    let pack = EquivalencePack {
        forward: u.then(&p.forward).then(&v),
        backward: v_inv.then(&p.backward).then(&u_inv),
        forward_chain: p.forward_chain.pre(&u).post(&u_inv),
        backward_chain: p.backward_chain.pre(&v_inv).post(&v),
        vertical: false,
        projections: None,
    };
    Ok(PathSpaceEquivalence { source: se, target: su, pack })
}
