use alloc::sync::Arc;
use alloc::vec::Vec;

use super::pair::{check_lifting_pair, Flavor, LiftFn, LiftingPair};
use super::pointed::{pointed_path_space, split_pointed, PointedPath};
use super::witness::{FibrationWitness, LiftProblem, LiftSolution, StrictLifter};
use crate::certificate::Certificate;
use crate::grid::CheckConfig;
use crate::homotopy::{
    chain_to_interval_homotopy, is_semistationary, lift_over_segment, smooth, theta_warp, DHomotopy, HomotopyChain,
    Side, VerticalChain,
};
use crate::map::DMap;
use crate::path::{DPath, IntervalMap};
use crate::{Alpha, Error, Result};

fn check_face(w: &FibrationWitness, prob: &LiftProblem, cfg: &CheckConfig) -> Result<()> {
    let c = prob.certify_face(&w.p, cfg.tol);
    if c.is_pass() {
        Ok(())
    } else {
        Err(Error::Precondition { contract: c.contract, violation: c.max_violation })
    }
}

/// Strict lift of a semistationary homotopy: `φ'(x,t) = λ^s_α(f'(x), φ(x,·))(t)`.
pub fn lift_semistationary(w: &FibrationWitness, prob: &LiftProblem, cfg: &CheckConfig) -> Result<DHomotopy> {
    let side = Side::for_alpha(prob.alpha);
    let c = is_semistationary(&prob.phi, side, &prob.probes, cfg);
    if !c.is_pass() {
        return Err(Error::NotSemistationary { side: side.as_str(), violation: c.max_violation });
    }
    check_face(w, prob, cfg)?;
    Ok(lift_unchecked(w, prob))
}

pub(crate) fn lift_unchecked(w: &FibrationWitness, prob: &LiftProblem) -> DHomotopy {
    let lift = w.pair.lifter(prob.alpha);
    let (f, phi) = (prob.f_lift.clone(), prob.phi.clone());
    DHomotopy::new(
        prob.phi.source(),
        w.total(),
        prob.phi.t_breakpoints().to_vec(),
        move |x, t| lift(&f.apply(x), &phi.slice(x)).eval(t),
    )
}

/// Weak lift: smooth, lift strictly, then cut the smoothed lift into the
/// lift proper and a vertical homotopy back to `f'`.
pub fn weak_lift(w: &FibrationWitness, prob: &LiftProblem, cfg: &CheckConfig) -> Result<LiftSolution> {
    check_face(w, prob, cfg)?;
    let side = Side::for_alpha(prob.alpha);
    let smoothed = prob.with_phi(smooth(&prob.phi, side));
    let bar = lift_unchecked(w, &smoothed);
    let upper_half = IntervalMap::new(Vec::new(), |t| (1.0 + t) / 2.0);
    let lower_half = IntervalMap::new(Vec::new(), |t| t / 2.0);
    let (phi_lift, chain) = match prob.alpha {
        Alpha::Zero => (bar.reparam_time(&upper_half), HomotopyChain::backward(bar.reparam_time(&lower_half))),
        Alpha::One => (bar.reparam_time(&lower_half), HomotopyChain::forward(bar.reparam_time(&upper_half))),
    };
    Ok(LiftSolution {
        phi_lift,
        vertical: VerticalChain { chain, base: w.p.clone(), anchor: prob.f_lift.clone() },
    })
}

/// Strict lift of a semistationary homotopy built only from weak lifts:
/// weakly lift the moving half, then fill the stationary half with the
/// vertical chain glued into an interval homotopy.
pub fn strict_from_weak(w: &FibrationWitness, prob: &LiftProblem, cfg: &CheckConfig) -> Result<DHomotopy> {
    let side = Side::for_alpha(prob.alpha);
    let c = is_semistationary(&prob.phi, side, &prob.probes, cfg);
    if !c.is_pass() {
        return Err(Error::NotSemistationary { side: side.as_str(), violation: c.max_violation });
    }
    let (a, b, beta) = match prob.alpha {
        Alpha::Zero => (0.5, 1.0, 0.5),
        Alpha::One => (0.0, 0.5, 0.5),
    };
    let moving = prob.phi.reparam_time(&IntervalMap::affine(a, b)).with_chart(a, b)?;
    let sol = lift_over_segment(w, &prob.f_lift, &moving, beta, &prob.probes, cfg)?;
    let (fill, first_half) = match prob.alpha {
        Alpha::Zero => (chain_to_interval_homotopy(&sol.vertical.chain.reversed(), 0.0, 0.5)?, true),
        Alpha::One => (chain_to_interval_homotopy(&sol.vertical.chain, 0.5, 1.0)?, false),
    };
    let lifted = sol.phi_lift;
    let mut bps = alloc::vec![0.5];
    bps.extend(lifted.t_breakpoints().iter().map(|u| a + (b - a) * u));
    bps.extend(fill.t_breakpoints().iter().map(|u| if first_half { u / 2.0 } else { 0.5 + u / 2.0 }));
    Ok(DHomotopy::new(prob.phi.source(), w.total(), bps, move |x, t| {
        let in_fill = if first_half { t < 0.5 } else { t >= 0.5 };
        if in_fill {
            fill.eval_chart(x, t)
        } else {
            lifted.eval_chart(x, t)
        }
    }))
}

/// Builds `λ^s_α(e, ω)(t) = φ'_α((e, ω), t)` where `φ'_α` is the strict lift of
/// the tautological problem on the pointed-path space, then checks the pair
/// contract on `probes`.
pub fn semistationary_pair_from_lifter(
    p: &DMap,
    strict: &StrictLifter,
    probes: &[PointedPath],
    cfg: &CheckConfig,
) -> Result<(LiftingPair, Certificate)> {
    let lower = tautological_lift(p, strict, Alpha::Zero, cfg)?;
    let upper = tautological_lift(p, strict, Alpha::One, cfg)?;
    let pair = LiftingPair::new(Flavor::Semistationary, lower, upper);
    let cert = check_lifting_pair(&pair, p, probes, cfg)?;
    Ok((pair, cert))
}

fn tautological_lift(p: &DMap, strict: &StrictLifter, mode: Alpha, cfg: &CheckConfig) -> Result<LiftFn> {
    let x = pointed_path_space(p, mode, Flavor::Semistationary.window(mode));
    let e_space = p.source().clone();
    let f_lift = DMap::new(&x, &e_space, |pt| split_pointed(pt).0);
    let phi = DHomotopy::new(&x, p.target(), Vec::new(), |pt, t| split_pointed(pt).1.eval(t));
    let problem = LiftProblem::new(f_lift, phi, mode, Vec::new());
    let lifted = strict(&problem, cfg)?;
    Ok(Arc::new(move |e, omega| {
        let pt = PointedPath::new(e.clone(), omega.clone(), mode, None).to_point();
        let h = lifted.clone();
        let mut bps = omega.breakpoints().to_vec();
        bps.extend_from_slice(h.t_breakpoints());
        DPath::new(&e_space, bps, move |t| h.eval(&pt, t))
    }))
}

/// `λ_ε(e,ω) = λ^s_0(e, ω∘θ)∘θ⁻¹` and `λ^ε(e,ω) = λ^s_1(e, ω∘θ)∘θ⁻¹`.
pub fn epsilon_pair(w: &FibrationWitness, eps: f64) -> Result<LiftingPair> {
    let theta = theta_warp(eps)?;
    let make = |mode: Alpha| -> LiftFn {
        let base = w.pair.lifter(mode);
        let th = theta.clone();
        Arc::new(move |e, omega| base(e, &omega.reparametrize(&th.forward)).reparametrize(&th.inverse))
    };
    Ok(LiftingPair::new(Flavor::Epsilon(eps), make(Alpha::Zero), make(Alpha::One)))
}
