use super::lift::weak_lift;
use super::witness::{FibrationWitness, LiftProblem, LiftSolution};
use crate::grid::CheckConfig;
use crate::homotopy::{DHomotopy, HomotopyChain, VerticalChain};
use crate::map::DMap;
use crate::point::Point;
use crate::{Alpha, Result};

/// `p` dominated by `p'`: maps `f: E → E'`, `g: E' → E` over the base with a
/// vertical chain `g ∘ f ≃_p id_E`.
#[derive(Clone, Debug)]
pub struct Domination {
    pub f: DMap,
    pub g: DMap,
    pub chain: VerticalChain,
}

/// Weak lift for `p` obtained from a weak lift for `p'`: lift with `f ∘ h'`
/// upstairs, push down with `g`, and append the domination chain.
pub fn dominated_lift(
    w_dominating: &FibrationWitness,
    p: &DMap,
    dom: &Domination,
    prob: &LiftProblem,
    cfg: &CheckConfig,
) -> Result<LiftSolution> {
    let up = LiftProblem { f_lift: prob.f_lift.then(&dom.f), ..prob.clone() };
    let sol = weak_lift(w_dominating, &up, cfg)?;
    let phi_lift = sol.phi_lift.post(&dom.g);
    let chain = sol.vertical.chain.post(&dom.g).then(&dom.chain.chain.pre(&prob.f_lift));
    Ok(LiftSolution {
        phi_lift,
        vertical: VerticalChain { chain, base: p.clone(), anchor: prob.f_lift.clone() },
    })
}

/// Transports `f'_0` along `φ`: the opposite face of a weak lift.
pub fn transport_lift(
    w: &FibrationWitness,
    f_lift: &DMap,
    phi: &DHomotopy,
    alpha: Alpha,
    probes: &[Point],
    cfg: &CheckConfig,
) -> Result<DMap> {
    let sol = weak_lift(w, &LiftProblem::new(f_lift.clone(), phi.clone(), alpha, probes.to_vec()), cfg)?;
    Ok(sol.phi_lift.face(alpha.flip()))
}

/// Weak lift of a homotopy `ψ` on `X × (↑I)^op` with `ψ(·, α) = p ∘ g'`:
/// lift `φ(x, t) = ψ(x, 1 - t)` from the face `1 - α` and reverse back.
/// The returned lift satisfies `p ∘ ψ' = ψ`; its chain starts at `ψ'(·, α)`.
pub fn reversed_lift(
    w: &FibrationWitness,
    g_lift: &DMap,
    psi: &DHomotopy,
    alpha: Alpha,
    probes: &[Point],
    cfg: &CheckConfig,
) -> Result<LiftSolution> {
    let phi = psi.reverse_time();
    let sol = weak_lift(w, &LiftProblem::new(g_lift.clone(), phi, alpha.flip(), probes.to_vec()), cfg)?;
    Ok(LiftSolution { phi_lift: sol.phi_lift.reverse_time(), vertical: sol.vertical })
}

/// Convenience: the trivial domination of `w` by itself.
pub fn self_domination(w: &FibrationWitness) -> Domination {
    let id = DMap::identity(w.total());
    Domination {
        f: id.clone(),
        g: id.clone(),
        chain: VerticalChain { chain: HomotopyChain::stationary(&id), base: w.p.clone(), anchor: id },
    }
}
