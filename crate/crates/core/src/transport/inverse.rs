use alloc::vec::Vec;

use crate::fibration::{lift_semistationary, FibrationWitness, LiftProblem};
use crate::grid::CheckConfig;
use crate::homotopy::{smooth, DHomotopy, HomotopyChain, Orientation, Side, VerticalChain};
use crate::map::DMap;
use crate::point::Point;
use crate::space::DSpace;
use crate::{Alpha, Error, Result};

/// Default bound on the number of chain steps `vertical_inverse` accepts.
pub const DEFAULT_MAX_DEPTH: usize = 8;

/// Result of replacing a homotopy inverse by one over the base.
#[derive(Clone, Debug)]
pub struct ImprovedInverse {
    /// `f̃'`, satisfying `p ∘ f̃' = p'`.
    pub map: DMap,
    /// `f ∘ f̃' ≃ id`.
    pub chain: HomotopyChain,
    /// `f' ≃ f̃'`, the lifted steps.
    pub lifted: HomotopyChain,
}

fn gap(a: &DMap, b: &DMap, probes: &[Point]) -> f64 {
    a.distance_on(b, probes)
}

/// Given `f: E → E'` over `B` and a chain `f ∘ f' ≃ id_{E'}`, lifts `f'` along
/// the projected steps to get `f̃'` over `B` with `f ∘ f̃' ≃ id`.
/// `w` is the fibration `p: E → B`, `p2` is `p': E' → B`; `probes` are points of `E'`.
pub fn improve_inverse(
    w: &FibrationWitness,
    p2: &DMap,
    f: &DMap,
    f_inv: &DMap,
    chain: &HomotopyChain,
    probes: &[Point],
    cfg: &CheckConfig,
) -> Result<ImprovedInverse> {
    let over = gap(&f_inv.then(f).then(p2), &f_inv.then(&w.p), probes);
    if !(over <= cfg.tol) {
        return Err(Error::Precondition { contract: "f over B".into(), violation: over });
    }
    let pruned = chain.prune_stationary(probes, cfg);
    if pruned.is_stationary(probes, cfg) && gap(&f_inv.then(&w.p), p2, probes) <= cfg.tol {
        return Ok(ImprovedInverse {
            map: f_inv.clone(),
            chain: chain.clone(),
            lifted: HomotopyChain::stationary(f_inv),
        });
    }
    let mut cur = f_inv.clone();
    let mut lifted: Vec<HomotopyChain> = Vec::new();
    for step in pruned.steps() {
        let base = step.homotopy.post(p2);
        let (alpha, side) = match step.orientation {
            Orientation::Forward => (Alpha::Zero, Side::Lower),
            Orientation::Backward => (Alpha::One, Side::Upper),
        };
        let prob = LiftProblem::new(cur.clone(), smooth(&base, side), alpha, probes.to_vec());
        let l = lift_semistationary(w, &prob, cfg)?;
        cur = l.face(alpha.flip());
        lifted.push(match step.orientation {
            Orientation::Forward => HomotopyChain::forward(l),
            Orientation::Backward => HomotopyChain::backward(l),
        });
    }
    let lifted = lifted.iter().skip(1).fold(lifted[0].clone(), |acc, c| acc.then(c));
    let out_chain = lifted.post(f).reversed().then(chain);
    Ok(ImprovedInverse { map: cur, chain: out_chain, lifted })
}

/// Which face of the Φ-square is lifted strictly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Straightening {
    /// Lift from `t = 1`; the chain runs from `K(·,0)` to `K(·,1)`.
    Upper,
    /// Lift from `t = 0`; the chain runs from `K(·,1)` to `K(·,0)`.
    Lower,
}

/// Replaces a homotopy `K: a ⪯ b` between maps over `B` by a three-step chain
/// whose steps are vertical whenever `p ∘ K` is constant in time.
pub fn straighten(
    w: &FibrationWitness,
    k: &DHomotopy,
    mode: Straightening,
    probes: &[Point],
    cfg: &CheckConfig,
) -> Result<HomotopyChain> {
    let e = k.source().clone();
    let cyl = DSpace::cylinder(&e);
    let (d, c) = (e.dim(), e.curves());
    let p = w.p.clone();
    let kk = k.clone();
    let split = move |x: &Point| {
        let (e, s) = x.split_at(d, c);
        (e, s.coord(0))
    };
    let s_grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let cyl_probes: Vec<Point> = probes.iter().flat_map(|x| s_grid.iter().map(move |&s| x.push(s))).collect();
    let (alpha, phi) = match mode {
        Straightening::Upper => (
            Alpha::One,
            DHomotopy::new(&cyl, w.base(), alloc::vec![0.5], move |x, t| {
                let (e, s) = split(x);
                let u = if t < 0.5 { 2.0 * s * t } else { s };
                p.apply(&kk.eval(&e, u))
            }),
        ),
        Straightening::Lower => (
            Alpha::Zero,
            DHomotopy::new(&cyl, w.base(), alloc::vec![0.5], move |x, t| {
                let (e, s) = split(x);
                let u = if t < 0.5 { s } else { 1.0 - 2.0 * (1.0 - s) * (1.0 - t) };
                p.apply(&kk.eval(&e, u))
            }),
        ),
    };
    let prob = LiftProblem::new(k.as_map(), phi, alpha, cyl_probes);
    let lift = lift_semistationary(w, &prob, cfg)?;
    let side = |s: f64| -> DHomotopy {
        let l = lift.clone();
        DHomotopy::new(&e, &e, l.t_breakpoints().to_vec(), move |x, t| l.eval(&x.push(s), t))
    };
    let bottom = |t: f64| -> DHomotopy {
        let l = lift.clone();
        DHomotopy::new(&e, &e, Vec::new(), move |x, s| l.eval(&x.push(s), t))
    };
    Ok(match mode {
        Straightening::Upper => HomotopyChain::backward(side(0.0))
            .then(&HomotopyChain::forward(bottom(0.0)))
            .then(&HomotopyChain::forward(side(1.0))),
        Straightening::Lower => HomotopyChain::forward(side(1.0))
            .then(&HomotopyChain::backward(bottom(1.0)))
            .then(&HomotopyChain::backward(side(0.0))),
    })
}

/// Given `g: E → E` over `B` and a chain `g ≃ id_E`, finds `g'` over `B` with a
/// vertical chain `g ∘ g' ≃_p id_E`. Chains longer than `max_depth` steps
/// (after pruning stationary steps) are rejected.
pub fn vertical_inverse(
    w: &FibrationWitness,
    g: &DMap,
    chain: &HomotopyChain,
    probes: &[Point],
    cfg: &CheckConfig,
    max_depth: usize,
) -> Result<(DMap, VerticalChain)> {
    let e = w.total().clone();
    let id = DMap::identity(&e);
    let vertical = |c: HomotopyChain| VerticalChain { chain: c, base: w.p.clone(), anchor: id.clone() };
    let pruned = chain.prune_stationary(probes, cfg);
    if pruned.is_stationary(probes, cfg) {
        return Ok((id.clone(), vertical(HomotopyChain::stationary(g))));
    }
    if pruned.len() > max_depth {
        return Err(Error::UnsupportedDepth { len: pruned.len(), max: max_depth });
    }
    if pruned.len() == 1 {
        let step = &pruned.steps()[0];
        let h = &step.homotopy;
        let (alpha, side) = match step.orientation {
            Orientation::Forward => (Alpha::One, Side::Upper),
            Orientation::Backward => (Alpha::Zero, Side::Lower),
        };
        let smoothed = smooth(h, side);
        let prob = LiftProblem::new(id.clone(), smoothed.post(&w.p), alpha, probes.to_vec());
        let psi = lift_semistationary(w, &prob, cfg)?;
        let g_inv = psi.face(alpha.flip());
        let (gg, sm, ps) = (g.func(), smoothed.clone(), psi.clone());
        let (f_hom, mode) = match step.orientation {
            Orientation::Forward => (
                DHomotopy::new(&e, &e, alloc::vec![0.5], move |x, s| {
                    if s < 0.5 {
                        gg(&ps.eval(x, 2.0 * s))
                    } else {
                        sm.eval(x, 2.0 * s - 1.0)
                    }
                }),
                Straightening::Upper,
            ),
            Orientation::Backward => (
                DHomotopy::new(&e, &e, alloc::vec![0.5], move |x, s| {
                    if s < 0.5 {
                        sm.eval(x, 2.0 * s)
                    } else {
                        gg(&ps.eval(x, 2.0 * s - 1.0))
                    }
                }),
                Straightening::Lower,
            ),
        };
        let c = straighten(w, &f_hom, mode, probes, cfg)?;
        return Ok((g_inv, vertical(c)));
    }
    let improved = improve_inverse(w, &w.p, g, &id, &pruned, probes, cfg)?;
    let steps = improved.chain.prune_stationary(probes, cfg);
    let mut pieces = Vec::new();
    for s in steps.steps() {
        pieces.push(match s.orientation {
            Orientation::Forward => straighten(w, &s.homotopy, Straightening::Upper, probes, cfg)?,
            Orientation::Backward => straighten(w, &s.homotopy, Straightening::Lower, probes, cfg)?,
        });
    }
    let c = pieces.iter().skip(1).fold(pieces[0].clone(), |acc, c| acc.then(c));
    Ok((improved.map, vertical(c)))
}
