use alloc::sync::Arc;
use alloc::vec::Vec;

use super::pack::EquivalencePack;
use crate::certificate::{Certificate, Witness, Worst};
use crate::fibration::{lift_semistationary, FibrationWitness, LiftProblem};
use crate::grid::CheckConfig;
use crate::homotopy::{certify_homotopy, DHomotopy, HomotopyChain, VerticalChain};
use crate::map::DMap;
use crate::point::Point;
use crate::probe::ProbeSet;
use crate::space::DSpace;
use crate::{Alpha, Error, Result};

/// Deformation data for a weak fibration over `B × ↑I`.
#[derive(Clone, Debug)]
pub struct CylinderRetraction {
    /// `R: E × ↑I → E` with `p R(e, t) = (π(e), t)`.
    pub retraction: DHomotopy,
    pub pi: DMap,
    pub rho: DMap,
    /// `r(e) = R(e, ρ(e))`.
    pub r: DMap,
    /// `κ: id ⪯ r`, vertical.
    pub kappa: DHomotopy,
    /// The semistationary base homotopy that was lifted.
    pub phi: DHomotopy,
    /// Slices `p⁻¹(B × {0})` and `p⁻¹(B × {1})`.
    pub slice0: DSpace,
    pub slice1: DSpace,
    /// `h¹ = R(·, 1)` and `h⁰ = R(·, 0)` between the slices.
    pub slices: EquivalencePack,
}

impl CylinderRetraction {
    /// `r ≃_p id` as a one-step vertical chain.
    pub fn retraction_chain(&self, p: &DMap) -> VerticalChain {
        VerticalChain {
            chain: HomotopyChain::backward(self.kappa.clone()),
            base: p.clone(),
            anchor: DMap::identity(self.kappa.source()),
        }
    }

    /// `p R(e, t) = (π(e), t)`, `r ≃_p id`, and directedness of `R`.
    pub fn certify(&self, w: &FibrationWitness, probes: &ProbeSet, cfg: &CheckConfig) -> Certificate {
        let mut proj = Worst::new();
        for (k, e) in probes.points.iter().enumerate() {
            let b0 = self.pi.apply(e);
            for t in cfg.grid.points() {
                let q = w.p.apply(&self.retraction.eval(e, t));
                proj.record(q.distance(&b0.push(t)), || {
                    Witness::new(alloc::vec![t], q.coords().to_vec(), alloc::format!("probe {k}"))
                });
            }
        }
        let chain = crate::homotopy::certify_vertical_chain(&self.retraction_chain(&w.p), Some(&self.r), probes, cfg);
        Certificate::combine(
            "cylinder retraction",
            cfg.tol,
            alloc::vec![
                proj.certify("p R(e,t) = (π(e), t)", cfg.tol),
                chain,
                certify_homotopy(&self.retraction, probes, cfg),
            ],
        )
    }

    /// Directedness of the lifted base homotopy on `E × ↑I`. It moves the
    /// `↑I` coordinate down from `ρ(e)` to `t₁` when `t₁ < ρ(e)`.
    pub fn certify_phi(&self, probes: &ProbeSet, cfg: &CheckConfig) -> Certificate {
        let cyl: Vec<Point> = probes
            .points
            .iter()
            .flat_map(|e| [0.0, 0.5, 1.0].map(|t| e.push(t)))
            .collect();
        certify_homotopy(&self.phi, &ProbeSet::points(cyl), cfg)
    }
}

/// Builds `R`, `r`, `κ` from a strict lift of the semistationary homotopy
/// `φ(e, t₁, t₂) = p(e)` for `t₂ < 1/2`, `(π(e), 2(1-t₂)ρ(e) + (2t₂-1)t₁)` after,
/// and the slice equivalence `h¹ ⇄ h⁰`.
pub fn cylinder_retraction(w: &FibrationWitness, probes: &[Point], cfg: &CheckConfig) -> Result<CylinderRetraction> {
    let k = w.cylinder_base.ok_or_else(|| Error::NotCylinder(w.provenance.clone()))?;
    if w.base().dim() != k + 1 {
        return Err(Error::NotCylinder(w.provenance.clone()));
    }
    let e = w.total().clone();
    let (base, b0) = match w.base().factors() {
        Some((b0, _)) => (w.base().clone(), b0),
        None => return Err(Error::NotCylinder(w.provenance.clone())),
    };
    let p = w.p.clone();
    let pi = {
        let p = p.clone();
        DMap::new(&e, &b0, move |x| Point::from_slice(&p.apply(x).coords()[..k]))
    };
    let rho = {
        let p = p.clone();
        DMap::new(&e, &crate::space::DSpace::interval(), move |x| Point::scalar(p.apply(x).coord(k)))
    };
    let cyl = DSpace::cylinder(&e);
    let (d, c) = (e.dim(), e.curves());
    let phi = {
        let p = p.clone();
        DHomotopy::new(&cyl, &base, alloc::vec![0.5], move |x, t2| {
            let (e, t) = x.split_at(d, c);
            let b = p.apply(&e);
            if t2 < 0.5 {
                b
            } else {
                let (pi, r) = b.split_at(k, 0);
                pi.push(2.0 * (1.0 - t2) * r.coord(0) + (2.0 * t2 - 1.0) * t.coord(0))
            }
        })
    };
    let pr1 = DMap::new(&cyl, &e, move |x| x.split_at(d, c).0);
    let cyl_probes: Vec<Point> = probes
        .iter()
        .flat_map(|x| [0.0, 0.25, 0.5, 0.75, 1.0].map(|t| x.push(t)))
        .collect();
    let lift = lift_semistationary(w, &LiftProblem::new(pr1, phi.clone(), Alpha::Zero, cyl_probes), cfg)?;

    let retraction = {
        let l = lift.clone();
        DHomotopy::new(&e, &e, Vec::new(), move |x, t| l.eval(&x.push(t), 1.0))
    };
    let r = {
        let (l, rho) = (lift.clone(), rho.clone());
        DMap::new(&e, &e, move |x| l.eval(&x.push(rho.apply(x).coord(0)), 1.0))
    };
    let kappa = {
        let (l, rho) = (lift.clone(), rho.clone());
        DHomotopy::new(&e, &e, lift.t_breakpoints().to_vec(), move |x, t| l.eval(&x.push(rho.apply(x).coord(0)), t))
    };

    let slice = |level: f64| {
        let rho = rho.clone();
        DSpace::subspace(
            &e,
            alloc::format!("slice ρ = {level}"),
            Arc::new(move |x: &Point| (rho.apply(x).coord(0) - level).abs()),
        )
    };
    let (s0, s1) = (slice(0.0), slice(1.0));
    let at_level = |src: &DSpace, tgt: &DSpace, level: f64| {
        let rt = retraction.clone();
        DMap::new(src, tgt, move |x| rt.eval(x, level))
    };
    let h1 = at_level(&s0, &s1, 1.0);
    let h0 = at_level(&s1, &s0, 0.0);
    let twice = |s: &DSpace, level: f64| {
        let rt = retraction.clone();
        DHomotopy::new(s, s, Vec::new(), move |x, t| rt.eval(&rt.eval(x, t), level))
    };
    let tail = |s: &DSpace| {
        let rk = kappa.retag(s, s).post(&r.retag(s, s));
        HomotopyChain::backward(rk).then(&HomotopyChain::backward(kappa.retag(s, s)))
    };
    let slices = EquivalencePack {
        forward: h1,
        backward: h0,
        forward_chain: HomotopyChain::backward(twice(&s0, 0.0)).then(&tail(&s0)),
        backward_chain: HomotopyChain::forward(twice(&s1, 1.0)).then(&tail(&s1)),
        vertical: true,
        projections: Some((pi.retag(&s0, &b0), pi.retag(&s1, &b0))),
    };
    Ok(CylinderRetraction { retraction, pi, rho, r, kappa, phi, slice0: s0, slice1: s1, slices })
}
