use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::pair::LiftingPair;
use crate::certificate::{Certificate, Witness, Worst};
use crate::grid::CheckConfig;
use crate::homotopy::{certify_homotopy, certify_vertical_chain, DHomotopy, VerticalChain};
use crate::map::DMap;
use crate::point::Point;
use crate::probe::ProbeSet;
use crate::space::DSpace;
use crate::{Alpha, Result};

/// A map `p: E → B` with a lifting pair that makes it a weak fibration.
#[derive(Clone, Debug)]
pub struct FibrationWitness {
    pub p: DMap,
    pub pair: LiftingPair,
    pub provenance: String,
    /// For bases of the form `B₀ × ↑I`: the dimension of `B₀`.
    pub cylinder_base: Option<usize>,
}

impl FibrationWitness {
    pub fn new(p: DMap, pair: LiftingPair, provenance: impl Into<String>) -> Self {
        FibrationWitness { p, pair, provenance: provenance.into(), cylinder_base: None }
    }

    pub fn with_cylinder_base(mut self, dim: usize) -> Self {
        self.cylinder_base = Some(dim);
        self
    }

    pub fn total(&self) -> &DSpace {
        self.p.source()
    }

    pub fn base(&self) -> &DSpace {
        self.p.target()
    }
}

/// Solves a lifting problem exactly (`φ'(·, α) = f'`) for the problems it accepts.
pub type StrictLifter = Arc<dyn Fn(&LiftProblem, &CheckConfig) -> Result<DHomotopy> + Send + Sync>;

/// Data `f': X → E`, `φ: X × ↑I → B` with `φ(x, α) = p(f'(x))`.
#[derive(Clone, Debug)]
pub struct LiftProblem {
    pub f_lift: DMap,
    pub phi: DHomotopy,
    pub alpha: Alpha,
    /// Points of `X` at which preconditions are checked.
    pub probes: Vec<Point>,
}

impl LiftProblem {
    pub fn new(f_lift: DMap, phi: DHomotopy, alpha: Alpha, probes: Vec<Point>) -> Self {
        LiftProblem { f_lift, phi, alpha, probes }
    }

    /// `φ(x, α) = p(f'(x))` on the probes.
    pub fn certify_face(&self, p: &DMap, tol: f64) -> Certificate {
        let a = self.alpha.value();
        let mut w = Worst::new();
        for (k, x) in self.probes.iter().enumerate() {
            let (u, v) = (self.phi.eval(x, a), p.apply(&self.f_lift.apply(x)));
            w.record(u.distance(&v), || Witness::new(alloc::vec![a], u.coords().to_vec(), alloc::format!("probe {k}")));
        }
        w.certify("φ(·,α) = p ∘ f'", tol)
    }

    pub fn with_phi(&self, phi: DHomotopy) -> Self {
        LiftProblem { phi, ..self.clone() }
    }
}

/// A lift `φ'` of `φ` together with a vertical chain from `φ'(·, α)` to `f'`.
#[derive(Clone, Debug)]
pub struct LiftSolution {
    pub phi_lift: DHomotopy,
    pub vertical: VerticalChain,
}

/// `p ∘ φ' = φ` on probes × grid.
pub fn certify_projection(p: &DMap, phi: &DHomotopy, phi_lift: &DHomotopy, probes: &[Point], cfg: &CheckConfig) -> Certificate {
    let mut extra = phi.t_breakpoints().to_vec();
    extra.extend_from_slice(phi_lift.t_breakpoints());
    let params = cfg.grid.points_with(&extra);
    let mut w = Worst::new();
    for (k, x) in probes.iter().enumerate() {
        for &t in &params {
            let (u, v) = (p.apply(&phi_lift.eval(x, t)), phi.eval(x, t));
            w.record(u.distance(&v), || Witness::new(alloc::vec![t], u.coords().to_vec(), alloc::format!("probe {k}")));
        }
    }
    w.certify("p ∘ φ' = φ", cfg.tol)
}

/// Face `φ'(·, α) = f'` exactly, as required of a strict lift.
pub fn certify_strict_face(prob: &LiftProblem, phi_lift: &DHomotopy, cfg: &CheckConfig) -> Certificate {
    let face = phi_lift.face(prob.alpha);
    let mut w = Worst::new();
    for (k, x) in prob.probes.iter().enumerate() {
        let (u, v) = (face.apply(x), prob.f_lift.apply(x));
        w.record(u.distance(&v), || Witness::new(Vec::new(), u.coords().to_vec(), alloc::format!("probe {k}")));
    }
    w.certify("φ'(·,α) = f'", cfg.tol)
}

/// Projection, vertical chain and directedness of a weak lift.
pub fn certify_lift(
    w: &FibrationWitness,
    prob: &LiftProblem,
    sol: &LiftSolution,
    probes: &ProbeSet,
    cfg: &CheckConfig,
) -> Certificate {
    let start = sol.phi_lift.face(prob.alpha);
    Certificate::combine(
        "weak lift",
        cfg.tol,
        alloc::vec![
            certify_projection(&w.p, &prob.phi, &sol.phi_lift, &probes.points, cfg),
            certify_vertical_chain(&sol.vertical, Some(&start), probes, cfg),
            certify_homotopy(&sol.phi_lift, probes, cfg),
        ],
    )
}
