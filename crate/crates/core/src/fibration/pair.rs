use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::pointed::{PointedPath, Window};
use crate::certificate::{Certificate, Witness, Worst};
use crate::grid::CheckConfig;
use crate::map::DMap;
use crate::path::{certify_directed_path, DPath};
use crate::point::Point;
use crate::{Alpha, Error, Result};

pub type LiftFn = Arc<dyn Fn(&Point, &DPath) -> DPath + Send + Sync>;

/// Which pointed paths a lifting pair accepts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Flavor {
    /// Any path.
    Strict,
    /// Paths stationary on the half next to the lifted end.
    Semistationary,
    /// Paths stationary on `[0, ε]` (lower) or `[ε, 1]` (upper).
    Epsilon(f64),
}

impl Flavor {
    pub fn window(self, mode: Alpha) -> Option<Window> {
        match (self, mode) {
            (Flavor::Strict, _) => None,
            (Flavor::Semistationary, Alpha::Zero) => Some(Window::FirstHalf),
            (Flavor::Semistationary, Alpha::One) => Some(Window::SecondHalf),
            (Flavor::Epsilon(e), Alpha::Zero) => Some(Window::Initial(e)),
            (Flavor::Epsilon(e), Alpha::One) => Some(Window::Final(e)),
        }
    }

    pub fn name(self) -> alloc::string::String {
        match self {
            Flavor::Strict => "strict".into(),
            Flavor::Semistationary => "semistationary".into(),
            Flavor::Epsilon(e) => alloc::format!("epsilon({e})"),
        }
    }
}

/// Path-lifting functions for both modes: `lower` lifts from the start of
/// the path, `upper` to its end.
#[derive(Clone)]
pub struct LiftingPair {
    flavor: Flavor,
    lower: LiftFn,
    upper: LiftFn,
}

impl fmt::Debug for LiftingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LiftingPair({})", self.flavor.name())
    }
}

impl LiftingPair {
    pub fn new(flavor: Flavor, lower: LiftFn, upper: LiftFn) -> Self {
        LiftingPair { flavor, lower, upper }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn window(&self, mode: Alpha) -> Option<Window> {
        self.flavor.window(mode)
    }

    pub fn lifter(&self, mode: Alpha) -> LiftFn {
        match mode {
            Alpha::Zero => self.lower.clone(),
            Alpha::One => self.upper.clone(),
        }
    }

    /// Lifts `ω` starting (mode 0) or ending (mode 1) at `e`. No validation.
    pub fn lift_with(&self, mode: Alpha, e: &Point, omega: &DPath) -> DPath {
        match mode {
            Alpha::Zero => (self.lower)(e, omega),
            Alpha::One => (self.upper)(e, omega),
        }
    }

    pub fn lift(&self, probe: &PointedPath) -> DPath {
        self.lift_with(probe.mode, &probe.e, &probe.omega)
    }
}

/// Checks the lifting-pair contract on probes: the lift starts (or ends) at
/// `e`, projects onto `ω`, and is directed in `E`. A probe that violates its
/// own invariant is an error, not a failed check.
pub fn check_lifting_pair(
    pair: &LiftingPair,
    p: &DMap,
    probes: &[PointedPath],
    cfg: &CheckConfig,
) -> Result<Certificate> {
    for (index, probe) in probes.iter().enumerate() {
        probe
            .validate(p, pair.window(probe.mode), cfg.tol)
            .map_err(|reason| Error::InvalidProbe { index, reason })?;
    }
    let mut endpoint = Worst::new();
    let mut projection = Worst::new();
    let mut directed = Worst::new();
    for (k, probe) in probes.iter().enumerate() {
        let lifted = pair.lift(probe);
        let a = probe.mode.value();
        let at_end = lifted.eval(a);
        endpoint.record(at_end.distance(&probe.e), || {
            Witness::new(alloc::vec![a], at_end.coords().to_vec(), alloc::format!("probe {k}"))
        });
        let mut extra: Vec<f64> = lifted.breakpoints().to_vec();
        extra.extend_from_slice(probe.omega.breakpoints());
        for t in cfg.grid.points_with(&extra) {
            let q = p.apply(&lifted.eval(t));
            let w = probe.omega.eval(t);
            projection.record(q.distance(&w), || {
                Witness::new(alloc::vec![t], q.coords().to_vec(), alloc::format!("probe {k}"))
            });
        }
        let c = certify_directed_path(p.source(), &lifted, cfg);
        directed.record(c.max_violation, || {
            let mut w = c.witness.clone().unwrap_or_default();
            w.note = alloc::format!("probe {k}: {}", w.note);
            w
        });
    }
    Ok(Certificate::combine(
        alloc::format!("{} lifting pair", pair.flavor.name()),
        cfg.tol,
        alloc::vec![
            endpoint.certify("lift hits e at the mode end", cfg.tol),
            projection.certify("p ∘ lift = ω", cfg.tol),
            directed.certify("lift directed in E", cfg.tol),
        ],
    ))
}
