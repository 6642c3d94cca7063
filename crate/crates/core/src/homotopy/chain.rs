use alloc::vec::Vec;

use super::{certify_homotopy, DHomotopy};
use crate::certificate::{Certificate, Witness, Worst};
use crate::grid::CheckConfig;
use crate::map::DMap;
use crate::point::Point;
use crate::probe::ProbeSet;
use crate::{Alpha, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `H: a ⪯ b` traversed from `a = H(·,0)` to `b = H(·,1)`.
    Forward,
    /// `H: b ⪯ a` traversed from `a = H(·,1)` back to `b = H(·,0)`.
    Backward,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChainStep {
    pub orientation: Orientation,
    pub homotopy: DHomotopy,
}

impl ChainStep {
    pub fn start(&self) -> DMap {
        self.homotopy.face(match self.orientation {
            Orientation::Forward => Alpha::Zero,
            Orientation::Backward => Alpha::One,
        })
    }

    pub fn end(&self) -> DMap {
        self.homotopy.face(match self.orientation {
            Orientation::Forward => Alpha::One,
            Orientation::Backward => Alpha::Zero,
        })
    }

    /// Evaluation in traversal time: `u = 0` is the start map, `u = 1` the end map.
    pub fn traverse(&self, x: &Point, u: f64) -> Point {
        match self.orientation {
            Orientation::Forward => self.homotopy.eval(x, u),
            Orientation::Backward => self.homotopy.eval(x, 1.0 - u),
        }
    }
}

/// A zigzag of directed homotopies `m_0 ~ m_1 ~ ... ~ m_k`.
#[derive(Clone, Debug)]
pub struct HomotopyChain {
    steps: Vec<ChainStep>,
}

impl HomotopyChain {
    pub fn new(steps: Vec<ChainStep>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyChain);
        }
        Ok(HomotopyChain { steps })
    }

    pub fn forward(h: DHomotopy) -> Self {
        HomotopyChain { steps: alloc::vec![ChainStep { orientation: Orientation::Forward, homotopy: h }] }
    }

    pub fn backward(h: DHomotopy) -> Self {
        HomotopyChain { steps: alloc::vec![ChainStep { orientation: Orientation::Backward, homotopy: h }] }
    }

    /// One stationary step at `g`.
    pub fn stationary(g: &DMap) -> Self {
        HomotopyChain::forward(DHomotopy::stationary(g))
    }

    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> DMap {
        self.steps[0].start()
    }

    pub fn end(&self) -> DMap {
        self.steps[self.steps.len() - 1].end()
    }

    /// Same zigzag read from the other end.
    pub fn reversed(&self) -> Self {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| ChainStep { orientation: s.orientation.flip(), homotopy: s.homotopy.clone() })
            .collect();
        HomotopyChain { steps }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &HomotopyChain) -> Self {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        HomotopyChain { steps }
    }

    /// Post-composes every homotopy with `g`.
    pub fn post(&self, g: &DMap) -> Self {
        self.map_steps(|h| h.post(g))
    }

    /// Pre-composes every homotopy with `h`.
    pub fn pre(&self, h: &DMap) -> Self {
        self.map_steps(|k| k.pre(h))
    }

    fn map_steps(&self, f: impl Fn(&DHomotopy) -> DHomotopy) -> Self {
        let steps = self
            .steps
            .iter()
            .map(|s| ChainStep { orientation: s.orientation, homotopy: f(&s.homotopy) })
            .collect();
        HomotopyChain { steps }
    }

    /// Drops steps that do not move on any probe point (within `cfg.tol`).
    /// If every step is stationary a single stationary step at the start is kept.
    pub fn prune_stationary(&self, probes: &[Point], cfg: &CheckConfig) -> Self {
        let kept: Vec<ChainStep> = self
            .steps
            .iter()
            .filter(|s| step_motion(&s.homotopy, probes, cfg) > cfg.tol)
            .cloned()
            .collect();
        if kept.is_empty() {
            HomotopyChain::stationary(&self.start())
        } else {
            HomotopyChain { steps: kept }
        }
    }

    /// True when every step is stationary on the probes.
    pub fn is_stationary(&self, probes: &[Point], cfg: &CheckConfig) -> bool {
        self.steps.iter().all(|s| step_motion(&s.homotopy, probes, cfg) <= cfg.tol)
    }
}

fn step_motion(h: &DHomotopy, probes: &[Point], cfg: &CheckConfig) -> f64 {
    let params = cfg.grid.points_with(h.t_breakpoints());
    let mut m = 0.0f64;
    for x in probes {
        let x0 = h.eval(x, 0.0);
        for &t in &params {
            m = crate::math::max(m, h.eval(x, t).distance(&x0));
        }
    }
    m
}

fn map_gap(a: &DMap, b: &DMap, probes: &[Point], label: &str, tol: f64) -> Certificate {
    let mut w = Worst::new();
    for (k, x) in probes.iter().enumerate() {
        let (u, v) = (a.apply(x), b.apply(x));
        w.record(u.distance(&v), || {
            let mut values = u.coords().to_vec();
            values.extend_from_slice(v.coords());
            Witness::new(Vec::new(), values, alloc::format!("probe {k}"))
        });
    }
    w.certify(label, tol)
}

/// Linkage of consecutive steps, optional start/end maps, and directedness of
/// every step on the probes.
pub fn certify_chain(
    chain: &HomotopyChain,
    start: Option<&DMap>,
    end: Option<&DMap>,
    probes: &ProbeSet,
    cfg: &CheckConfig,
) -> Certificate {
    let pts = &probes.points;
    let mut parts = Vec::new();
    if let Some(s) = start {
        parts.push(map_gap(&chain.start(), s, pts, "chain starts at expected map", cfg.tol));
    }
    let mut link = Worst::new();
    for (i, w) in chain.steps.windows(2).enumerate() {
        let c = map_gap(&w[0].end(), &w[1].start(), pts, "", cfg.tol);
        link.record(c.max_violation, || Witness::at(&[i as f64], alloc::format!("between steps {i} and {}", i + 1)));
    }
    parts.push(link.certify("consecutive steps link", cfg.tol));
    if let Some(e) = end {
        parts.push(map_gap(&chain.end(), e, pts, "chain ends at expected map", cfg.tol));
    }
    let mut directed = Worst::new();
    for (i, s) in chain.steps.iter().enumerate() {
        let c = certify_homotopy(&s.homotopy, probes, cfg);
        directed.record(c.max_violation, || {
            let mut w = c.witness.clone().unwrap_or_default();
            w.note = alloc::format!("step {i}: {}", w.note);
            w
        });
    }
    parts.push(directed.certify("every step directed", cfg.tol));
    Certificate::combine("homotopy chain", cfg.tol, parts)
}

/// A chain whose steps are constant after composing with `base`, ending at `anchor`.
#[derive(Clone, Debug)]
pub struct VerticalChain {
    pub chain: HomotopyChain,
    pub base: DMap,
    pub anchor: DMap,
}

impl VerticalChain {
    /// Largest movement of `base ∘ H(x, ·)` over all steps and probe points.
    pub fn max_drift(&self, probes: &[Point], cfg: &CheckConfig) -> f64 {
        self.drift(probes, cfg).max
    }

    fn drift(&self, probes: &[Point], cfg: &CheckConfig) -> Worst {
        let mut w = Worst::new();
        for (i, s) in self.chain.steps.iter().enumerate() {
            let params = cfg.grid.points_with(s.homotopy.t_breakpoints());
            for (k, x) in probes.iter().enumerate() {
                let b0 = self.base.apply(&s.homotopy.eval(x, 0.0));
                for &t in &params {
                    let b = self.base.apply(&s.homotopy.eval(x, t));
                    w.record(b.distance(&b0), || {
                        Witness::new(alloc::vec![t], b.coords().to_vec(), alloc::format!("step {i}, probe {k}"))
                    });
                }
            }
        }
        w
    }
}

/// Chain certificate plus verticality (zero drift of `base`).
pub fn certify_vertical_chain(
    v: &VerticalChain,
    start: Option<&DMap>,
    probes: &ProbeSet,
    cfg: &CheckConfig,
) -> Certificate {
    let chain = certify_chain(&v.chain, start, Some(&v.anchor), probes, cfg);
    let drift = v.drift(&probes.points, cfg).certify("vertical over base", cfg.tol);
    Certificate::combine("vertical chain", cfg.tol, alloc::vec![chain, drift])
}

/// Glues the steps on an equal subdivision of `[a, b]`; backward steps are
/// traversed reversed in time. `G(·, a)` is the chain's start, `G(·, b)` its end.
pub fn chain_to_interval_homotopy(chain: &HomotopyChain, a: f64, b: f64) -> Result<DHomotopy> {
    if !(a < b) {
        return Err(Error::EmptyInterval { a, b });
    }
    let steps = chain.steps.clone();
    let k = steps.len();
    let mut bps = Vec::new();
    for (i, s) in steps.iter().enumerate() {
        bps.push(i as f64 / k as f64);
        for &c in s.homotopy.t_breakpoints() {
            let local = match s.orientation {
                Orientation::Forward => c,
                Orientation::Backward => 1.0 - c,
            };
            bps.push((i as f64 + local) / k as f64);
        }
    }
    let first = &steps[0].homotopy;
    let (source, target) = (first.source().clone(), first.target().clone());
    let h = DHomotopy::new(&source, &target, bps, move |x, u| {
        let scaled = u * k as f64;
        let i = (scaled.max(0.0) as usize).min(k - 1);
        steps[i].traverse(x, scaled - i as f64)
    });
    h.with_chart(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{DSpace, StandardKind};
    use alloc::vec;

    fn r() -> DSpace {
        DSpace::standard(StandardKind::DirectedRn, 1).unwrap()
    }

    fn shift(a: f64, b: f64) -> DHomotopy {
        DHomotopy::new(&r(), &r(), vec![], move |x, t| Point::scalar(x.coord(0) + a + (b - a) * t))
    }

    #[test]
    fn zigzag_links_and_reverses() {
        let c = HomotopyChain::forward(shift(0.0, 1.0)).then(&HomotopyChain::backward(shift(0.5, 1.0)));
        let pts = vec![Point::scalar(0.0), Point::scalar(2.0)];
        let probes = ProbeSet::points(pts.clone());
        let cfg = CheckConfig::default();
        assert_eq!(c.end().apply(&Point::scalar(0.0)).coord(0), 0.5);
        assert!(certify_chain(&c, None, None, &probes, &cfg).is_pass());
        let r = c.reversed();
        assert_eq!(r.start().apply(&Point::scalar(0.0)).coord(0), 0.5);
        assert_eq!(r.steps()[0].orientation, Orientation::Forward);
        let broken = HomotopyChain::forward(shift(0.0, 1.0)).then(&HomotopyChain::forward(shift(0.0, 1.0)));
        assert!(!certify_chain(&broken, None, None, &probes, &cfg).is_pass());
    }

    #[test]
    fn interval_gluing_hits_faces() {
        let c = HomotopyChain::forward(shift(0.0, 1.0)).then(&HomotopyChain::backward(shift(0.5, 1.0)));
        let g = chain_to_interval_homotopy(&c, 2.0, 3.0).unwrap();
        let x = Point::scalar(0.0);
        assert_eq!(g.eval_chart(&x, 2.0).coord(0), 0.0);
        assert_eq!(g.eval_chart(&x, 2.5).coord(0), 1.0);
        assert_eq!(g.eval_chart(&x, 3.0).coord(0), 0.5);
        assert!(chain_to_interval_homotopy(&c, 1.0, 0.0).is_err());
    }

    #[test]
    fn pruning_keeps_moving_steps() {
        let id = DMap::identity(&r());
        let c = HomotopyChain::stationary(&id)
            .then(&HomotopyChain::forward(shift(0.0, 1.0)))
            .then(&HomotopyChain::stationary(&id));
        let pts = [Point::scalar(0.0)];
        assert_eq!(c.prune_stationary(&pts, &CheckConfig::default()).len(), 1);
        let s = HomotopyChain::stationary(&id).then(&HomotopyChain::stationary(&id));
        assert_eq!(s.prune_stationary(&pts, &CheckConfig::default()).len(), 1);
        assert!(s.is_stationary(&pts, &CheckConfig::default()));
    }

    #[test]
    fn drift_measures_base_motion() {
        let v = VerticalChain {
            chain: HomotopyChain::forward(shift(0.0, 1.0)),
            base: DMap::new(&r(), &r(), |_| Point::scalar(0.0)),
            anchor: DMap::identity(&r()),
        };
        assert_eq!(v.max_drift(&[Point::scalar(1.0)], &CheckConfig::default()), 0.0);
        let moving = VerticalChain { base: DMap::identity(&r()), ..v };
        assert_eq!(moving.max_drift(&[Point::scalar(1.0)], &CheckConfig::default()), 1.0);
    }
}
