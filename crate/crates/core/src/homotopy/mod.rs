//! Directed homotopies, semistationary smoothing, warps, path shapes and chains.

mod chain;
mod segment;
mod shape;
mod warp;

pub use chain::{
    certify_chain, certify_vertical_chain, chain_to_interval_homotopy, ChainStep, HomotopyChain, Orientation,
    VerticalChain,
};
pub use segment::lift_over_segment;
pub use shape::{shape_path, ShapeKind};
pub use warp::{theta_warp, MonotoneWarp};

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::certificate::{Certificate, Witness, Worst};
use crate::grid::CheckConfig;
use crate::map::DMap;
use crate::math::sort_dedup;
use crate::path::{certify_sample, DPath, IntervalMap};
use crate::point::Point;
use crate::probe::ProbeSet;
use crate::space::DSpace;
use crate::{Alpha, Error, Result};

pub type HomotopyFn = Arc<dyn Fn(&Point, f64) -> Point + Send + Sync>;

/// Which half of the interval a semistationary homotopy is constant on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Constant on [0, 1/2].
    Lower,
    /// Constant on [1/2, 1].
    Upper,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        }
    }

    /// Lower semistationary homotopies are lifted from their 0-face, upper from their 1-face.
    pub fn for_alpha(alpha: Alpha) -> Side {
        match alpha {
            Alpha::Zero => Side::Lower,
            Alpha::One => Side::Upper,
        }
    }
}

/// A homotopy `φ: X × ↑I → Y`, evaluated on the unit interval. An optional
/// affine chart `[a, b]` records the interval the unit time stands for, and
/// `reversed` marks homotopies defined on `X × (↑I)^op`.
#[derive(Clone)]
pub struct DHomotopy {
    f: HomotopyFn,
    source: DSpace,
    target: DSpace,
    t_breakpoints: Vec<f64>,
    chart: (f64, f64),
    reversed: bool,
}

impl fmt::Debug for DHomotopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DHomotopy({} x I -> {}, breakpoints={:?}, chart={:?}{})",
            self.source.label(),
            self.target.label(),
            self.t_breakpoints,
            self.chart,
            if self.reversed { ", reversed" } else { "" }
        )
    }
}

impl DHomotopy {
    pub fn new(
        source: &DSpace,
        target: &DSpace,
        t_breakpoints: Vec<f64>,
        f: impl Fn(&Point, f64) -> Point + Send + Sync + 'static,
    ) -> Self {
        DHomotopy::from_arc(source, target, t_breakpoints, Arc::new(f))
    }

    pub fn from_arc(source: &DSpace, target: &DSpace, t_breakpoints: Vec<f64>, f: HomotopyFn) -> Self {
        let mut t_breakpoints = t_breakpoints;
        t_breakpoints.retain(|t| (0.0..=1.0).contains(t));
        sort_dedup(&mut t_breakpoints);
        DHomotopy {
            f,
            source: source.clone(),
            target: target.clone(),
            t_breakpoints,
            chart: (0.0, 1.0),
            reversed: false,
        }
    }

    /// The homotopy constant in time at `g`.
    pub fn stationary(g: &DMap) -> Self {
        let f = g.func();
        DHomotopy::new(g.source(), g.target(), Vec::new(), move |x, _| f(x))
    }

    pub fn eval(&self, x: &Point, t: f64) -> Point {
        (self.f)(x, t)
    }

    /// Evaluation in chart time `s ∈ [a, b]`.
    pub fn eval_chart(&self, x: &Point, s: f64) -> Point {
        let (a, b) = self.chart;
        (self.f)(x, (s - a) / (b - a))
    }

    pub fn source(&self) -> &DSpace {
        &self.source
    }

    pub fn target(&self) -> &DSpace {
        &self.target
    }

    pub fn t_breakpoints(&self) -> &[f64] {
        &self.t_breakpoints
    }

    pub fn chart(&self) -> (f64, f64) {
        self.chart
    }

    pub fn is_time_reversed(&self) -> bool {
        self.reversed
    }

    pub fn func(&self) -> HomotopyFn {
        self.f.clone()
    }

    pub fn with_chart(mut self, a: f64, b: f64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::EmptyInterval { a, b });
        }
        self.chart = (a, b);
        Ok(self)
    }

    /// Marks the homotopy as defined on `X × (↑I)^op`.
    pub fn time_reversed(mut self, reversed: bool) -> Self {
        self.reversed = reversed;
        self
    }

    pub fn retag(&self, source: &DSpace, target: &DSpace) -> Self {
        DHomotopy { source: source.clone(), target: target.clone(), ..self.clone() }
    }

    /// `x ↦ φ(x, α)`.
    pub fn face(&self, alpha: Alpha) -> DMap {
        let (f, a) = (self.f.clone(), alpha.value());
        DMap::new(&self.source, &self.target, move |x| f(x, a))
    }

    /// `t ↦ φ(x, t)`.
    pub fn slice(&self, x: &Point) -> DPath {
        let (f, x) = (self.f.clone(), x.clone());
        DPath::new(&self.target, self.t_breakpoints.clone(), move |t| f(&x, t))
    }

    /// `g ∘ φ`.
    pub fn post(&self, g: &DMap) -> Self {
        let (f, g2) = (self.f.clone(), g.func());
        DHomotopy {
            f: Arc::new(move |x, t| g2(&f(x, t))),
            target: g.target().clone(),
            ..self.clone()
        }
    }

    /// `φ ∘ (h × id)`.
    pub fn pre(&self, h: &DMap) -> Self {
        let (f, h2) = (self.f.clone(), h.func());
        DHomotopy {
            f: Arc::new(move |x, t| f(&h2(x), t)),
            source: h.source().clone(),
            ..self.clone()
        }
    }

    /// `(x, t) ↦ φ(x, h(t))`; the chart is reset to [0, 1].
    pub fn reparam_time(&self, h: &IntervalMap) -> Self {
        let mut bps = h.breakpoints().to_vec();
        bps.extend(self.t_breakpoints.iter().filter_map(|&b| h.preimage(b)));
        let (f, h2) = (self.f.clone(), h.clone());
        let mut out = DHomotopy::new(&self.source, &self.target, bps, move |x, t| f(x, h2.eval(t)));
        out.reversed = self.reversed;
        out
    }

    /// `(x, t) ↦ φ(x, 1 - t)`, with the time direction flipped.
    pub fn reverse_time(&self) -> Self {
        let f = self.f.clone();
        let bps = self.t_breakpoints.iter().map(|b| 1.0 - b).collect();
        let mut out = DHomotopy::new(&self.source, &self.target, bps, move |x, t| f(x, 1.0 - t));
        out.reversed = !self.reversed;
        out
    }

    /// The homotopy as a map on the cylinder `X × ↑I`.
    pub fn as_map(&self) -> DMap {
        let (f, d, c) = (self.f.clone(), self.source.dim(), self.source.curves());
        DMap::new(&DSpace::cylinder(&self.source), &self.target, move |p| {
            let (x, t) = p.split_at(d, c);
            f(&x, t.coord(0))
        })
    }
}

/// The two faces `φ(·, 0)` and `φ(·, 1)`.
pub fn homotopy_faces(phi: &DHomotopy) -> (DMap, DMap) {
    (phi.face(Alpha::Zero), phi.face(Alpha::One))
}

/// Checks that `φ` is constant in time on the lower or upper half.
pub fn is_semistationary(phi: &DHomotopy, side: Side, probes: &[Point], cfg: &CheckConfig) -> Certificate {
    let params = cfg.grid.points_with(phi.t_breakpoints());
    let (anchor_t, keep): (f64, fn(f64) -> bool) = match side {
        Side::Lower => (0.0, |t| t <= 0.5),
        Side::Upper => (1.0, |t| t >= 0.5),
    };
    let mut worst = Worst::new();
    for (k, x) in probes.iter().enumerate() {
        let anchor = phi.eval(x, anchor_t);
        for &t in params.iter().filter(|&&t| keep(t)) {
            let v = phi.eval(x, t);
            worst.record(v.distance(&anchor), || {
                Witness::new(alloc::vec![t], v.coords().to_vec(), alloc::format!("probe {k} moves"))
            });
        }
    }
    worst.certify(alloc::format!("{} semistationary", side.as_str()), cfg.tol)
}

/// Lower: `φ(x,0)` on [0,1/2), `φ(x,2t-1)` after. Upper: `φ(x,2t)` on [0,1/2), `φ(x,1)` after.
pub fn smooth(phi: &DHomotopy, side: Side) -> DHomotopy {
    let f = phi.f.clone();
    let mut bps = alloc::vec![0.5];
    match side {
        Side::Lower => {
            bps.extend(phi.t_breakpoints.iter().map(|b| (b + 1.0) / 2.0));
            DHomotopy::new(&phi.source, &phi.target, bps, move |x, t| {
                if t < 0.5 {
                    f(x, 0.0)
                } else {
                    f(x, 2.0 * t - 1.0)
                }
            })
        }
        Side::Upper => {
            bps.extend(phi.t_breakpoints.iter().map(|b| b / 2.0));
            DHomotopy::new(&phi.source, &phi.target, bps, move |x, t| {
                if t < 0.5 {
                    f(x, 2.0 * t)
                } else {
                    f(x, 1.0)
                }
            })
        }
    }
}

type Schedule = fn(f64) -> f64;

const SCHEDULES: [(Schedule, &str); 6] = [
    (|s| s, "t = s"),
    (|_| 0.0, "t = 0"),
    (|_| 1.0, "t = 1"),
    (|s| s * s, "t = s^2"),
    (|s| if s < 0.5 { 0.0 } else { 2.0 * s - 1.0 }, "t = late ramp"),
    (|s| if s < 0.5 { 2.0 * s } else { 1.0 }, "t = early ramp"),
];

/// Checks directedness of `φ` as a map on the cylinder by pushing forward
/// test paths `s ↦ (a(s), σ(s))` for probe paths `a` (and constant paths at
/// probe points) and a fixed family of time schedules `σ`.
pub fn certify_homotopy(phi: &DHomotopy, probes: &ProbeSet, cfg: &CheckConfig) -> Certificate {
    let mut worst = Worst::new();
    let mut run = |label: &str, eval_x: &dyn Fn(f64) -> Point, bps: &[f64]| {
        let mut extra = bps.to_vec();
        extra.extend_from_slice(phi.t_breakpoints());
        let params = cfg.grid.points_with(&extra);
        let xs: Vec<Point> = params.iter().map(|&s| eval_x(s)).collect();
        for (sched, name) in SCHEDULES.iter() {
            let sample: Vec<(f64, Point)> = params
                .iter()
                .zip(&xs)
                .map(|(&s, x)| {
                    let t = if phi.reversed { 1.0 - sched(s) } else { sched(s) };
                    (s, phi.eval(x, t))
                })
                .collect();
            let c = certify_sample(&phi.target, &sample, cfg.tol, "");
            worst.record(c.max_violation, || {
                let mut w = c.witness.clone().unwrap_or_default();
                w.note = alloc::format!("{label}, {name}: {}", w.note);
                w
            });
        }
    };
    for (k, a) in probes.paths.iter().enumerate() {
        run(&alloc::format!("probe path {k}"), &|s| a.eval(s), a.breakpoints());
    }
    for (k, x) in probes.points.iter().enumerate() {
        run(&alloc::format!("probe point {k}"), &|_| x.clone(), &[]);
    }
    worst.certify("directed homotopy", cfg.tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::StandardKind;
    use alloc::vec;

    fn ramp() -> DHomotopy {
        let r = DSpace::standard(StandardKind::DirectedRn, 1).unwrap();
        DHomotopy::new(&r, &r, vec![], |x, t| Point::scalar(x.coord(0) + t))
    }

    #[test]
    fn smoothing_is_semistationary_and_keeps_faces() {
        let phi = ramp();
        let probes = [Point::scalar(0.0), Point::scalar(-2.0)];
        let cfg = CheckConfig::default();
        assert!(!is_semistationary(&phi, Side::Lower, &probes, &cfg).is_pass());
        for side in [Side::Lower, Side::Upper] {
            let s = smooth(&phi, side);
            assert!(is_semistationary(&s, side, &probes, &cfg).is_pass());
            let (a0, a1) = homotopy_faces(&s);
            let (b0, b1) = homotopy_faces(&phi);
            assert_eq!(a0.distance_on(&b0, &probes), 0.0);
            assert_eq!(a1.distance_on(&b1, &probes), 0.0);
        }
        let s = smooth(&phi, Side::Lower);
        assert_eq!(s.eval(&Point::scalar(0.0), 0.5).coord(0), 0.0);
        assert_eq!(s.eval(&Point::scalar(0.0), 0.75).coord(0), 0.5);
    }

    #[test]
    fn directedness_detects_decreasing_homotopy() {
        let phi = ramp();
        let probes = ProbeSet::points(vec![Point::scalar(0.0)]);
        let cfg = CheckConfig::default();
        assert!(certify_homotopy(&phi, &probes, &cfg).is_pass());
        let back = phi.reverse_time();
        assert!(certify_homotopy(&back, &probes, &cfg).is_pass());
        let plain = back.clone().time_reversed(false);
        assert!(!certify_homotopy(&plain, &probes, &cfg).is_pass());
    }

    #[test]
    fn cylinder_map_matches_eval() {
        let phi = ramp();
        let m = phi.as_map();
        assert_eq!(m.apply(&Point::from_slice(&[1.0, 0.25])).coord(0), 1.25);
    }

    #[test]
    fn chart_rejects_empty_interval() {
        assert!(matches!(ramp().with_chart(1.0, 1.0), Err(Error::EmptyInterval { .. })));
        let h = ramp().with_chart(2.0, 4.0).unwrap();
        assert_eq!(h.eval_chart(&Point::scalar(0.0), 3.0).coord(0), 0.5);
    }
}
