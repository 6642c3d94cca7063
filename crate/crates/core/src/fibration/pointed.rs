use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::map::DMap;
use crate::math::max;
use crate::path::DPath;
use crate::point::{curve_params, Point};
use crate::space::{Carrier, DSpace, Sample};
use crate::Alpha;

/// Interval on which a pointed path must be stationary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Window {
    /// [0, 1/2]
    FirstHalf,
    /// [1/2, 1]
    SecondHalf,
    /// [0, ε]
    Initial(f64),
    /// [ε, 1]
    Final(f64),
}

impl Window {
    pub fn range(self) -> (f64, f64) {
        match self {
            Window::FirstHalf => (0.0, 0.5),
            Window::SecondHalf => (0.5, 1.0),
            Window::Initial(e) => (0.0, e),
            Window::Final(e) => (e, 1.0),
        }
    }

    /// The endpoint the window is attached to.
    pub fn anchor(self) -> f64 {
        match self {
            Window::FirstHalf | Window::Initial(_) => 0.0,
            Window::SecondHalf | Window::Final(_) => 1.0,
        }
    }

    pub fn edges(self) -> [f64; 2] {
        let (a, b) = self.range();
        [a, b]
    }
}

/// A point `e` of `E` with a path `ω` of `B` such that `ω(α) = p(e)`,
/// optionally stationary on a window.
#[derive(Clone, Debug)]
pub struct PointedPath {
    pub e: Point,
    pub omega: DPath,
    pub mode: Alpha,
    pub window: Option<Window>,
}

impl PointedPath {
    pub fn new(e: Point, omega: DPath, mode: Alpha, window: Option<Window>) -> Self {
        PointedPath { e, omega, mode, window }
    }

    /// Largest defect of the endpoint condition and of window stationarity.
    pub fn defect(&self, p: &DMap, window: Option<Window>) -> (f64, f64) {
        let end = self.omega.eval(self.mode.value()).distance(&p.apply(&self.e));
        (end, window.map(|w| window_defect(&self.omega, w)).unwrap_or(0.0))
    }

    pub fn validate(&self, p: &DMap, window: Option<Window>, tol: f64) -> Result<(), String> {
        let (end, stat) = self.defect(p, window);
        if !(end <= tol) {
            return Err(alloc::format!("omega({}) differs from p(e) by {end:e}", self.mode.value()));
        }
        if !(stat <= tol) {
            return Err(alloc::format!("omega moves by {stat:e} on its stationary window"));
        }
        Ok(())
    }

    /// Encodes `(e, ω)` as a point with `ω` as trailing curve component.
    pub fn to_point(&self) -> Point {
        let mut curves = self.e.curves().to_vec();
        curves.push(self.omega.clone());
        Point::with_curves(self.e.coords().to_vec(), curves)
    }
}

/// Splits a pointed-path-space point into `(e, ω)`.
pub fn split_pointed(pt: &Point) -> (Point, DPath) {
    let n = pt.curves().len();
    let (e, w) = pt.split_at(pt.dim(), n - 1);
    (e, w.curve(0).clone())
}

pub fn window_defect(omega: &DPath, w: Window) -> f64 {
    let (a, b) = w.range();
    let anchor = omega.eval(w.anchor());
    curve_params(&w.edges())
        .into_iter()
        .filter(|&s| s >= a && s <= b)
        .fold(0.0, |d, s| max(d, omega.eval(s).distance(&anchor)))
}

/// The space of pointed paths over `p: E → B` with the given mode and window.
/// Its points are `(e, ω)`; a path `τ ↦ (e_τ, ω_τ)` is directed when `e_τ` is
/// directed in `E` and `τ ↦ ω_τ(s)` is directed in `B` for every vocabulary `s`.
pub fn pointed_path_space(p: &DMap, mode: Alpha, window: Option<Window>) -> DSpace {
    let (e_space, b_space) = (p.source().clone(), p.target().clone());
    let (ed, ec) = (e_space.dim(), e_space.curves());
    let extra: Vec<f64> = window.map(|w| w.edges().to_vec()).unwrap_or_default();
    let vocab = Arc::new(curve_params(&extra));
    let (pd, es, bs, vc) = (p.clone(), e_space.clone(), b_space.clone(), vocab.clone());
    let defect = Arc::new(move |pt: &Point| {
        let (e, omega) = split_pointed(pt);
        let mut d = es.defect(&e);
        d = max(d, omega.eval(mode.value()).distance(&pd.apply(&e)));
        if let Some(w) = window {
            d = max(d, window_defect(&omega, w));
        }
        let mut extra = omega.breakpoints().to_vec();
        extra.extend_from_slice(&vc);
        let params = curve_params(&extra);
        let sample = omega.sample(&params);
        for (_, q) in &sample {
            d = max(d, bs.defect(q));
        }
        max(d, bs.oracle_violation(&sample).amount)
    });
    let label = alloc::format!(
        "pointed paths over {} (mode {}, window {:?})",
        b_space.label(),
        mode.index(),
        window.map(|w| w.range())
    );
    let carrier = Carrier::new(ed, ec + 1, label.clone(), Some(defect));
    let (es, bs) = (e_space.clone(), b_space.clone());
    let oracle = Arc::new(move |sample: &Sample| {
        let mut es_sample = Vec::with_capacity(sample.len());
        let mut paths = Vec::with_capacity(sample.len());
        for (t, pt) in sample {
            let (e, omega) = split_pointed(pt);
            es_sample.push((*t, e));
            paths.push((*t, omega));
        }
        let mut v = es.oracle_violation(&es_sample);
        for &s in vocab.iter() {
            let slice: Vec<(f64, Point)> = paths.iter().map(|(t, w)| (*t, w.eval(s))).collect();
            v = v.worse(bs.oracle_violation(&slice));
        }
        v
    });
    DSpace::custom(carrier, label, oracle)
}
