use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::certificate::{Certificate, Witness, Worst};
use crate::grid::{CheckConfig, SampleGrid};
use crate::math::{max, sort_dedup};
use crate::point::{curve_params, Point};
use crate::space::{DSpace, Sample};
use crate::{Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type PathFn = Arc<dyn Fn(f64) -> Point + Send + Sync>;

/// A map of the unit interval given as a closure with its breakpoints.
#[derive(Clone)]
pub struct IntervalMap {
    f: ScalarFn,
    breakpoints: Vec<f64>,
}

impl fmt::Debug for IntervalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntervalMap(breakpoints={:?})", self.breakpoints)
    }
}

impl IntervalMap {
    pub fn new(breakpoints: Vec<f64>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        let mut breakpoints = breakpoints;
        sort_dedup(&mut breakpoints);
        IntervalMap { f: Arc::new(f), breakpoints }
    }

    pub fn identity() -> Self {
        IntervalMap::new(Vec::new(), |t| t)
    }

    /// `t ↦ a + (b - a) t`.
    pub fn affine(a: f64, b: f64) -> Self {
        IntervalMap::new(Vec::new(), move |t| a + (b - a) * t)
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &IntervalMap) -> IntervalMap {
        let mut bps = self.breakpoints.clone();
        bps.extend(then.breakpoints.iter().filter_map(|&b| self.preimage(b)));
        let (f, g) = (self.f.clone(), then.f.clone());
        IntervalMap::new(bps, move |t| g(f(t)))
    }

    /// Smallest `t` with `self(t) >= y`, assuming `self` is nondecreasing.
    pub fn preimage(&self, y: f64) -> Option<f64> {
        let (lo_v, hi_v) = (self.eval(0.0), self.eval(1.0));
        if lo_v >= y {
            return Some(0.0);
        }
        if hi_v < y {
            return None;
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) >= y {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }

    /// Checks that the map is a nondecreasing self-map of [0,1] fixing 0 and 1.
    pub fn check_reparametrization(&self, grid: &SampleGrid, tol: f64) -> Result<()> {
        let pts = grid.points_with(&self.breakpoints);
        let vals: Vec<f64> = pts.iter().map(|&t| self.eval(t)).collect();
        let mut end_defect = max((vals[0] - 0.0).abs(), (vals[vals.len() - 1] - 1.0).abs());
        for &v in &vals {
            end_defect = max(end_defect, max(-v, v - 1.0));
        }
        if end_defect > tol {
            return Err(Error::NotEndpointPreserving(end_defect));
        }
        let mut peak = (vals[0], pts[0]);
        for (&t, &v) in pts.iter().zip(&vals).skip(1) {
            if peak.0 - v > tol {
                return Err(Error::NotMonotone { drop: peak.0 - v, at: peak.1 });
            }
            if v > peak.0 {
                peak = (v, t);
            }
        }
        Ok(())
    }
}

/// A path in a directed space: an evaluable map from [0,1] with breakpoints.
/// Pieces are left-closed: on `[b_i, b_{i+1})` the i-th formula applies.
#[derive(Clone)]
pub struct DPath {
    f: PathFn,
    breakpoints: Vec<f64>,
    space: DSpace,
}

impl fmt::Debug for DPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DPath(in {}, breakpoints={:?})", self.space.label(), self.breakpoints)
    }
}

impl DPath {
    pub fn new(space: &DSpace, breakpoints: Vec<f64>, f: impl Fn(f64) -> Point + Send + Sync + 'static) -> Self {
        DPath::from_arc(space, breakpoints, Arc::new(f))
    }

    pub fn from_arc(space: &DSpace, breakpoints: Vec<f64>, f: PathFn) -> Self {
        let mut breakpoints = breakpoints;
        breakpoints.retain(|t| (0.0..=1.0).contains(t));
        sort_dedup(&mut breakpoints);
        DPath { f, breakpoints, space: space.clone() }
    }

    pub fn eval(&self, t: f64) -> Point {
        (self.f)(t)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn space(&self) -> &DSpace {
        &self.space
    }

    pub fn constant(space: &DSpace, x: Point) -> Self {
        DPath::new(space, Vec::new(), move |_| x.clone())
    }

    /// Piecewise-linear path through `knots`; the first knot must sit at 0
    /// and the last at 1, parameters strictly increasing.
    pub fn piecewise_linear(space: &DSpace, knots: Vec<(f64, Point)>) -> Result<Self> {
        let ok_ends = knots.first().map(|k| k.0) == Some(0.0) && knots.last().map(|k| k.0) == Some(1.0);
        if !ok_ends {
            let bad = knots.first().map(|k| k.0).unwrap_or(f64::NAN);
            return Err(Error::ParameterOutOfRange(bad));
        }
        for w in knots.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::NotMonotone { drop: w[0].0 - w[1].0, at: w[0].0 });
            }
            if w[1].1.dim() != w[0].1.dim() {
                return Err(Error::DimensionMismatch { expected: w[0].1.dim(), found: w[1].1.dim() });
            }
        }
        let bps: Vec<f64> = knots.iter().map(|k| k.0).collect();
        Ok(DPath::new(space, bps, move |t| {
            let t = t.clamp(0.0, 1.0);
            let i = knots.partition_point(|k| k.0 <= t).clamp(1, knots.len() - 1);
            let (t0, p0) = (&knots[i - 1].0, &knots[i - 1].1);
            let (t1, p1) = (&knots[i].0, &knots[i].1);
            let s = (t - t0) / (t1 - t0);
            Point::new(p0.coords().iter().zip(p1.coords()).map(|(a, b)| a + (b - a) * s).collect())
        }))
    }

    /// `t ↦ self(h(t))`. `h` is trusted; see [`build_path`] for a checked version.
    pub fn reparametrize(&self, h: &IntervalMap) -> DPath {
        let mut bps = h.breakpoints.clone();
        bps.extend(self.breakpoints.iter().filter_map(|&b| h.preimage(b)));
        let (f, g) = (self.f.clone(), h.f.clone());
        DPath::new(&self.space, bps, move |t| f(g(t)))
    }

    /// Left half `self(2t)` then right half `other(2t - 1)`, switching at 1/2.
    pub fn concatenate(&self, other: &DPath, tol: f64) -> Result<DPath> {
        let gap = self.eval(1.0).distance(&other.eval(0.0));
        if !(gap <= tol) {
            return Err(Error::EndpointMismatch { gap });
        }
        let mut bps: Vec<f64> = self.breakpoints.iter().map(|b| b / 2.0).collect();
        bps.push(0.5);
        bps.extend(other.breakpoints.iter().map(|b| (b + 1.0) / 2.0));
        let (f, g) = (self.f.clone(), other.f.clone());
        Ok(DPath::new(&self.space, bps, move |t| if t < 0.5 { f(2.0 * t) } else { g(2.0 * t - 1.0) }))
    }

    /// `t ↦ self(1 - t)` as a path of the opposite space.
    pub fn opposite(&self) -> DPath {
        self.reversed().retag(&DSpace::opposite(&self.space))
    }

    /// `t ↦ self(1 - t)` in the same space (generally not directed).
    pub fn reversed(&self) -> DPath {
        let bps = self.breakpoints.iter().map(|b| 1.0 - b).collect();
        let f = self.f.clone();
        DPath::new(&self.space, bps, move |t| f(1.0 - t))
    }

    /// Same evaluation, declared to live in `space`.
    pub fn retag(&self, space: &DSpace) -> DPath {
        DPath { f: self.f.clone(), breakpoints: self.breakpoints.clone(), space: space.clone() }
    }

    pub fn sample(&self, params: &[f64]) -> Vec<(f64, Point)> {
        params.iter().map(|&t| (t, self.eval(t))).collect()
    }

    /// Sup distance on the curve vocabulary merged with both breakpoint sets.
    pub fn distance(&self, other: &DPath) -> f64 {
        let mut extra = self.breakpoints.clone();
        extra.extend_from_slice(&other.breakpoints);
        curve_params(&extra)
            .into_iter()
            .fold(0.0, |d, t| max(d, self.eval(t).distance(&other.eval(t))))
    }
}

/// Path constructors with validation.
#[derive(Clone)]
pub enum PathOp {
    Constant(DSpace, Point),
    Reparametrize(DPath, IntervalMap),
    Concatenate(DPath, DPath),
    Opposite(DPath),
}

pub fn build_path(op: PathOp, cfg: &CheckConfig) -> Result<DPath> {
    match op {
        PathOp::Constant(space, x) => Ok(DPath::constant(&space, x)),
        PathOp::Reparametrize(a, h) => {
            h.check_reparametrization(&cfg.grid, cfg.tol)?;
            Ok(a.reparametrize(&h))
        }
        PathOp::Concatenate(a, b) => a.concatenate(&b, cfg.tol),
        PathOp::Opposite(a) => Ok(a.opposite()),
    }
}

/// Carrier membership and oracle acceptance of a sample, as one certificate.
pub fn certify_sample(space: &DSpace, sample: &Sample, tol: f64, contract: &str) -> Certificate {
    let mut carrier = Worst::new();
    for (t, p) in sample {
        carrier.record(space.defect(p), || Witness::new(alloc::vec![*t], p.coords().to_vec(), "outside carrier"));
    }
    let v = space.oracle_violation(sample);
    let mut order = Worst::new();
    order.record(v.amount, || {
        let (s, u) = v.at.unwrap_or((f64::NAN, f64::NAN));
        let mut values = Vec::new();
        for (t, p) in sample {
            if *t == s || *t == u {
                values.extend_from_slice(p.coords());
            }
        }
        Witness::new(alloc::vec![s, u], values, "not directed between params")
    });
    carrier.merge(order);
    carrier.certify(contract, tol)
}

/// Samples `a` on the grid plus its breakpoints and checks it is a directed
/// path of `space`.
pub fn certify_directed_path(space: &DSpace, a: &DPath, cfg: &CheckConfig) -> Certificate {
    let params = cfg.grid.points_with(a.breakpoints());
    certify_sample(space, &a.sample(&params), cfg.tol, "directed path")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::StandardKind;
    use crate::Verdict;
    use alloc::vec;

    fn line(space: &DSpace, a: f64, b: f64) -> DPath {
        DPath::new(space, vec![], move |t| Point::scalar(a + (b - a) * t))
    }

    #[test]
    fn concatenation_switches_at_half() {
        let i = DSpace::interval();
        let a = line(&i, 0.0, 0.5);
        let b = line(&i, 0.5, 1.0);
        let c = a.concatenate(&b, 1e-12).unwrap();
        assert_eq!(c.eval(0.25).coord(0), 0.25);
        assert!((c.eval(0.5).coord(0) - a.eval(1.0).coord(0)).abs() < 1e-12);
        assert_eq!(c.breakpoints(), &[0.5]);
        assert!(certify_directed_path(&i, &c, &CheckConfig::default()).is_pass());
        let bad = a.concatenate(&line(&i, 0.6, 1.0), 1e-9);
        assert!(matches!(bad, Err(Error::EndpointMismatch { .. })));
    }

    #[test]
    fn decreasing_path_fails_with_witness() {
        let i = DSpace::interval();
        let c = certify_directed_path(&i, &line(&i, 1.0, 0.0), &CheckConfig::default());
        assert_eq!(c.verdict, Verdict::Fail);
        assert!((c.max_violation - 1.0).abs() < 1e-12);
        let w = c.witness.unwrap();
        assert_eq!(w.params, vec![0.0, 1.0]);
    }

    #[test]
    fn opposite_path_is_directed_in_opposite_space() {
        let i = DSpace::interval();
        let a = line(&i, 0.2, 0.9);
        let op = a.opposite();
        assert!(certify_directed_path(op.space(), &op, &CheckConfig::default()).is_pass());
        assert!(!certify_directed_path(&i, &op, &CheckConfig::default()).is_pass());
        let back = op.opposite();
        assert!(certify_directed_path(back.space(), &back, &CheckConfig::default()).is_pass());
    }

    #[test]
    fn reparametrization_is_checked() {
        let i = DSpace::interval();
        let a = line(&i, 0.0, 1.0);
        let sq = IntervalMap::new(vec![], |t| t * t);
        let cfg = CheckConfig::default();
        let b = build_path(PathOp::Reparametrize(a.clone(), sq), &cfg).unwrap();
        assert_eq!(b.eval(0.5).coord(0), 0.25);
        let bad = IntervalMap::new(vec![], |t| 1.0 - t);
        assert!(build_path(PathOp::Reparametrize(a.clone(), bad), &cfg).is_err());
        let dip = IntervalMap::new(vec![0.5], |t| if t < 0.5 { t } else { 1.5 * t - 0.5 });
        assert!(matches!(
            build_path(PathOp::Reparametrize(a, dip), &cfg),
            Err(Error::NotMonotone { .. })
        ));
    }

    #[test]
    fn piecewise_linear_hits_knots() {
        let r2 = DSpace::standard(StandardKind::DirectedRn, 2).unwrap();
        let p = DPath::piecewise_linear(
            &r2,
            vec![
                (0.0, Point::from_slice(&[0.0, 0.0])),
                (0.25, Point::from_slice(&[1.0, 0.0])),
                (1.0, Point::from_slice(&[1.0, 3.0])),
            ],
        )
        .unwrap();
        assert_eq!(p.eval(0.25).coords(), &[1.0, 0.0]);
        assert_eq!(p.eval(0.125).coords(), &[0.5, 0.0]);
        assert!((p.eval(0.625).coord(1) - 1.5).abs() < 1e-15);
        assert_eq!(p.breakpoints(), &[0.0, 0.25, 1.0]);
    }

    #[test]
    fn preimage_of_monotone_map() {
        let h = IntervalMap::new(vec![], |t| t * t);
        assert!((h.preimage(0.25).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(h.preimage(2.0), None);
    }
}
