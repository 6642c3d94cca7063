use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::certificate::{Certificate, Witness, Worst};
use crate::grid::CheckConfig;
use crate::path::{certify_sample, DPath};
use crate::point::Point;
use crate::space::DSpace;
use crate::Alpha;

pub type MapFn = Arc<dyn Fn(&Point) -> Point + Send + Sync>;

/// A map between carriers, claimed to preserve directed paths.
#[derive(Clone)]
pub struct DMap {
    f: MapFn,
    source: DSpace,
    target: DSpace,
}

impl fmt::Debug for DMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DMap({} -> {})", self.source.label(), self.target.label())
    }
}

impl DMap {
    pub fn new(source: &DSpace, target: &DSpace, f: impl Fn(&Point) -> Point + Send + Sync + 'static) -> Self {
        DMap { f: Arc::new(f), source: source.clone(), target: target.clone() }
    }

    pub fn from_arc(source: &DSpace, target: &DSpace, f: MapFn) -> Self {
        DMap { f, source: source.clone(), target: target.clone() }
    }

    pub fn identity(space: &DSpace) -> Self {
        DMap::new(space, space, |p| p.clone())
    }

    pub fn constant(source: &DSpace, target: &DSpace, value: Point) -> Self {
        DMap::new(source, target, move |_| value.clone())
    }

    pub fn apply(&self, p: &Point) -> Point {
        (self.f)(p)
    }

    pub fn source(&self) -> &DSpace {
        &self.source
    }

    pub fn target(&self) -> &DSpace {
        &self.target
    }

    pub fn func(&self) -> MapFn {
        self.f.clone()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &DMap) -> DMap {
        let (f, g2) = (self.f.clone(), g.f.clone());
        DMap { f: Arc::new(move |p| g2(&f(p))), source: self.source.clone(), target: g.target.clone() }
    }

    pub fn retag(&self, source: &DSpace, target: &DSpace) -> DMap {
        DMap { f: self.f.clone(), source: source.clone(), target: target.clone() }
    }

    /// `self ∘ a` as a path of the target.
    pub fn apply_path(&self, a: &DPath) -> DPath {
        let (f, a2) = (self.f.clone(), a.clone());
        DPath::new(&self.target, a.breakpoints().to_vec(), move |t| f(&a2.eval(t)))
    }

    /// Sup distance between two maps over probe points.
    pub fn distance_on(&self, other: &DMap, probes: &[Point]) -> f64 {
        probes.iter().fold(0.0, |d, p| crate::math::max(d, self.apply(p).distance(&other.apply(p))))
    }
}

/// Checks that `f` sends every probe path to a directed path of its target
/// and every probe point into the target carrier.
pub fn certify_dmap(f: &DMap, probes: &[DPath], cfg: &CheckConfig) -> Certificate {
    let mut parts = Vec::new();
    let mut source_ok = Worst::new();
    for (k, a) in probes.iter().enumerate() {
        let params = cfg.grid.points_with(a.breakpoints());
        let src = a.sample(&params);
        let c = certify_sample(f.source(), &src, cfg.tol, "probe directed in source");
        source_ok.record(c.max_violation, || Witness::at(&[k as f64], "probe index"));
        let image: Vec<(f64, Point)> = src.iter().map(|(t, p)| (*t, f.apply(p))).collect();
        let mut img = certify_sample(f.target(), &image, cfg.tol, "image directed");
        if let Some(w) = img.witness.as_mut() {
            w.note = alloc::format!("probe {k}: {}", w.note);
        }
        parts.push(img);
    }
    parts.push(source_ok.certify("probes directed in source", cfg.tol));
    Certificate::combine("d-map", cfg.tol, parts)
}

/// `x ↦ (x, α)` into the cylinder `X × ↑I`.
pub fn face_map(x: &DSpace, alpha: Alpha) -> DMap {
    let a = alpha.value();
    DMap::new(x, &DSpace::cylinder(x), move |p| p.push(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::StandardKind;
    use alloc::vec;

    #[test]
    fn cube_is_a_dmap_on_up_r() {
        let r = DSpace::standard(StandardKind::DirectedRn, 1).unwrap();
        let f = DMap::new(&r, &r, |p| Point::scalar(p.coord(0).powi(3)));
        let probe = DPath::new(&r, vec![], |t| Point::scalar(2.0 * t - 1.0));
        assert!(certify_dmap(&f, &[probe.clone()], &CheckConfig::nonlinear()).is_pass());
        let neg = DMap::new(&r, &r, |p| Point::scalar(-p.coord(0)));
        let c = certify_dmap(&neg, &[probe], &CheckConfig::default());
        assert!(!c.is_pass());
        assert!(c.witness.unwrap().note.contains("probe 0"));
    }

    #[test]
    fn faces_land_in_cylinder() {
        let x = DSpace::standard(StandardKind::NaturalRn, 2).unwrap();
        let d1 = face_map(&x, Alpha::One);
        let p = d1.apply(&Point::from_slice(&[3.0, 4.0]));
        assert_eq!(p.coords(), &[3.0, 4.0, 1.0]);
        assert_eq!(d1.target().defect(&p), 0.0);
    }

    #[test]
    fn composition_order() {
        let r = DSpace::standard(StandardKind::NaturalRn, 1).unwrap();
        let add = DMap::new(&r, &r, |p| Point::scalar(p.coord(0) + 1.0));
        let dbl = DMap::new(&r, &r, |p| Point::scalar(p.coord(0) * 2.0));
        assert_eq!(add.then(&dbl).apply(&Point::scalar(1.0)).coord(0), 4.0);
    }
}
