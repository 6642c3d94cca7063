use alloc::vec::Vec;
use core::fmt;

use crate::math::{abs, max, sort_dedup};
use crate::path::DPath;
use crate::{Error, Result};

/// Number of uniform parameters at which path-valued components are compared.
pub const CURVE_VOCABULARY: usize = 65;

/// Uniform curve-comparison parameters merged with `extra` breakpoints.
pub fn curve_params(extra: &[f64]) -> Vec<f64> {
    let n = CURVE_VOCABULARY - 1;
    let mut v: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    v.extend(extra.iter().copied().filter(|t| (0.0..=1.0).contains(t)));
    sort_dedup(&mut v);
    v
}

/// A point of a carrier: real coordinates plus, for path spaces, path-valued
/// components kept as exact evaluable paths.
#[derive(Clone)]
pub struct Point {
    coords: Vec<f64>,
    curves: Vec<DPath>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point { coords, curves: Vec::new() }
    }

    /// Like [`Point::new`] but rejects non-finite coordinates.
    pub fn checked(coords: Vec<f64>) -> Result<Self> {
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Point::new(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Self {
        Point::new(coords.to_vec())
    }

    pub fn scalar(x: f64) -> Self {
        Point::new(alloc::vec![x])
    }

    pub fn with_curves(coords: Vec<f64>, curves: Vec<DPath>) -> Self {
        Point { coords, curves }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.coords[i]
    }

    pub fn curves(&self) -> &[DPath] {
        &self.curves
    }

    pub fn curve(&self, i: usize) -> &DPath {
        &self.curves[i]
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    /// Cartesian pairing: coordinates of `self` then `other`, curves likewise.
    pub fn concat(&self, other: &Point) -> Point {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        let mut curves = self.curves.clone();
        curves.extend(other.curves.iter().cloned());
        Point { coords, curves }
    }

    /// Splits after `dim` coordinates and `curves` curves.
    pub fn split_at(&self, dim: usize, curves: usize) -> (Point, Point) {
        let d = dim.min(self.coords.len());
        let c = curves.min(self.curves.len());
        (
            Point { coords: self.coords[..d].to_vec(), curves: self.curves[..c].to_vec() },
            Point { coords: self.coords[d..].to_vec(), curves: self.curves[c..].to_vec() },
        )
    }

    /// Appends one real coordinate.
    pub fn push(&self, x: f64) -> Point {
        let mut p = self.clone();
        p.coords.push(x);
        p
    }

    /// Sup distance over coordinates and over curve values at the vocabulary.
    /// Shape mismatches give +inf.
    pub fn distance(&self, other: &Point) -> f64 {
        if self.coords.len() != other.coords.len() || self.curves.len() != other.curves.len() {
            return f64::INFINITY;
        }
        let mut d = 0.0f64;
        for (a, b) in self.coords.iter().zip(&other.coords) {
            d = max(d, abs(a - b));
        }
        for (a, b) in self.curves.iter().zip(&other.curves) {
            d = max(d, a.distance(b));
        }
        d
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.curves.is_empty() {
            write!(f, "{:?}", self.coords)
        } else {
            write!(f, "{:?}+{} curve(s)", self.coords, self.curves.len())
        }
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.distance(other) == 0.0
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point::new(v)
    }
}
