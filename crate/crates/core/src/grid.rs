use alloc::vec::Vec;

use crate::math::sort_dedup;
use crate::{Error, Result};

/// Default tolerance for piecewise-linear constructions.
pub const PL_TOLERANCE: f64 = 1e-9;
/// Default tolerance when nonlinear maps are involved.
pub const NONLINEAR_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_RESOLUTION: usize = 101;

/// Uniform grid on [0,1] with `resolution` points plus mandatory extras.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleGrid {
    resolution: usize,
    mandatory: Vec<f64>,
}

impl SampleGrid {
    pub fn new(resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::GridTooSmall(resolution));
        }
        Ok(SampleGrid {
            resolution,
            mandatory: alloc::vec![0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0],
        })
    }

    /// Adds mandatory parameters; each must lie in [0,1].
    pub fn with_points(mut self, extra: &[f64]) -> Result<Self> {
        for &t in extra {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::ParameterOutOfRange(t));
            }
            self.mandatory.push(t);
        }
        sort_dedup(&mut self.mandatory);
        Ok(self)
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn mandatory(&self) -> &[f64] {
        &self.mandatory
    }

    pub fn points(&self) -> Vec<f64> {
        self.points_with(&[])
    }

    /// Grid points merged with `extra` (values outside [0,1] are dropped).
    pub fn points_with(&self, extra: &[f64]) -> Vec<f64> {
        let n = self.resolution - 1;
        let mut v: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        v.extend_from_slice(&self.mandatory);
        v.extend(extra.iter().copied().filter(|t| (0.0..=1.0).contains(t)));
        sort_dedup(&mut v);
        v
    }

    /// Points mapped affinely onto [a,b].
    pub fn points_on(&self, a: f64, b: f64, extra: &[f64]) -> Vec<f64> {
        let mut v: Vec<f64> = self.points_with(&[]).into_iter().map(|u| a + (b - a) * u).collect();
        v.extend(extra.iter().copied().filter(|t| *t >= a && *t <= b));
        sort_dedup(&mut v);
        v
    }
}

impl Default for SampleGrid {
    fn default() -> Self {
        SampleGrid::new(DEFAULT_RESOLUTION).expect("default resolution is valid")
    }
}

/// Grid and tolerance used by a certification run.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckConfig {
    pub grid: SampleGrid,
    pub tol: f64,
}

impl CheckConfig {
    pub fn new(grid: SampleGrid, tol: f64) -> Self {
        CheckConfig { grid, tol }
    }

    pub fn piecewise_linear() -> Self {
        CheckConfig { grid: SampleGrid::default(), tol: PL_TOLERANCE }
    }

    pub fn nonlinear() -> Self {
        CheckConfig { grid: SampleGrid::default(), tol: NONLINEAR_TOLERANCE }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_resolution(mut self, resolution: usize) -> Result<Self> {
        let extra = self.grid.mandatory.clone();
        self.grid = SampleGrid::new(resolution)?.with_points(&extra)?;
        Ok(self)
    }
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig::piecewise_linear()
    }
}
