use alloc::vec::Vec;

use crate::path::DPath;
use crate::point::Point;

/// Points and directed paths of a space at which contracts are sampled.
#[derive(Clone, Debug, Default)]
pub struct ProbeSet {
    pub points: Vec<Point>,
    pub paths: Vec<DPath>,
}

impl ProbeSet {
    pub fn new(points: Vec<Point>, paths: Vec<DPath>) -> Self {
        ProbeSet { points, paths }
    }

    pub fn points(points: Vec<Point>) -> Self {
        ProbeSet { points, paths: Vec::new() }
    }

    /// Points are the paths' values at 0, 1/2 and 1.
    pub fn from_paths(paths: Vec<DPath>) -> Self {
        let points = paths
            .iter()
            .flat_map(|a| [a.eval(0.0), a.eval(0.5), a.eval(1.0)])
            .collect();
        ProbeSet { points, paths }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.paths.is_empty()
    }
}
