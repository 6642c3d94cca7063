use alloc::vec;

use crate::certificate::{Certificate, Witness, Worst};
use crate::grid::CheckConfig;
use crate::path::IntervalMap;
use crate::{Error, Result};

/// A monotone self-map of [0,1] together with its inverse.
#[derive(Clone, Debug)]
pub struct MonotoneWarp {
    pub forward: IntervalMap,
    pub inverse: IntervalMap,
}

impl MonotoneWarp {
    /// Round trips in both directions, plus monotonicity of both maps.
    pub fn certify(&self, cfg: &CheckConfig) -> Certificate {
        let mut parts = vec![];
        for (name, a, b) in [
            ("forward ∘ inverse = id", &self.inverse, &self.forward),
            ("inverse ∘ forward = id", &self.forward, &self.inverse),
        ] {
            let mut w = Worst::new();
            for t in cfg.grid.points_with(a.breakpoints()) {
                let r = b.eval(a.eval(t));
                w.record((r - t).abs(), || Witness::new(vec![t], vec![r], "round trip"));
            }
            parts.push(w.certify(name, cfg.tol));
        }
        for (name, m) in [("forward monotone", &self.forward), ("inverse monotone", &self.inverse)] {
            parts.push(match m.check_reparametrization(&cfg.grid, cfg.tol) {
                Ok(()) => Certificate::pass(name, cfg.tol),
                Err(e) => Certificate::failure(name, cfg.tol, e),
            });
        }
        Certificate::combine("monotone warp", cfg.tol, parts)
    }
}

/// `θ(t) = 2εt` on [0,1/2), `2(1-ε)t + 2ε - 1` after; θ(1/2) = ε.
pub fn theta_warp(eps: f64) -> Result<MonotoneWarp> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::EpsilonOutOfRange(eps));
    }
    let forward = IntervalMap::new(vec![0.5], move |t| {
        if t < 0.5 {
            2.0 * eps * t
        } else {
            2.0 * (1.0 - eps) * t + 2.0 * eps - 1.0
        }
    });
    let inverse = IntervalMap::new(vec![eps], move |s| {
        if s < eps {
            s / (2.0 * eps)
        } else {
            (s + 1.0 - 2.0 * eps) / (2.0 * (1.0 - eps))
        }
    });
    Ok(MonotoneWarp { forward, inverse })
}
