use alloc::sync::Arc;

use super::pack::EquivalencePack;
use crate::fibration::{epsilon_pair, FibrationWitness};
use crate::grid::CheckConfig;
use crate::homotopy::{shape_path, DHomotopy, HomotopyChain, ShapeKind};
use crate::map::DMap;
use crate::path::DPath;
use crate::point::Point;
use crate::space::DSpace;
use crate::{Alpha, Error, Result};

/// `p⁻¹(b)` as a subspace of `E`.
#[derive(Clone, Debug)]
pub struct FiberSpace {
    pub base_point: Point,
    pub space: DSpace,
}

pub fn fiber_space(w: &FibrationWitness, b: &Point) -> FiberSpace {
    let (p, b2) = (w.p.clone(), b.clone());
    let space = DSpace::subspace(
        w.total(),
        alloc::format!("fibre over {:?}", b.coords()),
        Arc::new(move |e: &Point| p.apply(e).distance(&b2)),
    );
    FiberSpace { base_point: b.clone(), space }
}

#[derive(Clone, Debug)]
pub struct FiberTransport {
    pub source: FiberSpace,
    pub target: FiberSpace,
    pub plateau: DPath,
    pub pack: EquivalencePack,
}

/// Transport between the fibres over `ω(0)` and `ω(1)` along a directed path.
/// `f(e) = λ_{1/3}(e, ω̃)(1)`, `g(e') = λ^{2/3}(e', ω̃)(0)` with `ω̃` the
/// plateaued path; chains `g∘f ⪰ φ_0 ⪯ id` and `f∘g ⪯ φ'_1 ⪰ id`.
/// `probes` must be points of the source fibre.
pub fn fiber_transport(w: &FibrationWitness, omega: &DPath, probes: &[Point], cfg: &CheckConfig) -> Result<FiberTransport> {
    if probes.is_empty() {
        return Err(Error::NoProbes("source fibre"));
    }
    let (b1, b2) = (omega.eval(0.0), omega.eval(1.0));
    for e in probes {
        let gap = w.p.apply(e).distance(&b1);
        if !(gap <= cfg.tol) {
            return Err(Error::Precondition { contract: "ω(0) = p(e) for source probes".into(), violation: gap });
        }
    }
    let wt = shape_path(ShapeKind::Plateau3, omega, None)?;
    let lo = epsilon_pair(w, 1.0 / 3.0)?.lifter(Alpha::Zero);
    let hi = epsilon_pair(w, 2.0 / 3.0)?.lifter(Alpha::One);
    let source = fiber_space(w, &b1);
    let target = fiber_space(w, &b2);
    let (s, t) = (&source.space, &target.space);

    let f = {
        let (lo, wt) = (lo.clone(), wt.clone());
        DMap::new(s, t, move |e| lo(e, &wt).eval(1.0))
    };
    let g = {
        let (hi, wt) = (hi.clone(), wt.clone());
        DMap::new(t, s, move |e| hi(e, &wt).eval(0.0))
    };
    let phi = {
        let (lo, hi, wt) = (lo.clone(), hi.clone(), wt.clone());
        DHomotopy::new(s, s, wt.breakpoints().to_vec(), move |e, tt| {
            let x = lo(e, &wt).eval(tt);
            let theta = shape_path(ShapeKind::ClampBelow, &wt, Some(tt)).expect("t in [0,1]");
            hi(&x, &theta).eval(0.0)
        })
    };
    let psi = {
        let (hi, b) = (hi.clone(), wt.eval(0.0));
        let base = w.base().clone();
        DHomotopy::new(s, s, alloc::vec::Vec::new(), move |e, tt| hi(e, &DPath::constant(&base, b.clone())).eval(tt))
    };
    let phi_prime = {
        let (lo, hi, wt) = (lo.clone(), hi.clone(), wt.clone());
        DHomotopy::new(t, t, wt.breakpoints().to_vec(), move |e, tt| {
            let x = hi(e, &wt).eval(tt);
            let theta = shape_path(ShapeKind::ClampAbove, &wt, Some(tt)).expect("t in [0,1]");
            lo(&x, &theta).eval(1.0)
        })
    };
    let psi_prime = {
        let (lo, b) = (lo.clone(), wt.eval(1.0));
        let base = w.base().clone();
        DHomotopy::new(t, t, alloc::vec::Vec::new(), move |e, tt| lo(e, &DPath::constant(&base, b.clone())).eval(tt))
    };
    let pack = EquivalencePack {
        forward: f,
        backward: g,
        forward_chain: HomotopyChain::backward(phi).then(&HomotopyChain::forward(psi)),
        backward_chain: HomotopyChain::forward(phi_prime).then(&HomotopyChain::backward(psi_prime)),
        vertical: false,
        projections: None,
    };
    Ok(FiberTransport { source, target, plateau: wt, pack })
}
