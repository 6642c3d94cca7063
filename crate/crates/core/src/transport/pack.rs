use alloc::vec::Vec;

use crate::certificate::{Certificate, Witness, Worst};
use crate::grid::CheckConfig;
use crate::homotopy::{certify_chain, HomotopyChain, VerticalChain};
use crate::map::{certify_dmap, DMap};
use crate::probe::ProbeSet;

/// Maps `forward: S → T`, `backward: T → S` with chains
/// `backward ∘ forward ≃ id_S` and `forward ∘ backward ≃ id_T`.
/// When `vertical` is set the chains are claimed vertical over `projections`.
#[derive(Clone, Debug)]
pub struct EquivalencePack {
    pub forward: DMap,
    pub backward: DMap,
    pub forward_chain: HomotopyChain,
    pub backward_chain: HomotopyChain,
    pub vertical: bool,
    pub projections: Option<(DMap, DMap)>,
}

fn lands_in(f: &DMap, probes: &ProbeSet, label: &str, tol: f64) -> Certificate {
    let mut w = Worst::new();
    for (k, x) in probes.points.iter().enumerate() {
        let y = f.apply(x);
        w.record(f.target().defect(&y), || Witness::new(Vec::new(), y.coords().to_vec(), alloc::format!("probe {k}")));
    }
    w.certify(label, tol)
}

fn over_base(f: &DMap, src: &DMap, tgt: &DMap, probes: &ProbeSet, label: &str, tol: f64) -> Certificate {
    let mut w = Worst::new();
    for (k, x) in probes.points.iter().enumerate() {
        let (a, b) = (tgt.apply(&f.apply(x)), src.apply(x));
        w.record(a.distance(&b), || Witness::new(Vec::new(), a.coords().to_vec(), alloc::format!("probe {k}")));
    }
    w.certify(label, tol)
}

/// Certifies maps, chains (linkage, directedness) and, for vertical packs,
/// that maps commute with the projections and chains do not drift.
pub fn certify_pack(pack: &EquivalencePack, source: &ProbeSet, target: &ProbeSet, cfg: &CheckConfig) -> Certificate {
    let tol = cfg.tol;
    let id_s = DMap::identity(pack.forward.source());
    let id_t = DMap::identity(pack.backward.source());
    let mut parts = alloc::vec![
        lands_in(&pack.forward, source, "forward lands in target", tol),
        lands_in(&pack.backward, target, "backward lands in source", tol),
    ];
    if !source.paths.is_empty() {
        let mut c = certify_dmap(&pack.forward, &source.paths, cfg);
        c.contract = "forward is a d-map".into();
        parts.push(c);
    }
    if !target.paths.is_empty() {
        let mut c = certify_dmap(&pack.backward, &target.paths, cfg);
        c.contract = "backward is a d-map".into();
        parts.push(c);
    }
    let bf = pack.forward.then(&pack.backward);
    let fb = pack.backward.then(&pack.forward);
    let mut c = certify_chain(&pack.forward_chain, Some(&bf), Some(&id_s), source, cfg);
    c.contract = "backward ∘ forward ≃ id".into();
    parts.push(c);
    let mut c = certify_chain(&pack.backward_chain, Some(&fb), Some(&id_t), target, cfg);
    c.contract = "forward ∘ backward ≃ id".into();
    parts.push(c);
    if pack.vertical {
        match &pack.projections {
            Some((ps, pt)) => {
                parts.push(over_base(&pack.forward, ps, pt, source, "forward over base", tol));
                parts.push(over_base(&pack.backward, pt, ps, target, "backward over base", tol));
                let vs = VerticalChain { chain: pack.forward_chain.clone(), base: ps.clone(), anchor: id_s };
                let vt = VerticalChain { chain: pack.backward_chain.clone(), base: pt.clone(), anchor: id_t };
                parts.push(Certificate::from_violation(
                    "forward chain vertical",
                    vs.max_drift(&source.points, cfg),
                    tol,
                    None,
                ));
                parts.push(Certificate::from_violation(
                    "backward chain vertical",
                    vt.max_drift(&target.points, cfg),
                    tol,
                    None,
                ));
            }
            None => parts.push(Certificate::failure("vertical", tol, "vertical pack without projections")),
        }
    }
    Certificate::combine("equivalence pack", tol, parts)
}
