use super::inverse::{improve_inverse, vertical_inverse};
use super::pack::{certify_pack, EquivalencePack};
use crate::certificate::{Certificate, Witness, Worst};
use crate::fibration::{identity_fibration, FibrationWitness};
use crate::grid::CheckConfig;
use crate::homotopy::HomotopyChain;
use crate::map::DMap;
use crate::point::Point;
use crate::probe::ProbeSet;
use crate::Result;

/// Turns a directed homotopy equivalence `f: E ⇄ E': f'` between weak
/// fibrations over the same base, with `f` over `B`, into a fibre homotopy
/// equivalence `(f, f̄')` with vertical chains.
///
/// `ff_inv` is a chain `f ∘ f' ≃ id_{E'}`, `f_inv_f` a chain `f' ∘ f ≃ id_E`.
#[allow(clippy::too_many_arguments)]
pub fn dhe_to_fhe(
    w: &FibrationWitness,
    w2: &FibrationWitness,
    f: &DMap,
    f_inv: &DMap,
    ff_inv: &HomotopyChain,
    f_inv_f: &HomotopyChain,
    probes: &[Point],
    probes2: &[Point],
    cfg: &CheckConfig,
    max_depth: usize,
) -> Result<EquivalencePack> {
    let first = improve_inverse(w, &w2.p, f, f_inv, ff_inv, probes2, cfg)?;
    let g = first.map.then(f);
    let (g_inv, v1) = vertical_inverse(w2, &g, &first.chain, probes2, cfg, max_depth)?;
    let f_bar = g_inv.then(&first.map);

    let q = first.chain.pre(&g_inv).reversed().then(&v1.chain);
    let c3 = q
        .post(&first.map)
        .pre(f)
        .then(&first.lifted.reversed().pre(f))
        .then(f_inv_f);
    let second = improve_inverse(w2, &w.p, &f_bar, f, &c3, probes, cfg)?;
    let h = second.map.then(&f_bar);
    let (h_inv, v2) = vertical_inverse(w, &h, &second.chain, probes, cfg, max_depth)?;
    let f_hat = h_inv.then(&second.map);

    let to_f = v1.chain.pre(&f_hat).reversed().then(&v2.chain.post(f));
    let forward_chain = to_f.reversed().post(&f_bar).then(&v2.chain);
    Ok(EquivalencePack {
        forward: f.clone(),
        backward: f_bar,
        forward_chain,
        backward_chain: v1.chain,
        vertical: true,
        projections: Some((w.p.clone(), w2.p.clone())),
    })
}

/// A section `s` with `p ∘ s = id_B` and a chain `s ∘ p ≃ id_E` makes `p` a
/// fibre homotopy equivalence with the identity fibration of `B`.
pub fn shrinkable_check(
    w: &FibrationWitness,
    s: &DMap,
    chain: &HomotopyChain,
    probes: &ProbeSet,
    base_probes: &ProbeSet,
    cfg: &CheckConfig,
    max_depth: usize,
) -> Certificate {
    let mut section = Worst::new();
    for (k, b) in base_probes.points.iter().enumerate() {
        let q = w.p.apply(&s.apply(b));
        section.record(q.distance(b), || Witness::new(alloc::vec::Vec::new(), q.coords().to_vec(), alloc::format!("probe {k}")));
    }
    let section = section.certify("p ∘ s = id", cfg.tol);
    let wb = identity_fibration(w.base());
    let ps = HomotopyChain::stationary(&s.then(&w.p));
    let pack = dhe_to_fhe(w, &wb, &w.p, s, &ps, chain, &probes.points, &base_probes.points, cfg, max_depth);
    let pack_cert = match pack {
        Ok(pack) => certify_pack(&pack, probes, base_probes, cfg),
        Err(e) => Certificate::failure("fibre homotopy equivalence with the base", cfg.tol, e),
    };
    Certificate::combine("shrinkable", cfg.tol, alloc::vec![section, pack_cert])
}

