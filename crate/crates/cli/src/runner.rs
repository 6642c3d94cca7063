//! Executes scenario tasks against the core library.

use std::time::Instant;

use anyhow::{anyhow, bail};
use dirfib_core::certificate::{Witness, Worst};
use dirfib_core::fibration::{
    certify_lift, check_lifting_pair, epsilon_pair, product_strict_lifter, semistationary_pair_from_lifter,
    split_pointed, weak_lift, wedge_strict_infeasibility, FibrationWitness, LiftProblem, Window,
};
use dirfib_core::homotopy::{theta_warp, DHomotopy, HomotopyChain};
use dirfib_core::transport::{
    bs_spaces_equivalence, certify_pack, cylinder_retraction, dhe_to_fhe, epsilon_spaces_equivalence, fiber_transport,
    shrinkable_check, DEFAULT_MAX_DEPTH,
};
use dirfib_core::{
    certify_directed_path, Alpha, Certificate, CheckConfig, DMap, DPath, DSpace, Point, ProbeSet, SampleGrid,
    StandardKind, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::probes::{random_path, random_warp, PathFamily};
use crate::registry::{Registry, WitnessEntry, WitnessShape};
use crate::scenario::{Scenario, TaskDesc, TaskKind, TolClass};

/// Command-line overrides.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub parallel: bool,
}

/// Outcome of one task, with the sampled objects it produced.
#[derive(Clone, Debug)]
pub struct TaskResult {
    pub name: String,
    pub tag: &'static str,
    pub expect: Verdict,
    pub certificate: Certificate,
    pub ms: f64,
    pub grid: usize,
    pub tol: f64,
    pub provenance: String,
    pub objects: Vec<(String, DPath)>,
}

impl TaskResult {
    pub fn verdict(&self) -> Verdict {
        self.certificate.verdict
    }

    pub fn as_expected(&self) -> bool {
        self.certificate.verdict == self.expect
    }
}

struct Ctx<'a> {
    reg: &'a Registry,
    cfg: CheckConfig,
    rng: ChaCha8Rng,
    objects: Vec<(String, DPath)>,
}

type Outcome = anyhow::Result<Certificate>;

/// Builds the registry and runs every task in declaration order.
pub fn run_scenario(s: &Scenario, opts: &RunOptions) -> anyhow::Result<Vec<TaskResult>> {
    let grid = SampleGrid::new(opts.grid.unwrap_or(s.grid.resolution)).map_err(|e| anyhow!("grid: {e}"))?;
    if let Some(t) = opts.tol {
        if !(t > 0.0 && t.is_finite()) {
            bail!("tol: must be positive and finite, got {t}");
        }
    }
    let base_cfg = CheckConfig::new(grid, opts.tol.unwrap_or(s.tolerances.piecewise_linear));
    let reg = Registry::build(s, &base_cfg)?;
    let run = |(i, t): (usize, &TaskDesc)| run_task(s, &reg, &base_cfg, opts, i, t);
    let results = if opts.parallel {
        s.tasks.par_iter().enumerate().map(run).collect()
    } else {
        s.tasks.iter().enumerate().map(run).collect()
    };
    Ok(results)
}

fn task_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn tol_for(s: &Scenario, reg: &Registry, opts: &RunOptions, t: &TaskDesc) -> f64 {
    if let Some(x) = opts.tol {
        return x;
    }
    let nonlinear = match t.tol_class {
        Some(c) => c == TolClass::Nonlinear,
        None => witness_name(&t.kind).and_then(|w| reg.witnesses.get(w)).is_some_and(|w| w.nonlinear),
    };
    if nonlinear {
        s.tolerances.nonlinear
    } else {
        s.tolerances.piecewise_linear
    }
}

fn witness_name(k: &TaskKind) -> Option<&str> {
    match k {
        TaskKind::LiftingPair { witness, .. }
        | TaskKind::StrictLift { witness, .. }
        | TaskKind::WeakLift { witness, .. }
        | TaskKind::PairFromLifter { witness, .. }
        | TaskKind::FiberTransport { witness, .. }
        | TaskKind::PathSpaceEquivalence { witness, .. }
        | TaskKind::Shrinkable { witness, .. }
        | TaskKind::CylinderRetraction { witness, .. } => Some(witness),
        TaskKind::Axioms { .. } | TaskKind::Warp { .. } | TaskKind::Fhe { .. } => None,
    }
}

fn run_task(s: &Scenario, reg: &Registry, base: &CheckConfig, opts: &RunOptions, index: usize, t: &TaskDesc) -> TaskResult {
    let tol = tol_for(s, reg, opts, t);
    let cfg = base.clone().with_tol(tol);
    let provenance = match witness_name(&t.kind) {
        Some(w) => reg.witnesses[w].witness.provenance.clone(),
        None => match &t.kind {
            TaskKind::Axioms { space, .. } => format!("space {}", reg.spaces[space].space.label()),
            TaskKind::Fhe { base, fiber, exponent, .. } => format!(
                "(id, c^{exponent}) on {} × {}",
                reg.spaces[base].space.label(),
                reg.spaces[fiber].space.label()
            ),
            _ => "built-in".to_string(),
        },
    };
    let mut ctx = Ctx { reg, cfg: cfg.clone(), rng: ChaCha8Rng::seed_from_u64(task_seed(s.seed, index)), objects: vec![] };
    let start = Instant::now();
    let outcome = dispatch(&mut ctx, &t.kind);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let mut certificate = outcome.unwrap_or_else(|e| error_certificate(t.kind.tag(), tol, &e));
    certificate.contract = t.kind.tag().to_string();
    TaskResult {
        name: t.name.clone(),
        tag: t.kind.tag(),
        expect: t.expect,
        certificate,
        ms,
        grid: cfg.grid.resolution(),
        tol,
        provenance,
        objects: ctx.objects,
    }
}

fn error_certificate(contract: &str, tol: f64, e: &anyhow::Error) -> Certificate {
    let mut c = Certificate::failure(contract, tol, format!("{e:#}"));
    if let Some(dirfib_core::Error::Precondition { violation, .. }) = e.downcast_ref::<dirfib_core::Error>() {
        c.max_violation = *violation;
    }
    c
}

fn dispatch(ctx: &mut Ctx, kind: &TaskKind) -> Outcome {
    let reg = ctx.reg;
    let wit = |name: &String| -> &WitnessEntry { &reg.witnesses[name] };
    match kind {
        TaskKind::Axioms { space, probes } => axioms(ctx, space, *probes),
        TaskKind::LiftingPair { witness, probes, eps } => lifting_pair(ctx, wit(witness), *probes, *eps),
        TaskKind::StrictLift { witness, start } => strict_lift(ctx, wit(witness), *start),
        TaskKind::WeakLift { witness, problems, start } => weak_lifts(ctx, wit(witness), *problems, start.as_deref()),
        TaskKind::PairFromLifter { witness, probes } => pair_from_lifter(ctx, wit(witness), *probes),
        TaskKind::Warp { eps } => warps(ctx, eps),
        TaskKind::FiberTransport { witness, from, to, probes } => {
            transport(ctx, wit(witness), from.as_deref(), to.as_deref(), *probes)
        }
        TaskKind::PathSpaceEquivalence { witness, probes, eps } => path_spaces(ctx, wit(witness), *probes, *eps),
        TaskKind::Fhe { base, fiber, exponent, probes } => fhe(ctx, base, fiber, *exponent, *probes),
        TaskKind::Shrinkable { witness, probes } => shrinkable(ctx, wit(witness), *probes),
        TaskKind::CylinderRetraction { witness, probes } => cylinder(ctx, wit(witness), *probes),
    }
}

fn axioms(ctx: &mut Ctx, space: &str, n: usize) -> Outcome {
    let entry = ctx.reg.spaces[space].clone();
    let (sp, fam, cfg) = (&entry.space, &entry.family, ctx.cfg.clone());
    let (mut directed, mut constant, mut reparam, mut concat) = (vec![], vec![], vec![], vec![]);
    for k in 0..n {
        let a = random_path(sp, fam, None, &mut ctx.rng);
        directed.push(certify_directed_path(sp, &a, &cfg));
        let c = DPath::constant(sp, a.eval(ctx.rng.gen_range(0.0..=1.0)));
        constant.push(certify_directed_path(sp, &c, &cfg));
        let h = random_warp(&mut ctx.rng);
        reparam.push(certify_directed_path(sp, &a.reparametrize(&h), &cfg));
        let b = random_path(sp, fam, Some(&a.eval(1.0)), &mut ctx.rng);
        let ab = a.concatenate(&b, cfg.tol)?;
        concat.push(certify_directed_path(sp, &ab, &cfg));
        ctx.objects.push((format!("path{k}"), a));
        ctx.objects.push((format!("concat{k}"), ab));
    }
    Ok(Certificate::combine(
        "axioms",
        cfg.tol,
        vec![
            Certificate::combine("probe paths directed", cfg.tol, directed),
            Certificate::combine("constant paths directed", cfg.tol, constant),
            Certificate::combine("reparametrizations directed", cfg.tol, reparam),
            Certificate::combine("concatenations directed", cfg.tol, concat),
        ],
    ))
}

fn lifting_pair(ctx: &mut Ctx, w: &WitnessEntry, n: usize, eps: Option<f64>) -> Outcome {
    let cfg = ctx.cfg.clone();
    let mut parts = w.construction.clone();
    let pair = match eps {
        Some(e) => {
            parts.push(theta_warp(e)?.certify(&cfg));
            epsilon_pair(&w.witness, e)?
        }
        None => w.witness.pair.clone(),
    };
    let probes = w.model.pointed_probes(w.witness.base(), &pair, n, &mut ctx.rng);
    parts.push(check_lifting_pair(&pair, &w.witness.p, &probes, &cfg)?);
    for (k, p) in probes.iter().enumerate() {
        ctx.objects.push((format!("omega{k}"), p.omega.clone()));
        ctx.objects.push((format!("lift{k}"), pair.lift(p)));
    }
    Ok(Certificate::combine("lifting pair", cfg.tol, parts))
}

fn strict_lift(ctx: &mut Ctx, w: &WitnessEntry, start: [f64; 2]) -> Outcome {
    if w.shape != WitnessShape::Wedge {
        bail!("strict_lift is decided for the wedge witness only");
    }
    let x0 = start[0];
    let h = DPath::new(w.witness.base(), vec![], move |t| Point::scalar(x0 + t));
    ctx.objects.push(("h".into(), h.clone()));
    Ok(wedge_strict_infeasibility(&Point::from_slice(&start), &h, &ctx.cfg))
}

fn lift_probes(prob: &LiftProblem) -> ProbeSet {
    let x = prob.phi.source().clone();
    let paths = if x.dim() == 1 && x.tag() == dirfib_core::StructureTag::CoordinateMonotone {
        vec![DPath::new(&x, vec![], |t| Point::scalar(t))]
    } else {
        vec![]
    };
    ProbeSet::new(prob.probes.clone(), paths)
}

fn weak_lifts(ctx: &mut Ctx, w: &WitnessEntry, n: usize, start: Option<&[f64]>) -> Outcome {
    let cfg = ctx.cfg.clone();
    let (total, base) = (w.witness.total().clone(), w.witness.base().clone());
    let problems: Vec<LiftProblem> = match start {
        Some(e0) => {
            if base.dim() != 1 {
                bail!("start: fixed problems need a one-dimensional base");
            }
            let star = DSpace::standard(StandardKind::NaturalRn, 1)?;
            let e = Point::from_slice(e0);
            let b0 = w.witness.p.apply(&e).coord(0);
            let f = DMap::constant(&star, &total, e);
            let phi = DHomotopy::new(&star, &base, vec![], move |_, t| Point::scalar(b0 + t));
            vec![LiftProblem::new(f, phi, Alpha::Zero, vec![Point::scalar(0.0)])]
        }
        None => (0..n)
            .map(|_| w.model.lift_problem(&total, &base, &mut ctx.rng))
            .collect::<Option<_>>()
            .ok_or_else(|| anyhow!("no directed homotopies can be drawn in this base"))?,
    };
    let mut parts = vec![];
    for (k, prob) in problems.iter().enumerate() {
        let sol = weak_lift(&w.witness, prob, &cfg)?;
        parts.push(certify_lift(&w.witness, prob, &sol, &lift_probes(prob), &cfg));
        parts.push(Certificate::from_violation(
            "one-step vertical chain",
            if sol.vertical.chain.len() == 1 { 0.0 } else { f64::INFINITY },
            cfg.tol,
            None,
        ));
        for (i, x) in prob.probes.iter().enumerate() {
            ctx.objects.push((format!("lift{k}_x{i}"), sol.phi_lift.slice(x)));
            for (j, step) in sol.vertical.chain.steps().iter().enumerate() {
                ctx.objects.push((format!("chain{k}_x{i}_step{j}"), step.homotopy.slice(x)));
            }
        }
    }
    Ok(Certificate::combine("weak lifts", cfg.tol, parts))
}

fn grid_distance(a: &DPath, b: &DPath, cfg: &CheckConfig) -> (f64, f64) {
    let mut extra = a.breakpoints().to_vec();
    extra.extend_from_slice(b.breakpoints());
    cfg.grid
        .points_with(&extra)
        .into_iter()
        .map(|t| (a.eval(t).distance(&b.eval(t)), t))
        .fold((0.0, 0.0), |m, x| if x.0 > m.0 || x.0.is_nan() { x } else { m })
}

fn pair_from_lifter(ctx: &mut Ctx, w: &WitnessEntry, n: usize) -> Outcome {
    let WitnessShape::Product { base, fiber } = &w.shape else {
        bail!("pair_from_lifter needs a product witness");
    };
    let cfg = ctx.cfg.clone();
    let (b, f) = (&ctx.reg.spaces[base].space, &ctx.reg.spaces[fiber].space);
    let strict = product_strict_lifter(b, f);
    let probes = w.model.pointed_probes(w.witness.base(), &w.witness.pair, n, &mut ctx.rng);
    let (pair, cert) = semistationary_pair_from_lifter(&w.witness.p, &strict, &probes, &cfg)?;
    let mut closed = Worst::new();
    for (k, p) in probes.iter().enumerate() {
        let (a, c) = (pair.lift(p), w.witness.pair.lift(p));
        let (d, t) = grid_distance(&a, &c, &cfg);
        closed.record(d, || Witness::new(vec![t], a.eval(t).coords().to_vec(), format!("probe {k}")));
        ctx.objects.push((format!("lift{k}"), a));
    }
    Ok(Certificate::combine("pair from lifter", cfg.tol, vec![cert, closed.certify("matches closed-form pair", cfg.tol)]))
}

fn warps(ctx: &mut Ctx, eps: &[f64]) -> Outcome {
    let cfg = ctx.cfg.clone();
    let mut parts = vec![];
    for &e in eps {
        let w = theta_warp(e)?;
        let mut c = w.certify(&cfg);
        c.contract = format!("θ for ε = {e}");
        parts.push(c);
        let f = w.forward.clone();
        ctx.objects.push((format!("theta_{e}"), DPath::new(&DSpace::interval(), f.breakpoints().to_vec(), move |t| Point::scalar(f.eval(t)))));
    }
    Ok(Certificate::combine("theta warps", cfg.tol, parts))
}

fn sweep(family: &PathFamily) -> Option<(Vec<f64>, Vec<f64>)> {
    match family {
        PathFamily::Monotone { dim, lo, hi } => Some((vec![*lo; *dim], vec![*hi; *dim])),
        PathFamily::Antitone { dim, lo, hi } => Some((vec![*hi; *dim], vec![*lo; *dim])),
        PathFamily::Product(a, b) => {
            let (mut a0, mut a1) = sweep(a)?;
            let (b0, b1) = sweep(b)?;
            a0.extend(b0);
            a1.extend(b1);
            Some((a0, a1))
        }
        PathFamily::Free { .. } | PathFamily::Wedge { .. } => None,
    }
}

fn transport(ctx: &mut Ctx, w: &WitnessEntry, from: Option<&[f64]>, to: Option<&[f64]>, n: usize) -> Outcome {
    let cfg = ctx.cfg.clone();
    let (lo, hi) = match (from, to) {
        (Some(a), Some(b)) => (a.to_vec(), b.to_vec()),
        _ => sweep(&w.model.base).ok_or_else(|| anyhow!("from/to: required for this base"))?,
    };
    let d = w.witness.base().dim();
    if lo.len() != d || hi.len() != d {
        bail!("from/to: expected {d} coordinates");
    }
    let omega = DPath::new(w.witness.base(), vec![], move |t| {
        Point::new(lo.iter().zip(&hi).map(|(a, b)| a + (b - a) * t).collect())
    });
    let (b0, b1) = (omega.eval(0.0), omega.eval(1.0));
    let src: Vec<Point> = (0..n).map(|_| w.model.fiber.point_over(&b0, &mut ctx.rng)).collect();
    let ft = fiber_transport(&w.witness, &omega, &src, &cfg)?;
    let mut tgt: Vec<Point> = src.iter().map(|e| ft.pack.forward.apply(e)).collect();
    tgt.extend((0..n).map(|_| w.model.fiber.point_over(&b1, &mut ctx.rng)));

    let pack = &ft.pack;
    let (gf, fg) = (pack.forward.then(&pack.backward), pack.backward.then(&pack.forward));
    let (phi, psi) = (&pack.forward_chain.steps()[0].homotopy, &pack.forward_chain.steps()[1].homotopy);
    let (phi2, psi2) = (&pack.backward_chain.steps()[0].homotopy, &pack.backward_chain.steps()[1].homotopy);
    let mut seams = vec![];
    for (label, h, t, target, pts) in [
        ("φ(e,1) = g f(e)", phi, 1.0, &gf, &src),
        ("ψ(e,1) = e", psi, 1.0, &DMap::identity(pack.forward.source()), &src),
        ("φ'(e',0) = f g(e')", phi2, 0.0, &fg, &tgt),
        ("ψ'(e',0) = e'", psi2, 0.0, &DMap::identity(pack.backward.source()), &tgt),
    ] {
        let mut worst = Worst::new();
        for (k, x) in pts.iter().enumerate() {
            let (a, b) = (h.eval(x, t), target.apply(x));
            worst.record(a.distance(&b), || Witness::new(vec![t], a.coords().to_vec(), format!("probe {k}")));
        }
        seams.push(worst.certify(label, cfg.tol));
    }
    for (k, e) in src.iter().enumerate() {
        ctx.objects.push((format!("phi{k}"), phi.slice(e)));
        ctx.objects.push((format!("psi{k}"), psi.slice(e)));
    }
    ctx.objects.push(("omega".into(), omega));
    Ok(Certificate::combine(
        "fibre transport",
        cfg.tol,
        vec![
            certify_pack(pack, &ProbeSet::points(src), &ProbeSet::points(tgt), &cfg),
            Certificate::combine("seam identities", cfg.tol, seams),
        ],
    ))
}

fn path_spaces(ctx: &mut Ctx, w: &WitnessEntry, n: usize, eps: Option<f64>) -> Outcome {
    let cfg = ctx.cfg.clone();
    let (eq, w0, w1) = match eps {
        Some(e) => (epsilon_spaces_equivalence(&w.witness, e)?, Window::Initial(e), Window::Final(e)),
        None => (bs_spaces_equivalence(&w.witness), Window::FirstHalf, Window::SecondHalf),
    };
    let base = w.witness.base();
    let src: Vec<Point> = (0..n).map(|_| w.model.pointed(base, Alpha::Zero, Some(w0), &mut ctx.rng).to_point()).collect();
    let tgt: Vec<Point> = (0..n).map(|_| w.model.pointed(base, Alpha::One, Some(w1), &mut ctx.rng).to_point()).collect();
    for (k, x) in src.iter().enumerate() {
        ctx.objects.push((format!("forward_omega{k}"), split_pointed(&eq.pack.forward.apply(x)).1));
    }
    for (k, x) in tgt.iter().enumerate() {
        ctx.objects.push((format!("backward_omega{k}"), split_pointed(&eq.pack.backward.apply(x)).1));
    }
    Ok(certify_pack(&eq.pack, &ProbeSet::points(src), &ProbeSet::points(tgt), &cfg))
}

fn product_pair(ctx: &Ctx, base: &str, fiber: &str) -> (FibrationWitness, PathFamily, PathFamily) {
    let (b, f) = (&ctx.reg.spaces[base], &ctx.reg.spaces[fiber]);
    (dirfib_core::fibration::make_product_fibration(&b.space, &f.space), b.family.clone(), f.family.clone())
}

fn straight_line(e: &DSpace, d: usize, k: i32) -> DHomotopy {
    DHomotopy::new(e, e, vec![], move |x, t| {
        let (b, c) = x.split_at(d, 0);
        b.concat(&Point::new(c.coords().iter().map(|c| (1.0 - t) * c.powi(k) + t * c).collect()))
    })
}

fn fhe(ctx: &mut Ctx, base: &str, fiber: &str, k: i32, n: usize) -> Outcome {
    let cfg = ctx.cfg.clone();
    let (w, bf, ff) = product_pair(ctx, base, fiber);
    let (w2, _, _) = product_pair(ctx, base, fiber);
    let d = w.base().dim();
    let (e, e2) = (w.total().clone(), w2.total().clone());
    let f = DMap::new(&e, &e2, move |x| {
        let (b, c) = x.split_at(d, 0);
        b.concat(&Point::new(c.coords().iter().map(|c| c.powi(k)).collect()))
    });
    let f_inv = DMap::new(&e2, &e, |x| x.clone());
    let ff_inv = HomotopyChain::forward(straight_line(&e2, d, k));
    let f_inv_f = HomotopyChain::forward(straight_line(&e, d, k));
    let fam = PathFamily::Product(Box::new(bf), Box::new(ff));
    let probes: Vec<Point> = (0..n).map(|_| fam.point(&mut ctx.rng)).collect();
    let pack = dhe_to_fhe(&w, &w2, &f, &f_inv, &ff_inv, &f_inv_f, &probes, &probes, &cfg, DEFAULT_MAX_DEPTH)?;
    for (k, x) in probes.iter().enumerate() {
        for (j, s) in pack.forward_chain.steps().iter().enumerate() {
            ctx.objects.push((format!("forward_chain_x{k}_step{j}"), s.homotopy.slice(x)));
        }
    }
    let ps = ProbeSet::points(probes);
    Ok(certify_pack(&pack, &ps, &ps, &cfg))
}

fn shrinkable(ctx: &mut Ctx, w: &WitnessEntry, n: usize) -> Outcome {
    let WitnessShape::Product { fiber, .. } = &w.shape else {
        bail!("shrinkable needs a product witness");
    };
    let cfg = ctx.cfg.clone();
    let fdim = ctx.reg.spaces[fiber].space.dim();
    let (e, b) = (w.witness.total().clone(), w.witness.base().clone());
    let d = b.dim();
    let zero = Point::new(vec![0.0; fdim]);
    if e.defect(&Point::new(vec![0.0; d]).concat(&zero)).is_infinite() {
        bail!("fibre must contain the origin");
    }
    let s = DMap::new(&b, &e, move |x| x.concat(&zero));
    let contract = DHomotopy::new(&e, &e, vec![], move |x, t| {
        let (b, c) = x.split_at(d, 0);
        b.concat(&Point::new(c.coords().iter().map(|c| t * c).collect()))
    });
    let chain = HomotopyChain::forward(contract);
    let base_pts: Vec<Point> = (0..n).map(|_| w.model.base.point(&mut ctx.rng)).collect();
    let pts: Vec<Point> = base_pts.iter().map(|b| w.model.fiber.point_over(b, &mut ctx.rng)).collect();
    for (k, x) in pts.iter().enumerate() {
        ctx.objects.push((format!("contraction{k}"), chain.steps()[0].homotopy.slice(x)));
    }
    Ok(shrinkable_check(&w.witness, &s, &chain, &ProbeSet::points(pts), &ProbeSet::points(base_pts), &cfg, DEFAULT_MAX_DEPTH))
}

fn cylinder(ctx: &mut Ctx, w: &WitnessEntry, n: usize) -> Outcome {
    let cfg = ctx.cfg.clone();
    let k = w.witness.cylinder_base.ok_or_else(|| anyhow!("witness base is not a cylinder B × ↑I"))?;
    let draw = |rng: &mut ChaCha8Rng, level: Option<f64>| {
        let mut b = w.model.base.point(rng).coords().to_vec();
        if let Some(l) = level {
            b[k] = l;
        }
        w.model.fiber.point_over(&Point::new(b), rng)
    };
    let pts: Vec<Point> = (0..n).map(|_| draw(&mut ctx.rng, None)).collect();
    let s0: Vec<Point> = (0..n).map(|_| draw(&mut ctx.rng, Some(0.0))).collect();
    let s1: Vec<Point> = (0..n).map(|_| draw(&mut ctx.rng, Some(1.0))).collect();
    let cr = cylinder_retraction(&w.witness, &pts, &cfg)?;
    for (i, e) in pts.iter().enumerate() {
        ctx.objects.push((format!("retraction{i}"), cr.retraction.slice(e)));
    }
    let mut slices = certify_pack(&cr.slices, &ProbeSet::points(s0), &ProbeSet::points(s1), &cfg);
    slices.contract = "slice equivalence".into();
    Ok(Certificate::combine(
        "cylinder",
        cfg.tol,
        vec![cr.certify(&w.witness, &ProbeSet::points(pts), &cfg), slices],
    ))
}
