//! Resolves scenario descriptors into spaces, witnesses and probe models.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use dirfib_core::fibration::{
    identity_fibration, make_product_fibration, make_wedge_fibration, max_structure_fibration, opposite_fibration,
    pullback_fibration, wedge_spaces, FibrationWitness, Flavor, LiftFn, LiftingPair,
};
use dirfib_core::{Carrier, Certificate, CheckConfig, DMap, DPath, DSpace, Point, StandardKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::probes::{random_path, FiberSampler, PathFamily, ProbeModel};
use crate::scenario::{MapDesc, Scenario, SpaceDesc, WitnessDesc};

#[derive(Clone)]
pub struct SpaceEntry {
    pub space: DSpace,
    pub family: PathFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessShape {
    Product { base: String, fiber: String },
    Identity,
    Wedge,
    Pullback,
    Opposite,
    MaxStructure,
}

#[derive(Clone)]
pub struct WitnessEntry {
    pub witness: FibrationWitness,
    pub model: ProbeModel,
    pub shape: WitnessShape,
    pub nonlinear: bool,
    /// Checks made while building (e.g. the re-certified max-structure pair).
    pub construction: Vec<Certificate>,
}

pub struct Registry {
    pub spaces: BTreeMap<String, SpaceEntry>,
    pub witnesses: BTreeMap<String, WitnessEntry>,
}

fn standard_family(kind: StandardKind, dim: usize) -> PathFamily {
    match kind {
        StandardKind::DirectedIn => PathFamily::Monotone { dim, lo: 0.0, hi: 1.0 },
        StandardKind::DirectedRn => PathFamily::Monotone { dim, lo: -3.0, hi: 3.0 },
        StandardKind::NaturalIn => PathFamily::Free { dim, lo: 0.0, hi: 1.0 },
        StandardKind::NaturalRn => PathFamily::Free { dim, lo: -3.0, hi: 3.0 },
    }
}

pub fn wedge_family() -> PathFamily {
    PathFamily::Wedge { lo: -2.0, hi: 2.0, decreasing: false }
}

fn map_fn(m: &MapDesc) -> Arc<dyn Fn(&Point) -> Point + Send + Sync> {
    match *m {
        MapDesc::Power { exponent } => Arc::new(move |p| Point::new(p.coords().iter().map(|x| x.powi(exponent)).collect())),
        MapDesc::Affine { scale, shift } => Arc::new(move |p| Point::new(p.coords().iter().map(|x| scale * x + shift).collect())),
    }
}

impl Registry {
    pub fn build(s: &Scenario, cfg: &CheckConfig) -> anyhow::Result<Registry> {
        let mut r = Registry { spaces: BTreeMap::new(), witnesses: BTreeMap::new() };
        for name in s.spaces.keys() {
            r.space(s, name, &mut Vec::new())?;
        }
        for name in s.witnesses.keys() {
            r.witness(s, name, cfg, &mut Vec::new())?;
        }
        Ok(r)
    }

    fn space(&mut self, s: &Scenario, name: &str, stack: &mut Vec<String>) -> anyhow::Result<SpaceEntry> {
        if let Some(e) = self.spaces.get(name) {
            return Ok(e.clone());
        }
        if stack.iter().any(|n| n == name) {
            bail!("spaces.{name}: cyclic definition ({} → {name})", stack.join(" → "));
        }
        stack.push(name.to_string());
        let desc = s.spaces.get(name).ok_or_else(|| anyhow!("unknown space `{name}`"))?;
        let entry = match desc {
            SpaceDesc::Standard { standard, dim } => {
                let kind = StandardKind::parse(standard).with_context(|| format!("spaces.{name}.standard"))?;
                let space = DSpace::standard(kind, *dim).with_context(|| format!("spaces.{name}.dim"))?;
                SpaceEntry { space, family: standard_family(kind, *dim) }
            }
            SpaceDesc::Product { left, right } => {
                let (a, b) = (self.space(s, left, stack)?, self.space(s, right, stack)?);
                SpaceEntry {
                    space: DSpace::product(&a.space, &b.space),
                    family: PathFamily::Product(Box::new(a.family), Box::new(b.family)),
                }
            }
            SpaceDesc::Cylinder { of } => {
                let a = self.space(s, of, stack)?;
                SpaceEntry {
                    space: DSpace::cylinder(&a.space),
                    family: PathFamily::Product(
                        Box::new(a.family),
                        Box::new(PathFamily::Monotone { dim: 1, lo: 0.0, hi: 1.0 }),
                    ),
                }
            }
            SpaceDesc::Opposite { of } => {
                let a = self.space(s, of, stack)?;
                SpaceEntry { space: DSpace::opposite(&a.space), family: a.family.opposite() }
            }
            SpaceDesc::Wedge => SpaceEntry { space: wedge_spaces().0, family: wedge_family() },
        };
        stack.pop();
        self.spaces.insert(name.to_string(), entry.clone());
        Ok(entry)
    }

    fn witness(&mut self, s: &Scenario, name: &str, cfg: &CheckConfig, stack: &mut Vec<String>) -> anyhow::Result<WitnessEntry> {
        if let Some(e) = self.witnesses.get(name) {
            return Ok(e.clone());
        }
        if stack.iter().any(|n| n == name) {
            bail!("witnesses.{name}: cyclic definition ({} → {name})", stack.join(" → "));
        }
        stack.push(name.to_string());
        let desc = s.witnesses.get(name).ok_or_else(|| anyhow!("unknown witness `{name}`"))?;
        let ctx = || format!("witnesses.{name}");
        let entry = match desc {
            WitnessDesc::Product { base, fiber } => {
                let (b, f) = (self.spaces[base].clone(), self.spaces[fiber].clone());
                WitnessEntry {
                    witness: make_product_fibration(&b.space, &f.space),
                    model: ProbeModel { base: b.family, fiber: FiberSampler::Product(f.family) },
                    shape: WitnessShape::Product { base: base.clone(), fiber: fiber.clone() },
                    nonlinear: false,
                    construction: vec![],
                }
            }
            WitnessDesc::Identity { base } => {
                let b = self.spaces[base].clone();
                WitnessEntry {
                    witness: identity_fibration(&b.space),
                    model: ProbeModel { base: b.family, fiber: FiberSampler::Product(PathFamily::Free { dim: 0, lo: 0.0, hi: 0.0 }) },
                    shape: WitnessShape::Identity,
                    nonlinear: false,
                    construction: vec![],
                }
            }
            WitnessDesc::Wedge => {
                let (w, _) = make_wedge_fibration(cfg).with_context(ctx)?;
                WitnessEntry {
                    witness: w,
                    model: ProbeModel { base: PathFamily::Monotone { dim: 1, lo: -2.0, hi: 2.0 }, fiber: FiberSampler::Wedge },
                    shape: WitnessShape::Wedge,
                    nonlinear: false,
                    construction: vec![],
                }
            }
            WitnessDesc::Pullback { of, map } => {
                let inner = self.witness(s, of, cfg, stack)?;
                let f = map_fn(map);
                let base = inner.witness.base().clone();
                let fm = DMap::from_arc(&base, &base, f.clone());
                let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
                let probes: Vec<DPath> = (0..8).map(|_| random_path(&base, &inner.model.base, None, &mut rng)).collect();
                let w = pullback_fibration(&inner.witness, &fm, &probes, cfg).with_context(ctx)?;
                let nonlinear = match map {
                    MapDesc::Power { exponent } => *exponent != 1 && *exponent != 0,
                    MapDesc::Affine { .. } => false,
                };
                WitnessEntry {
                    witness: w,
                    model: ProbeModel { base: inner.model.base.clone(), fiber: FiberSampler::Pullback(f, Box::new(inner.model.fiber)) },
                    shape: WitnessShape::Pullback,
                    nonlinear: nonlinear || inner.nonlinear,
                    construction: vec![],
                }
            }
            WitnessDesc::Opposite { of } => {
                let inner = self.witness(s, of, cfg, stack)?;
                WitnessEntry {
                    witness: opposite_fibration(&inner.witness),
                    model: ProbeModel { base: inner.model.base.opposite(), fiber: inner.model.fiber },
                    shape: WitnessShape::Opposite,
                    nonlinear: inner.nonlinear,
                    construction: vec![],
                }
            }
            WitnessDesc::MaxStructure { fiber_range } => {
                let [lo, hi] = *fiber_range;
                if !(lo <= hi) {
                    bail!("{}.fiber_range: empty range [{lo}, {hi}]", ctx());
                }
                let base = DSpace::standard(StandardKind::DirectedRn, 1)?;
                let plane = DSpace::standard(StandardKind::NaturalRn, 2)?;
                let lift: LiftFn = Arc::new(move |e: &Point, w: &DPath| {
                    let (y, w) = (e.coord(1), w.clone());
                    DPath::new(&plane, w.breakpoints().to_vec(), move |t| Point::from_slice(&[w.eval(t).coord(0), y]))
                });
                let pair = LiftingPair::new(Flavor::Strict, lift.clone(), lift);
                let (w, cert) = max_structure_fibration(
                    Carrier::euclidean(2),
                    Arc::new(|q: &Point| Point::scalar(q.coord(0))),
                    &base,
                    &pair,
                    &[],
                    cfg,
                )
                .with_context(ctx)?;
                WitnessEntry {
                    witness: w,
                    model: ProbeModel {
                        base: PathFamily::Monotone { dim: 1, lo: -3.0, hi: 3.0 },
                        fiber: FiberSampler::Product(PathFamily::Free { dim: 1, lo, hi }),
                    },
                    shape: WitnessShape::MaxStructure,
                    nonlinear: false,
                    construction: vec![cert],
                }
            }
        };
        stack.pop();
        self.witnesses.insert(name.to_string(), entry.clone());
        Ok(entry)
    }
}
