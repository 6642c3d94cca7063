//! Declarative scenario files.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context};
use dirfib_core::Verdict;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub spaces: BTreeMap<String, SpaceDesc>,
    #[serde(default)]
    pub witnesses: BTreeMap<String, WitnessDesc>,
    #[serde(default)]
    pub tasks: Vec<TaskDesc>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub resolution: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { resolution: 101 }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub piecewise_linear: f64,
    pub nonlinear: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { piecewise_linear: dirfib_core::PL_TOLERANCE, nonlinear: dirfib_core::NONLINEAR_TOLERANCE }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TolClass {
    PiecewiseLinear,
    Nonlinear,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceDesc {
    /// `natural_Rn`, `natural_In`, `directed_Rn` or `directed_In`.
    Standard { standard: String, dim: usize },
    Product { left: String, right: String },
    Cylinder { of: String },
    Opposite { of: String },
    Wedge,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapDesc {
    /// `x ↦ x^exponent` coordinatewise, on a nonnegative base.
    Power { exponent: i32 },
    /// `x ↦ scale·x + shift` coordinatewise.
    Affine { scale: f64, shift: f64 },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "constructor", rename_all = "snake_case", deny_unknown_fields)]
pub enum WitnessDesc {
    Product { base: String, fiber: String },
    Identity { base: String },
    Wedge,
    Pullback { of: String, map: MapDesc },
    Opposite { of: String },
    MaxStructure {
        #[serde(default = "default_fiber_range")]
        fiber_range: [f64; 2],
    },
}

fn default_fiber_range() -> [f64; 2] {
    [-3.0, 3.0]
}

fn default_probes() -> usize {
    10
}

fn default_expect() -> Verdict {
    Verdict::Pass
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct TaskDesc {
    pub name: String,
    #[serde(default = "default_expect", with = "verdict_serde")]
    pub expect: Verdict,
    #[serde(default)]
    pub tol_class: Option<TolClass>,
    #[serde(flatten)]
    pub kind: TaskKind,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TaskKind {
    /// Constant, reparametrization and concatenation closure on random paths.
    Axioms {
        space: String,
        #[serde(default = "default_probes")]
        probes: usize,
    },
    /// The witness pair (or its ε-variant) on random pointed paths.
    LiftingPair {
        witness: String,
        #[serde(default = "default_probes")]
        probes: usize,
        #[serde(default)]
        eps: Option<f64>,
    },
    /// Strict lift of `t ↦ x0 + t` from `start` in the wedge.
    StrictLift { witness: String, start: [f64; 2] },
    /// Weak lifts of random problems, or of the constant problem at `start`.
    WeakLift {
        witness: String,
        #[serde(default = "default_probes")]
        problems: usize,
        #[serde(default)]
        start: Option<Vec<f64>>,
    },
    /// Pair rebuilt from the product strict lifter against the closed form.
    PairFromLifter {
        witness: String,
        #[serde(default = "default_probes")]
        probes: usize,
    },
    /// `θ_ε` round trips.
    Warp { eps: Vec<f64> },
    /// Transport between end fibres along `from → to` (affine).
    FiberTransport {
        witness: String,
        #[serde(default)]
        from: Option<Vec<f64>>,
        #[serde(default)]
        to: Option<Vec<f64>>,
        #[serde(default = "default_probes")]
        probes: usize,
    },
    /// Pointed-path spaces `B_0 ≃ B_1` (semistationary, or ε-windows).
    PathSpaceEquivalence {
        witness: String,
        #[serde(default = "default_probes")]
        probes: usize,
        #[serde(default)]
        eps: Option<f64>,
    },
    /// Fibre homotopy equivalence from `(id, u)` with `u(c) = c^exponent`
    /// between two copies of `base × fiber`.
    Fhe {
        base: String,
        fiber: String,
        exponent: i32,
        #[serde(default = "default_probes")]
        probes: usize,
    },
    /// Section plus vertical contraction of a product witness.
    Shrinkable {
        witness: String,
        #[serde(default = "default_probes")]
        probes: usize,
    },
    /// Deformation of a witness over `B × ↑I` onto its slices.
    CylinderRetraction {
        witness: String,
        #[serde(default = "default_probes")]
        probes: usize,
    },
}

impl TaskKind {
    pub fn tag(&self) -> &'static str {
        match self {
            TaskKind::Axioms { .. } => "d-space axioms",
            TaskKind::LiftingPair { eps: None, .. } => "lifting-pair contract",
            TaskKind::LiftingPair { eps: Some(_), .. } => "epsilon lifting-pair contract",
            TaskKind::StrictLift { .. } => "strict covering homotopy",
            TaskKind::WeakLift { .. } => "weak covering homotopy",
            TaskKind::PairFromLifter { .. } => "pair from strict lifter",
            TaskKind::Warp { .. } => "theta warp algebra",
            TaskKind::FiberTransport { .. } => "fibre transport",
            TaskKind::PathSpaceEquivalence { .. } => "pointed-path space equivalence",
            TaskKind::Fhe { .. } => "fibre homotopy equivalence",
            TaskKind::Shrinkable { .. } => "shrinkable map",
            TaskKind::CylinderRetraction { .. } => "cylinder retraction",
        }
    }
}

mod verdict_serde {
    use dirfib_core::Verdict;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Verdict, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(v.as_str())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Verdict, D::Error> {
        let s = String::deserialize(d)?;
        Verdict::parse(&s).ok_or_else(|| D::Error::custom(format!("unknown verdict `{s}`, expected PASS, FAIL or INFEASIBLE")))
    }
}

impl Scenario {
    pub fn parse(text: &str) -> anyhow::Result<Scenario> {
        let s: Scenario = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> anyhow::Result<Scenario> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Scenario::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    /// Version, name uniqueness and reference resolution.
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.version != SCHEMA_VERSION {
            bail!("version: unsupported schema version {}, expected {SCHEMA_VERSION}", self.version);
        }
        let space = |field: String, name: &str| -> anyhow::Result<()> {
            if self.spaces.contains_key(name) {
                Ok(())
            } else {
                bail!("{field}: unknown space `{name}`")
            }
        };
        let witness = |field: String, name: &str| -> anyhow::Result<()> {
            if self.witnesses.contains_key(name) {
                Ok(())
            } else {
                bail!("{field}: unknown witness `{name}`")
            }
        };
        for (name, d) in &self.spaces {
            match d {
                SpaceDesc::Product { left, right } => {
                    space(format!("spaces.{name}.left"), left)?;
                    space(format!("spaces.{name}.right"), right)?;
                }
                SpaceDesc::Cylinder { of } | SpaceDesc::Opposite { of } => space(format!("spaces.{name}.of"), of)?,
                SpaceDesc::Standard { .. } | SpaceDesc::Wedge => {}
            }
        }
        for (name, d) in &self.witnesses {
            match d {
                WitnessDesc::Product { base, fiber } => {
                    space(format!("witnesses.{name}.base"), base)?;
                    space(format!("witnesses.{name}.fiber"), fiber)?;
                }
                WitnessDesc::Identity { base } => space(format!("witnesses.{name}.base"), base)?,
                WitnessDesc::Pullback { of, .. } | WitnessDesc::Opposite { of } => {
                    witness(format!("witnesses.{name}.of"), of)?
                }
                WitnessDesc::Wedge | WitnessDesc::MaxStructure { .. } => {}
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for (i, t) in self.tasks.iter().enumerate() {
            if !seen.insert(t.name.as_str()) {
                bail!("tasks[{i}].name: duplicate task name `{}`", t.name);
            }
            let field = |f: &str| format!("tasks[{i}].{f}");
            match &t.kind {
                TaskKind::Axioms { space: s, .. } => space(field("space"), s)?,
                TaskKind::Fhe { base, fiber, .. } => {
                    space(field("base"), base)?;
                    space(field("fiber"), fiber)?;
                }
                TaskKind::Warp { eps } => {
                    if let Some(e) = eps.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
                        bail!("{}: ε = {e} outside (0, 1)", field("eps"));
                    }
                }
                TaskKind::LiftingPair { witness: w, .. }
                | TaskKind::StrictLift { witness: w, .. }
                | TaskKind::WeakLift { witness: w, .. }
                | TaskKind::PairFromLifter { witness: w, .. }
                | TaskKind::FiberTransport { witness: w, .. }
                | TaskKind::PathSpaceEquivalence { witness: w, .. }
                | TaskKind::Shrinkable { witness: w, .. }
                | TaskKind::CylinderRetraction { witness: w, .. } => witness(field("witness"), w)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scenario() {
        let s = Scenario::parse(r#"{"version": 1}"#).unwrap();
        assert!(s.tasks.is_empty());
        assert_eq!(s.grid.resolution, 101);
    }

    #[test]
    fn unknown_reference_names_field() {
        let text = r#"{"version": 1, "tasks": [{"name": "a", "kind": "axioms", "space": "nope"}]}"#;
        let e = Scenario::parse(text).unwrap_err().to_string();
        assert!(e.contains("tasks[0].space") && e.contains("nope"), "{e}");
    }

    #[test]
    fn unknown_constructor_is_rejected_with_position() {
        let text = "{\"version\": 1,\n \"witnesses\": {\"w\": {\"constructor\": \"torus\"}}}";
        let e = Scenario::parse(text).unwrap_err().to_string();
        assert!(e.contains("torus") && e.contains("line 2"), "{e}");
    }

    #[test]
    fn expect_parses() {
        let text = r#"{"version": 1, "witnesses": {"w": {"constructor": "wedge"}},
            "tasks": [{"name": "s", "kind": "strict_lift", "witness": "w", "start": [0, -1], "expect": "INFEASIBLE"}]}"#;
        let s = Scenario::parse(text).unwrap();
        assert_eq!(s.tasks[0].expect, Verdict::Infeasible);
        assert!(Scenario::parse(&text.replace("INFEASIBLE", "MAYBE")).is_err());
    }

    #[test]
    fn wrong_version() {
        assert!(Scenario::parse(r#"{"version": 2}"#).unwrap_err().to_string().contains("version"));
    }
}
