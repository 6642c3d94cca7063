use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::math::max;
use crate::point::Point;
use crate::{Error, Result};

/// A sampled path: parameters in increasing order with their values.
pub type Sample = [(f64, Point)];

pub type DefectFn = Arc<dyn Fn(&Point) -> f64 + Send + Sync>;
pub type OracleFn = Arc<dyn Fn(&Sample) -> Violation + Send + Sync>;

/// Amount by which a sampled path fails to be directed, with the pair of
/// parameters `(earlier, later)` where it was observed.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Violation {
    pub amount: f64,
    pub at: Option<(f64, f64)>,
}

impl Violation {
    pub fn none() -> Self {
        Violation::default()
    }

    pub fn infinite(at: Option<(f64, f64)>) -> Self {
        Violation { amount: f64::INFINITY, at }
    }

    pub fn worse(self, other: Violation) -> Violation {
        if max(other.amount, 0.0) > max(self.amount, 0.0) {
            other
        } else {
            self
        }
    }
}

/// Underlying set: a dimension, a number of path-valued components and a
/// defect function that is 0 on members and grows with distance outside.
#[derive(Clone)]
pub struct Carrier {
    dim: usize,
    curves: usize,
    label: String,
    defect: Option<DefectFn>,
}

impl Carrier {
    pub fn new(dim: usize, curves: usize, label: impl Into<String>, defect: Option<DefectFn>) -> Self {
        Carrier { dim, curves, label: label.into(), defect }
    }

    pub fn euclidean(n: usize) -> Self {
        Carrier::new(n, 0, alloc::format!("R^{n}"), None)
    }

    pub fn unit_cube(n: usize) -> Self {
        let defect: DefectFn = Arc::new(|p: &Point| {
            p.coords().iter().fold(0.0, |d, &x| max(d, max(-x, x - 1.0)))
        });
        Carrier::new(n, 0, alloc::format!("I^{n}"), Some(defect))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn curves(&self) -> usize {
        self.curves
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// 0 for members; +inf on shape mismatch or non-finite coordinates.
    pub fn defect(&self, p: &Point) -> f64 {
        if p.dim() != self.dim || p.curves().len() != self.curves || !p.is_finite() {
            return f64::INFINITY;
        }
        match &self.defect {
            Some(f) => max(f(p), 0.0),
            None => 0.0,
        }
    }

    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        self.defect(p) <= tol
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureTag {
    Natural,
    CoordinateMonotone,
    Product,
    Subspace,
    Cylinder,
    Opposite,
    Custom,
}

impl StructureTag {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureTag::Natural => "natural",
            StructureTag::CoordinateMonotone => "coordinate-monotone",
            StructureTag::Product => "product",
            StructureTag::Subspace => "subspace",
            StructureTag::Cylinder => "cylinder",
            StructureTag::Opposite => "opposite",
            StructureTag::Custom => "custom",
        }
    }
}

/// The four standard model spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    NaturalRn,
    NaturalIn,
    DirectedRn,
    DirectedIn,
}

impl StandardKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "natural_Rn" => Ok(StandardKind::NaturalRn),
            "natural_In" => Ok(StandardKind::NaturalIn),
            "directed_Rn" => Ok(StandardKind::DirectedRn),
            "directed_In" => Ok(StandardKind::DirectedIn),
            other => Err(Error::UnknownSpace(other.to_string())),
        }
    }
}

#[derive(Clone)]
enum Oracle {
    All,
    Monotone,
    Product(DSpace, DSpace),
    Restrict(DSpace),
    Opposite(DSpace),
    Custom(OracleFn),
}

struct Node {
    carrier: Carrier,
    tag: StructureTag,
    label: String,
    oracle: Oracle,
}

/// A directed space: carrier plus an oracle deciding directedness of sampled paths.
/// Cheap to clone.
#[derive(Clone)]
pub struct DSpace(Arc<Node>);

impl fmt::Debug for DSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DSpace({}, {})", self.0.label, self.0.tag.as_str())
    }
}

impl DSpace {
    fn make(carrier: Carrier, tag: StructureTag, label: String, oracle: Oracle) -> Self {
        DSpace(Arc::new(Node { carrier, tag, label, oracle }))
    }

    pub fn standard(kind: StandardKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(match kind {
            StandardKind::NaturalRn => {
                DSpace::make(Carrier::euclidean(n), StructureTag::Natural, alloc::format!("R^{n}"), Oracle::All)
            }
            StandardKind::NaturalIn => {
                DSpace::make(Carrier::unit_cube(n), StructureTag::Natural, alloc::format!("I^{n}"), Oracle::All)
            }
            StandardKind::DirectedRn => DSpace::make(
                Carrier::euclidean(n),
                StructureTag::CoordinateMonotone,
                alloc::format!("↑R^{n}"),
                Oracle::Monotone,
            ),
            StandardKind::DirectedIn => DSpace::make(
                Carrier::unit_cube(n),
                StructureTag::CoordinateMonotone,
                alloc::format!("↑I^{n}"),
                Oracle::Monotone,
            ),
        })
    }

    /// ↑I, the directed unit interval.
    pub fn interval() -> Self {
        DSpace::standard(StandardKind::DirectedIn, 1).expect("n = 1")
    }

    pub fn product(a: &DSpace, b: &DSpace) -> Self {
        let (da, ca) = (a.dim(), a.curves());
        let (sa, sb) = (a.clone(), b.clone());
        let defect: DefectFn = Arc::new(move |p: &Point| {
            let (x, y) = p.split_at(da, ca);
            max(sa.defect(&x), sb.defect(&y))
        });
        let carrier = Carrier::new(
            a.dim() + b.dim(),
            a.curves() + b.curves(),
            alloc::format!("{}×{}", a.carrier().label(), b.carrier().label()),
            Some(defect),
        );
        DSpace::make(
            carrier,
            StructureTag::Product,
            alloc::format!("({})×({})", a.label(), b.label()),
            Oracle::Product(a.clone(), b.clone()),
        )
    }

    /// `X × ↑I`, coordinates of `X` first.
    pub fn cylinder(x: &DSpace) -> Self {
        let p = DSpace::product(x, &DSpace::interval());
        let node = &p.0;
        DSpace::make(
            node.carrier.clone(),
            StructureTag::Cylinder,
            alloc::format!("({})×↑I", x.label()),
            node.oracle.clone(),
        )
    }

    /// Subspace cut out by an additional defect; directed paths are the
    /// parent's directed paths that stay inside.
    pub fn subspace(parent: &DSpace, label: impl Into<String>, defect: DefectFn) -> Self {
        let base = parent.clone();
        let full: DefectFn = Arc::new(move |p: &Point| max(base.defect(p), defect(p)));
        let carrier = Carrier::new(parent.dim(), parent.curves(), parent.carrier().label(), Some(full));
        DSpace::make(carrier, StructureTag::Subspace, label.into(), Oracle::Restrict(parent.clone()))
    }

    pub fn opposite(x: &DSpace) -> Self {
        DSpace::make(
            x.carrier().clone(),
            StructureTag::Opposite,
            alloc::format!("({})^op", x.label()),
            Oracle::Opposite(x.clone()),
        )
    }

    pub fn custom(carrier: Carrier, label: impl Into<String>, oracle: OracleFn) -> Self {
        DSpace::make(carrier, StructureTag::Custom, label.into(), Oracle::Custom(oracle))
    }

    pub fn carrier(&self) -> &Carrier {
        &self.0.carrier
    }

    pub fn dim(&self) -> usize {
        self.0.carrier.dim
    }

    pub fn curves(&self) -> usize {
        self.0.carrier.curves
    }

    pub fn tag(&self) -> StructureTag {
        self.0.tag
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn defect(&self, p: &Point) -> f64 {
        self.0.carrier.defect(p)
    }

    /// Factors of a product or cylinder.
    pub fn factors(&self) -> Option<(DSpace, DSpace)> {
        match &self.0.oracle {
            Oracle::Product(a, b) => Some((a.clone(), b.clone())),
            _ => None,
        }
    }

    pub fn same_as(&self, other: &DSpace) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// How far the sampled path is from being directed (0 when accepted).
    /// Carrier membership is not part of this measure.
    pub fn oracle_violation(&self, sample: &Sample) -> Violation {
        if sample.iter().any(|(_, p)| p.dim() != self.dim() || p.curves().len() != self.curves()) {
            return Violation::infinite(sample.first().map(|(t, _)| (*t, *t)));
        }
        match &self.0.oracle {
            Oracle::All => Violation::none(),
            Oracle::Monotone => monotone_violation(sample),
            Oracle::Product(a, b) => {
                let (left, right): (Vec<_>, Vec<_>) = sample
                    .iter()
                    .map(|(t, p)| {
                        let (x, y) = p.split_at(a.dim(), a.curves());
                        ((*t, x), (*t, y))
                    })
                    .unzip();
                a.oracle_violation(&left).worse(b.oracle_violation(&right))
            }
            Oracle::Restrict(parent) => parent.oracle_violation(sample),
            Oracle::Opposite(parent) => {
                let reversed: Vec<(f64, Point)> = sample.iter().rev().map(|(t, p)| (1.0 - t, p.clone())).collect();
                let v = parent.oracle_violation(&reversed);
                Violation { amount: v.amount, at: v.at.map(|(s, u)| (1.0 - u, 1.0 - s)) }
            }
            Oracle::Custom(f) => f(sample),
        }
    }

    pub fn accepts(&self, sample: &Sample, tol: f64) -> bool {
        self.oracle_violation(sample).amount <= tol
    }
}

/// Largest decrease of any coordinate between an earlier and a later sample.
pub fn monotone_violation(sample: &Sample) -> Violation {
    let Some((_, first)) = sample.first() else {
        return Violation::none();
    };
    let n = first.dim();
    let mut best = Violation::none();
    let mut peak: Vec<(f64, f64)> = first.coords().iter().map(|&c| (c, sample[0].0)).collect();
    for (t, p) in sample.iter().skip(1) {
        for (i, &c) in p.coords().iter().enumerate().take(n) {
            if !c.is_finite() {
                return Violation::infinite(Some((*t, *t)));
            }
            let drop = peak[i].0 - c;
            if drop > best.amount {
                best = Violation { amount: drop, at: Some((peak[i].1, *t)) };
            }
            if c > peak[i].0 {
                peak[i] = (c, *t);
            }
        }
    }
    best
}

/// How a derived space is obtained from existing ones.
#[derive(Clone)]
pub enum Derivation {
    Product(DSpace, DSpace),
    Subspace { parent: DSpace, label: String, defect: DefectFn },
    Cylinder(DSpace),
    Opposite(DSpace),
}

pub fn make_standard_space(kind: StandardKind, n: usize) -> Result<DSpace> {
    DSpace::standard(kind, n)
}

pub fn derive_space(d: Derivation) -> DSpace {
    match d {
        Derivation::Product(a, b) => DSpace::product(&a, &b),
        Derivation::Subspace { parent, label, defect } => DSpace::subspace(&parent, label, defect),
        Derivation::Cylinder(x) => DSpace::cylinder(&x),
        Derivation::Opposite(x) => DSpace::opposite(&x),
    }
}
