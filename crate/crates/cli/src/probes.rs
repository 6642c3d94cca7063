//! Seeded random probes: directed paths, reparametrizations, pointed paths
//! and lift problems.

use std::sync::Arc;

use dirfib_core::fibration::{LiftProblem, LiftingPair, PointedPath, Window};
use dirfib_core::homotopy::DHomotopy;
use dirfib_core::{Alpha, DMap, DPath, DSpace, IntervalMap, Point};
use rand::Rng;

/// How to draw random directed paths in a space.
#[derive(Clone, Debug, PartialEq)]
pub enum PathFamily {
    /// Coordinatewise nondecreasing in `[lo, hi]^dim`.
    Monotone { dim: usize, lo: f64, hi: f64 },
    /// Coordinatewise nonincreasing in `[lo, hi]^dim`.
    Antitone { dim: usize, lo: f64, hi: f64 },
    /// Unconstrained in `[lo, hi]^dim`.
    Free { dim: usize, lo: f64, hi: f64 },
    /// Inside `{xy ≥ 0}`: `x` monotone in `[lo, hi]`, `y = m(t) x(t)` with `m ≥ 0`.
    Wedge { lo: f64, hi: f64, decreasing: bool },
    Product(Box<PathFamily>, Box<PathFamily>),
}

impl PathFamily {
    pub fn dim(&self) -> usize {
        match self {
            PathFamily::Monotone { dim, .. } | PathFamily::Antitone { dim, .. } | PathFamily::Free { dim, .. } => *dim,
            PathFamily::Wedge { .. } => 2,
            PathFamily::Product(a, b) => a.dim() + b.dim(),
        }
    }

    /// The family of the opposite space.
    pub fn opposite(&self) -> PathFamily {
        match self.clone() {
            PathFamily::Monotone { dim, lo, hi } => PathFamily::Antitone { dim, lo, hi },
            PathFamily::Antitone { dim, lo, hi } => PathFamily::Monotone { dim, lo, hi },
            f @ PathFamily::Free { .. } => f,
            PathFamily::Wedge { lo, hi, decreasing } => PathFamily::Wedge { lo, hi, decreasing: !decreasing },
            PathFamily::Product(a, b) => PathFamily::Product(Box::new(a.opposite()), Box::new(b.opposite())),
        }
    }

    /// A random point of the carrier.
    pub fn point<R: Rng>(&self, rng: &mut R) -> Point {
        match self {
            PathFamily::Monotone { dim, lo, hi } | PathFamily::Antitone { dim, lo, hi } | PathFamily::Free { dim, lo, hi } => {
                Point::new((0..*dim).map(|_| rng.gen_range(*lo..=*hi)).collect())
            }
            PathFamily::Wedge { lo, hi, .. } => {
                let x: f64 = rng.gen_range(*lo..=*hi);
                Point::from_slice(&[x, rng.gen_range(0.0..=2.0) * x])
            }
            PathFamily::Product(a, b) => a.point(rng).concat(&b.point(rng)),
        }
    }
}

fn knot_times<R: Rng>(rng: &mut R) -> Vec<f64> {
    let k = rng.gen_range(1..=4);
    let mut ts: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..0.95)).collect();
    ts.push(0.0);
    ts.push(1.0);
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    ts
}

fn sorted_values<R: Rng>(rng: &mut R, n: usize, from: f64, to: f64) -> Vec<f64> {
    let (a, b) = if from <= to { (from, to) } else { (to, from) };
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(a..=b)).collect();
    v.sort_by(f64::total_cmp);
    if from > to {
        v.reverse();
    }
    v
}

fn interpolate(times: &[f64], values: &[f64], t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    let i = times.partition_point(|&s| s <= t).clamp(1, times.len() - 1);
    let s = (t - times[i - 1]) / (times[i] - times[i - 1]);
    values[i - 1] + (values[i] - values[i - 1]) * s
}

/// Per-coordinate knot values for a path with the given knot times.
fn coordinate_knots<R: Rng>(family: &PathFamily, times: &[f64], start: Option<&Point>, rng: &mut R) -> Vec<Vec<f64>> {
    let n = times.len();
    let (dim, lo, hi) = match family {
        PathFamily::Monotone { dim, lo, hi } | PathFamily::Antitone { dim, lo, hi } | PathFamily::Free { dim, lo, hi } => {
            (*dim, *lo, *hi)
        }
        _ => unreachable!("scalar families only"),
    };
    (0..dim)
        .map(|i| {
            let first = start.map(|s| s.coord(i)).unwrap_or_else(|| rng.gen_range(lo..=hi));
            let mut v = match family {
                PathFamily::Monotone { .. } => sorted_values(rng, n - 1, first.max(lo), hi),
                PathFamily::Antitone { .. } => sorted_values(rng, n - 1, first.min(hi), lo),
                _ => (0..n - 1).map(|_| rng.gen_range(lo..=hi)).collect(),
            };
            v.insert(0, first);
            v
        })
        .collect()
}

/// A random directed path of `family` in `space`, starting at `start` when given.
pub fn random_path<R: Rng>(space: &DSpace, family: &PathFamily, start: Option<&Point>, rng: &mut R) -> DPath {
    let coords = random_coords(family, start, rng);
    let bps: Vec<f64> = coords.iter().flat_map(|c| c.breakpoints.clone()).collect();
    DPath::new(space, bps, move |t| Point::new(coords.iter().flat_map(|c| (c.f)(t)).collect()))
}

struct Coords {
    breakpoints: Vec<f64>,
    f: Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>,
}

fn random_coords<R: Rng>(family: &PathFamily, start: Option<&Point>, rng: &mut R) -> Vec<Coords> {
    match family {
        PathFamily::Product(a, b) => {
            let (sa, sb) = match start {
                Some(s) => {
                    let (x, y) = s.split_at(a.dim(), 0);
                    (Some(x), Some(y))
                }
                None => (None, None),
            };
            let mut out = random_coords(a, sa.as_ref(), rng);
            out.extend(random_coords(b, sb.as_ref(), rng));
            out
        }
        PathFamily::Wedge { lo, hi, decreasing } => {
            let (x0, y0) = match start {
                Some(s) => (s.coord(0), s.coord(1)),
                None => {
                    let p = family.point(rng);
                    (p.coord(0), p.coord(1))
                }
            };
            let m1: f64 = rng.gen_range(0.0..=2.0);
            let times = knot_times(rng);
            let n = times.len();
            let xs = if *decreasing {
                sorted_values(rng, n - 1, x0.min(*hi), *lo)
            } else {
                sorted_values(rng, n - 1, x0.max(*lo), *hi)
            };
            let mut xs = xs;
            xs.insert(0, x0);
            let mut ms: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.0..=2.0)).collect();
            ms.insert(0, m1);
            let mut bps = vec![0.25];
            bps.extend(times.iter().map(|t| 0.25 + 0.75 * t));
            let f = Arc::new(move |t: f64| {
                if t < 0.25 {
                    let s = 4.0 * t;
                    vec![x0, (1.0 - s) * y0 + s * m1 * x0]
                } else {
                    let u = (t - 0.25) / 0.75;
                    let x = interpolate(&times, &xs, u);
                    vec![x, interpolate(&times, &ms, u) * x]
                }
            });
            vec![Coords { breakpoints: bps, f }]
        }
        scalar => {
            let times = knot_times(rng);
            let values = coordinate_knots(scalar, &times, start, rng);
            let bps = times.clone();
            let f = Arc::new(move |t: f64| values.iter().map(|v| interpolate(&times, v, t)).collect());
            vec![Coords { breakpoints: bps, f }]
        }
    }
}

/// A random monotone endpoint-preserving self-map of [0,1], possibly with flat pieces.
pub fn random_warp<R: Rng>(rng: &mut R) -> IntervalMap {
    let times = knot_times(rng);
    let n = times.len();
    let mut v = sorted_values(rng, n - 2, 0.0, 1.0);
    if rng.gen_bool(0.3) && v.len() >= 2 {
        v[1] = v[0];
    }
    v.insert(0, 0.0);
    v.push(1.0);
    let bps = times.clone();
    IntervalMap::new(bps, move |t| interpolate(&times, &v, t))
}

/// Composes `g` with a collapse of `window` onto its anchor.
pub fn stationary_on(g: &DPath, window: Option<Window>) -> DPath {
    let Some(w) = window else { return g.clone() };
    let (a, b) = w.range();
    let h = if w.anchor() == 0.0 {
        IntervalMap::new(vec![b], move |t| if t < b { 0.0 } else { (t - b) / (1.0 - b) })
    } else {
        IntervalMap::new(vec![a], move |t| if t < a { t / a } else { 1.0 })
    };
    g.reparametrize(&h)
}

/// Draws fibre points over a base point.
#[derive(Clone)]
pub enum FiberSampler {
    /// `(b, f)` with `f` drawn from the family.
    Product(PathFamily),
    /// `(x, y)` with `xy ≥ 0`.
    Wedge,
    /// `(b', e)` with `e` over `f(b')`.
    Pullback(Arc<dyn Fn(&Point) -> Point + Send + Sync>, Box<FiberSampler>),
}

/// A continuous family of fibre points over a base map, indexed by the source point.
pub type Section = Arc<dyn Fn(&Point, &Point) -> Point + Send + Sync>;

impl FiberSampler {
    pub fn point_over<R: Rng>(&self, b: &Point, rng: &mut R) -> Point {
        match self {
            FiberSampler::Product(f) => b.concat(&f.point(rng)),
            FiberSampler::Wedge => {
                let x = b.coord(0);
                let y = if x > 0.0 {
                    rng.gen_range(0.0..=3.0)
                } else if x < 0.0 {
                    -rng.gen_range(0.0..=3.0)
                } else {
                    rng.gen_range(-3.0..=3.0)
                };
                Point::from_slice(&[x, y])
            }
            FiberSampler::Pullback(f, inner) => b.concat(&inner.point_over(&f(b), rng)),
        }
    }

    /// `(x, b) ↦ e` over `b`, affine in the first coordinate of `x`.
    pub fn section<R: Rng>(&self, rng: &mut R) -> Section {
        match self {
            FiberSampler::Product(f) => {
                let (a, c) = (f.point(rng), f.point(rng));
                Arc::new(move |x, b| {
                    let s = x.coord(0);
                    b.concat(&Point::new(a.coords().iter().zip(c.coords()).map(|(u, v)| u + (v - u) * s).collect()))
                })
            }
            FiberSampler::Wedge => {
                let m: f64 = rng.gen_range(0.0..=2.0);
                Arc::new(move |_, b| Point::from_slice(&[b.coord(0), m * b.coord(0)]))
            }
            FiberSampler::Pullback(f, inner) => {
                let (f, s) = (f.clone(), inner.section(rng));
                Arc::new(move |x, b| b.concat(&s(x, &f(b))))
            }
        }
    }
}

/// Everything needed to draw probes for a witness.
#[derive(Clone)]
pub struct ProbeModel {
    pub base: PathFamily,
    pub fiber: FiberSampler,
}

impl ProbeModel {
    /// A pointed path with the given mode, stationary on `window`.
    pub fn pointed<R: Rng>(&self, base: &DSpace, mode: Alpha, window: Option<Window>, rng: &mut R) -> PointedPath {
        let g = random_path(base, &self.base, None, rng);
        let omega = stationary_on(&g, window);
        let e = self.fiber.point_over(&omega.eval(mode.value()), rng);
        PointedPath::new(e, omega, mode, None)
    }

    /// `n` pointed paths with random modes, stationary where `pair` requires it.
    pub fn pointed_probes<R: Rng>(&self, base: &DSpace, pair: &LiftingPair, n: usize, rng: &mut R) -> Vec<PointedPath> {
        (0..n)
            .map(|_| {
                let mode = if rng.gen_bool(0.5) { Alpha::Zero } else { Alpha::One };
                self.pointed(base, mode, pair.window(mode), rng)
            })
            .collect()
    }

    /// A random lift problem over the source `↑I`: `φ(x, t)` bilinear with
    /// nonnegative coefficients inside the base box, `f'` a section over `φ(·, α)`.
    /// `None` when the base family has unconstrained coordinates.
    pub fn lift_problem<R: Rng>(&self, total: &DSpace, base: &DSpace, rng: &mut R) -> Option<LiftProblem> {
        let x = DSpace::interval();
        let alpha = if rng.gen_bool(0.5) { Alpha::Zero } else { Alpha::One };
        let phi = bilinear_homotopy(&x, base, &self.base, rng)?;
        let section = self.fiber.section(rng);
        let ph = phi.clone();
        let a = alpha.value();
        let f_lift = DMap::new(&x, total, move |p| section(p, &ph.eval(p, a)));
        let probes = [0.0, 0.25, 0.5, 0.75, 1.0].map(Point::scalar).to_vec();
        Some(LiftProblem::new(f_lift, phi, alpha, probes))
    }
}

/// `(lo, hi, increasing)` for every coordinate of a family of monotone coordinates.
fn coordinate_bounds(family: &PathFamily) -> Option<Vec<(f64, f64, bool)>> {
    match family {
        PathFamily::Monotone { dim, lo, hi } => Some(vec![(*lo, *hi, true); *dim]),
        PathFamily::Antitone { dim, lo, hi } => Some(vec![(*lo, *hi, false); *dim]),
        PathFamily::Product(a, b) => {
            let mut v = coordinate_bounds(a)?;
            v.extend(coordinate_bounds(b)?);
            Some(v)
        }
        PathFamily::Free { .. } | PathFamily::Wedge { .. } => None,
    }
}

fn bilinear_homotopy<R: Rng>(x: &DSpace, base: &DSpace, family: &PathFamily, rng: &mut R) -> Option<DHomotopy> {
    let bounds = coordinate_bounds(family)?;
    let coeffs: Vec<([f64; 4], (f64, f64, bool))> = bounds
        .into_iter()
        .map(|b| {
            let mut c = [0.0; 4];
            for v in c.iter_mut() {
                *v = rng.gen_range(0.0..1.0);
            }
            let total: f64 = c.iter().sum::<f64>() * rng.gen_range(1.0..1.5);
            (c.map(|v| v / total), b)
        })
        .collect();
    Some(DHomotopy::new(x, base, vec![], move |p, t| {
        let s = p.coord(0);
        Point::new(
            coeffs
                .iter()
                .map(|(c, (lo, hi, up))| {
                    let u = c[0] + c[1] * s + c[2] * t + c[3] * s * t;
                    if *up {
                        lo + (hi - lo) * u
                    } else {
                        hi - (hi - lo) * u
                    }
                })
                .collect(),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use dirfib_core::{certify_directed_path, CheckConfig, StandardKind};
    use dirfib_core::fibration::wedge_spaces;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monotone_paths_are_directed() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = DSpace::standard(StandardKind::DirectedIn, 2).unwrap();
        let fam = PathFamily::Monotone { dim: 2, lo: 0.0, hi: 1.0 };
        for _ in 0..20 {
            let p = random_path(&s, &fam, None, &mut rng);
            assert!(certify_directed_path(&s, &p, &CheckConfig::default()).is_pass());
        }
    }

    #[test]
    fn wedge_paths_stay_in_wedge_from_any_start() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (e, _) = wedge_spaces();
        let fam = PathFamily::Wedge { lo: -2.0, hi: 2.0, decreasing: false };
        for start in [None, Some(Point::from_slice(&[0.0, -1.0])), Some(Point::from_slice(&[-1.0, -0.5]))] {
            let p = random_path(&e, &fam, start.as_ref(), &mut rng);
            assert!(certify_directed_path(&e, &p, &CheckConfig::default()).is_pass());
            if let Some(s) = &start {
                assert_eq!(p.eval(0.0).coords(), s.coords());
            }
        }
    }

    #[test]
    fn warp_fixes_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let h = random_warp(&mut rng);
            assert_eq!(h.eval(0.0), 0.0);
            assert_eq!(h.eval(1.0), 1.0);
        }
    }

    #[test]
    fn same_seed_same_probes() {
        let fam = PathFamily::Free { dim: 2, lo: -1.0, hi: 1.0 };
        let s = DSpace::standard(StandardKind::NaturalRn, 2).unwrap();
        let a = random_path(&s, &fam, None, &mut ChaCha8Rng::seed_from_u64(9));
        let b = random_path(&s, &fam, None, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a.distance(&b), 0.0);
    }
}
