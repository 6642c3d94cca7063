use alloc::vec::Vec;

use crate::path::DPath;
use crate::{Error, Result};

/// Reshapings of a path `ω` used by the transport constructions.
/// The `Theta*` and `Clamp*` kinds take the already plateaued path `ω̃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    /// `t' ↦ ω(t t')`.
    Scale,
    /// `t' ↦ ω(t + (1 - t) t')`.
    ScaleTail,
    /// `ω(0)` on [0,1/3), `ω(3t'-1)` on [1/3,2/3), `ω(1)` after.
    Plateau3,
    /// `ω(2t')` on [0,1/2), `ω(1)` after.
    HalfPlus,
    /// `ω(0)` on [0,1/2), `ω(2t'-1)` after.
    HalfMinus,
    /// `ω̃(3tt'/2)` on [0,2/3), `ω̃(t)` after.
    ThetaT,
    /// `ω̃(t)` on [0,1/3), `ω̃(t + (3t'-1)(1-t)/2)` after.
    ThetaPrimeT,
    /// `t' ↦ ω̃(min(t, t'))`.
    ClampBelow,
    /// `t' ↦ ω̃(max(t, t'))`.
    ClampAbove,
}

impl ShapeKind {
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Scale => "scale",
            ShapeKind::ScaleTail => "scale_tail",
            ShapeKind::Plateau3 => "plateau3",
            ShapeKind::HalfPlus => "half_plus",
            ShapeKind::HalfMinus => "half_minus",
            ShapeKind::ThetaT => "theta_t",
            ShapeKind::ThetaPrimeT => "theta_prime_t",
            ShapeKind::ClampBelow => "clamp_below",
            ShapeKind::ClampAbove => "clamp_above",
        }
    }

    pub fn needs_parameter(self) -> bool {
        !matches!(self, ShapeKind::Plateau3 | ShapeKind::HalfPlus | ShapeKind::HalfMinus)
    }
}

pub fn shape_path(kind: ShapeKind, omega: &DPath, t: Option<f64>) -> Result<DPath> {
    let t = match (kind.needs_parameter(), t) {
        (true, None) => return Err(Error::MissingParameter(kind.name())),
        (true, Some(t)) if !(0.0..=1.0).contains(&t) => return Err(Error::ParameterOutOfRange(t)),
        (_, t) => t.unwrap_or(0.0),
    };
    let w = omega.clone();
    let space = omega.space();
    let bps = omega.breakpoints();
    let mapped = |f: &dyn Fn(f64) -> f64| -> Vec<f64> { bps.iter().map(|&b| f(b)).collect() };
    Ok(match kind {
        ShapeKind::Scale => {
            let b = if t > 0.0 { mapped(&|b| b / t) } else { Vec::new() };
            DPath::new(space, b, move |s| w.eval(t * s))
        }
        ShapeKind::ScaleTail => {
            let b = if t < 1.0 { mapped(&|b| (b - t) / (1.0 - t)) } else { Vec::new() };
            DPath::new(space, b, move |s| w.eval(t + (1.0 - t) * s))
        }
        ShapeKind::Plateau3 => {
            let mut b = mapped(&|b| (b + 1.0) / 3.0);
            b.extend([1.0 / 3.0, 2.0 / 3.0]);
            DPath::new(space, b, move |s| {
                if s < 1.0 / 3.0 {
                    w.eval(0.0)
                } else if s < 2.0 / 3.0 {
                    w.eval(3.0 * s - 1.0)
                } else {
                    w.eval(1.0)
                }
            })
        }
        ShapeKind::HalfPlus => {
            let mut b = mapped(&|b| b / 2.0);
            b.push(0.5);
            DPath::new(space, b, move |s| if s < 0.5 { w.eval(2.0 * s) } else { w.eval(1.0) })
        }
        ShapeKind::HalfMinus => {
            let mut b = mapped(&|b| (b + 1.0) / 2.0);
            b.push(0.5);
            DPath::new(space, b, move |s| if s < 0.5 { w.eval(0.0) } else { w.eval(2.0 * s - 1.0) })
        }
        ShapeKind::ThetaT => {
            let mut b = if t > 0.0 { mapped(&|b| 2.0 * b / (3.0 * t)) } else { Vec::new() };
            b.push(2.0 / 3.0);
            b.retain(|&x| x <= 2.0 / 3.0);
            DPath::new(space, b, move |s| if s < 2.0 / 3.0 { w.eval(1.5 * t * s) } else { w.eval(t) })
        }
        ShapeKind::ThetaPrimeT => {
            let mut b = if t < 1.0 { mapped(&|b| (2.0 * (b - t) / (1.0 - t) + 1.0) / 3.0) } else { Vec::new() };
            b.retain(|&x| x >= 1.0 / 3.0);
            b.push(1.0 / 3.0);
            DPath::new(space, b, move |s| {
                if s < 1.0 / 3.0 {
                    w.eval(t)
                } else {
                    w.eval(t + (3.0 * s - 1.0) * (1.0 - t) / 2.0)
                }
            })
        }
        ShapeKind::ClampBelow => {
            let mut b: Vec<f64> = bps.iter().copied().filter(|&x| x <= t).collect();
            b.push(t);
            DPath::new(space, b, move |s| w.eval(s.min(t)))
        }
        ShapeKind::ClampAbove => {
            let mut b: Vec<f64> = bps.iter().copied().filter(|&x| x >= t).collect();
            b.push(t);
            DPath::new(space, b, move |s| w.eval(s.max(t)))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;
    use crate::space::DSpace;
    use alloc::vec;

    fn omega() -> DPath {
        DPath::new(&DSpace::interval(), vec![], |t| Point::scalar(t * t))
    }

    fn at(p: &DPath, t: f64) -> f64 {
        p.eval(t).coord(0)
    }

    #[test]
    fn plateau3_values() {
        let w = shape_path(ShapeKind::Plateau3, &omega(), None).unwrap();
        assert_eq!(at(&w, 0.2), 0.0);
        assert!((at(&w, 0.5) - 0.25).abs() < 1e-15);
        assert_eq!(at(&w, 0.9), 1.0);
        assert_eq!(w.breakpoints(), &[1.0 / 3.0, 2.0 / 3.0]);
    }

    #[test]
    fn theta_t_seam() {
        let wt = shape_path(ShapeKind::Plateau3, &omega(), None).unwrap();
        for t in [0.0, 0.3, 0.6, 1.0] {
            let th = shape_path(ShapeKind::ThetaT, &wt, Some(t)).unwrap();
            assert!((at(&th, 2.0 / 3.0 - 1e-12) - at(&wt, t)).abs() < 1e-9);
            assert_eq!(at(&th, 2.0 / 3.0), at(&wt, t));
            let tp = shape_path(ShapeKind::ThetaPrimeT, &wt, Some(t)).unwrap();
            assert!((at(&tp, 1.0 / 3.0) - at(&wt, t)).abs() < 1e-12);
            assert!((at(&tp, 1.0) - at(&wt, 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn clamps_interpolate_between_constant_and_identity() {
        let w = omega();
        let lo0 = shape_path(ShapeKind::ClampBelow, &w, Some(0.0)).unwrap();
        let lo1 = shape_path(ShapeKind::ClampBelow, &w, Some(1.0)).unwrap();
        let hi0 = shape_path(ShapeKind::ClampAbove, &w, Some(0.0)).unwrap();
        assert_eq!(lo0.distance(&DPath::constant(w.space(), Point::scalar(0.0))), 0.0);
        assert_eq!(lo1.distance(&w), 0.0);
        assert_eq!(hi0.distance(&w), 0.0);
    }

    #[test]
    fn halves_and_scales() {
        let w = omega();
        let p = shape_path(ShapeKind::HalfPlus, &w, None).unwrap();
        let m = shape_path(ShapeKind::HalfMinus, &w, None).unwrap();
        assert_eq!(at(&p, 0.25), 0.25);
        assert_eq!(at(&p, 0.75), 1.0);
        assert_eq!(at(&m, 0.25), 0.0);
        assert_eq!(at(&m, 0.75), 0.25);
        let s = shape_path(ShapeKind::Scale, &w, Some(0.5)).unwrap();
        assert_eq!(at(&s, 1.0), 0.25);
        let st = shape_path(ShapeKind::ScaleTail, &w, Some(0.5)).unwrap();
        assert_eq!(at(&st, 0.0), 0.25);
        assert_eq!(at(&st, 1.0), 1.0);
    }

    #[test]
    fn parameter_errors() {
        assert_eq!(shape_path(ShapeKind::Scale, &omega(), None).unwrap_err(), Error::MissingParameter("scale"));
        assert!(shape_path(ShapeKind::Scale, &omega(), Some(1.5)).is_err());
    }
}
