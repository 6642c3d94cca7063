use crate::fibration::{weak_lift, FibrationWitness, LiftProblem, LiftSolution};
use crate::grid::CheckConfig;
use crate::homotopy::DHomotopy;
use crate::map::DMap;
use crate::point::Point;
use crate::{Alpha, Error, Result};

/// Weak lift of a homotopy parametrized over `[a, b]` (its chart), anchored
/// at `β ∈ {a, b}`. The lift carries the same chart; the vertical chain runs
/// from `φ'(·, β)` to `f'`.
pub fn lift_over_segment(
    w: &FibrationWitness,
    f_lift: &DMap,
    phi: &DHomotopy,
    beta: f64,
    probes: &[Point],
    cfg: &CheckConfig,
) -> Result<LiftSolution> {
    let (a, b) = phi.chart();
    let alpha = if beta == a {
        Alpha::Zero
    } else if beta == b {
        Alpha::One
    } else {
        return Err(Error::EndpointNotInInterval { beta, a, b });
    };
    let unit = phi.clone().with_chart(0.0, 1.0)?;
    let prob = LiftProblem::new(f_lift.clone(), unit, alpha, probes.to_vec());
    let sol = weak_lift(w, &prob, cfg)?;
    Ok(LiftSolution { phi_lift: sol.phi_lift.with_chart(a, b)?, vertical: sol.vertical })
}
