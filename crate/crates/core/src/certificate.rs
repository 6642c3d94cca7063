use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::math::sanitize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Infeasible,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Infeasible => "INFEASIBLE",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        match s {
            "PASS" => Some(Verdict::Pass),
            "FAIL" => Some(Verdict::Fail),
            "INFEASIBLE" => Some(Verdict::Infeasible),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where the worst violation was observed.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Witness {
    /// Grid parameters (path parameter, homotopy time, ...).
    pub params: Vec<f64>,
    /// Coordinates of the offending point(s).
    pub values: Vec<f64>,
    pub note: String,
}

impl Witness {
    pub fn new(params: Vec<f64>, values: Vec<f64>, note: impl Into<String>) -> Self {
        Witness { params, values, note: note.into() }
    }

    pub fn at(params: &[f64], note: impl Into<String>) -> Self {
        Witness { params: params.to_vec(), values: Vec::new(), note: note.into() }
    }
}

/// Outcome of a sampled contract check. `Pass` iff `max_violation <= tolerance`,
/// except for `Infeasible`, where `max_violation` is the measured gap.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub max_violation: f64,
    pub tolerance: f64,
    pub witness: Option<Witness>,
    pub contract: String,
    pub parts: Vec<Certificate>,
}

impl Certificate {
    pub fn from_violation(contract: impl Into<String>, violation: f64, tol: f64, witness: Option<Witness>) -> Self {
        let v = sanitize(violation);
        Certificate {
            verdict: if v <= tol { Verdict::Pass } else { Verdict::Fail },
            max_violation: v,
            tolerance: tol,
            witness: if v <= tol { None } else { witness },
            contract: contract.into(),
            parts: Vec::new(),
        }
    }

    pub fn pass(contract: impl Into<String>, tol: f64) -> Self {
        Certificate::from_violation(contract, 0.0, tol, None)
    }

    /// FAIL with infinite violation, used when a construction errors out.
    pub fn failure(contract: impl Into<String>, tol: f64, note: impl ToString) -> Self {
        Certificate {
            verdict: Verdict::Fail,
            max_violation: f64::INFINITY,
            tolerance: tol,
            witness: Some(Witness::at(&[], note.to_string())),
            contract: contract.into(),
            parts: Vec::new(),
        }
    }

    pub fn infeasible(contract: impl Into<String>, gap: f64, tol: f64, witness: Witness) -> Self {
        Certificate {
            verdict: Verdict::Infeasible,
            max_violation: sanitize(gap),
            tolerance: tol,
            witness: Some(witness),
            contract: contract.into(),
            parts: Vec::new(),
        }
    }

    /// Aggregate: worst violation wins; any INFEASIBLE part makes the whole
    /// INFEASIBLE, otherwise any FAIL makes it FAIL.
    pub fn combine(contract: impl Into<String>, tol: f64, parts: Vec<Certificate>) -> Self {
        let mut verdict = Verdict::Pass;
        let mut worst = 0.0f64;
        let mut witness = None;
        for p in &parts {
            match p.verdict {
                Verdict::Infeasible => verdict = Verdict::Infeasible,
                Verdict::Fail if verdict == Verdict::Pass => verdict = Verdict::Fail,
                _ => {}
            }
            if p.max_violation > worst || (witness.is_none() && p.verdict != Verdict::Pass) {
                worst = worst.max(p.max_violation);
                if p.verdict != Verdict::Pass {
                    witness = p.witness.clone().map(|mut w| {
                        if w.note.is_empty() {
                            w.note = p.contract.clone();
                        } else if !w.note.starts_with(p.contract.as_str()) {
                            w.note = alloc::format!("{}: {}", p.contract, w.note);
                        }
                        w
                    });
                }
            }
        }
        Certificate {
            verdict,
            max_violation: worst,
            tolerance: tol,
            witness: if verdict == Verdict::Pass { None } else { witness },
            contract: contract.into(),
            parts,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Depth-first search for a part with the given contract name.
    pub fn find(&self, contract: &str) -> Option<&Certificate> {
        if self.contract == contract {
            return Some(self);
        }
        self.parts.iter().find_map(|p| p.find(contract))
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] max_violation={:e} tol={:e}", self.verdict, self.contract, self.max_violation, self.tolerance)?;
        if let Some(w) = &self.witness {
            write!(f, " at {:?} {}", w.params, w.note)?;
        }
        Ok(())
    }
}

/// Running maximum of a violation with the witness of the worst sample.
#[derive(Clone, Debug, Default)]
pub struct Worst {
    pub max: f64,
    pub witness: Option<Witness>,
}

impl Worst {
    pub fn new() -> Self {
        Worst::default()
    }

    pub fn record(&mut self, violation: f64, witness: impl FnOnce() -> Witness) {
        let v = sanitize(violation);
        if v > self.max || (self.witness.is_none() && v > 0.0) {
            self.max = self.max.max(v);
            self.witness = Some(witness());
        }
    }

    pub fn merge(&mut self, other: Worst) {
        if other.max > self.max {
            self.max = other.max;
            self.witness = other.witness;
        }
    }

    pub fn certify(self, contract: impl Into<String>, tol: f64) -> Certificate {
        Certificate::from_violation(contract, self.max, tol, self.witness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_within_tolerance() {
        assert!(Certificate::from_violation("c", 1e-10, 1e-9, None).is_pass());
        assert!(!Certificate::from_violation("c", 2e-9, 1e-9, None).is_pass());
        assert!(!Certificate::from_violation("c", f64::NAN, 1e-9, None).is_pass());
    }

    #[test]
    fn combine_prefers_infeasible() {
        let a = Certificate::from_violation("a", 1.0, 1e-9, Some(Witness::at(&[0.5], "x")));
        let b = Certificate::infeasible("b", 0.3, 1e-9, Witness::default());
        let c = Certificate::combine("all", 1e-9, alloc::vec![a.clone(), b]);
        assert_eq!(c.verdict, Verdict::Infeasible);
        assert_eq!(c.max_violation, 1.0);
        let d = Certificate::combine("all", 1e-9, alloc::vec![a]);
        assert_eq!(d.verdict, Verdict::Fail);
        assert_eq!(d.witness.unwrap().params, alloc::vec![0.5]);
    }

    #[test]
    fn worst_keeps_first_maximum() {
        let mut w = Worst::new();
        w.record(0.1, || Witness::at(&[0.1], ""));
        w.record(0.3, || Witness::at(&[0.3], ""));
        w.record(0.2, || Witness::at(&[0.2], ""));
        assert_eq!(w.max, 0.3);
        assert_eq!(w.witness.unwrap().params, alloc::vec![0.3]);
    }
}
