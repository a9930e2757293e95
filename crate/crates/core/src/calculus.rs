//! Coefficient calculus relating contact, topological and round framings,
//! and the niceness / fillability predicates on round diagrams.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::RoundSurgeryDiagram;
use crate::slope::SlopeQ;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("curve {a}·μ + {b}·λ_c is not a surgery meridian (λ_c-coefficient must be 1)")]
    InvalidMeridian { a: i64, b: i64 },
    #[error("round-1 spec {0} does not exist")]
    NoSuchRound1(usize),
    #[error("round-1 spec {0} has no joint round-2 partner")]
    NoJointPartner(usize),
}

/// Contact coefficient `p/q` (against `λ_c`) to topological coefficient
/// (against `λ`). The curve `p·μ + q·λ_c` is `(p + q·tb)·μ + q·λ`.
///
/// Panics only if the shifted numerator leaves the `i64` range.
pub fn contact_to_topological(c: SlopeQ, tb: i64) -> SlopeQ {
    c.add_int(tb).expect("coefficient overflow")
}

/// Inverse of [`contact_to_topological`].
pub fn topological_to_contact(t: SlopeQ, tb: i64) -> SlopeQ {
    t.add_int(-tb).expect("coefficient overflow")
}

/// Boundary slope `1/tb` of the dividing curves on a standard
/// neighbourhood torus; `tb = 0` gives `∞`.
pub fn boundary_slope(tb: i64) -> SlopeQ {
    SlopeQ::integer(tb).recip()
}

/// Reads the integer `n` off a surgery meridian `a·μ + b·λ_c`. Only
/// `b = 1` curves meet each dividing curve once.
pub fn surgery_meridian_coefficient(a: i64, b: i64) -> Result<i64, CalculusError> {
    if b == 1 {
        Ok(a)
    } else {
        Err(CalculusError::InvalidMeridian { a, b })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NicenessReport {
    pub equal_coefficients: bool,
    pub round2_pm1: bool,
    pub zero_holonomy_layer: bool,
    pub nice: bool,
}

impl NicenessReport {
    /// First failing condition, if any.
    pub fn reason(&self) -> Option<&'static str> {
        if !self.equal_coefficients {
            Some("round-1 coefficients differ")
        } else if !self.round2_pm1 {
            Some("round-2 coefficient is not ±1")
        } else if !self.zero_holonomy_layer {
            Some("layer is not the zero-holonomy minimal-twisting layer")
        } else {
            None
        }
    }
}

/// Checks whether round-1 spec `idx` and its joint round-2 partner form a
/// nice joint pair.
pub fn check_nice(d: &RoundSurgeryDiagram, idx: usize) -> Result<NicenessReport, CalculusError> {
    let r1 = d.round1.get(idx).ok_or(CalculusError::NoSuchRound1(idx))?;
    let r2 = d.joint_partner(idx).ok_or(CalculusError::NoJointPartner(idx))?;
    let equal_coefficients = r1.coeff_a == r1.coeff_b;
    let round2_pm1 = r2.coeff == SlopeQ::ONE || r2.coeff == SlopeQ::MINUS_ONE;
    let zero_holonomy_layer = r1.layer.is_zero_holonomy_minimal();
    Ok(NicenessReport {
        equal_coefficients,
        round2_pm1,
        zero_holonomy_layer,
        nice: equal_coefficients && round2_pm1 && zero_holonomy_layer,
    })
}

/// Sufficient condition for symplectic fillability: the diagram consists
/// solely of nice joint pairs whose round-2 coefficient is `-1`. The empty
/// diagram (`S³`) qualifies vacuously.
pub fn is_fillable_sufficient(d: &RoundSurgeryDiagram) -> bool {
    if !d.dehn.is_empty() {
        return false;
    }
    if d.round2.iter().any(|r| r.joint_with.is_none_or(|j| j >= d.round1.len())) {
        return false;
    }
    if d.round1.len() != d.round2.len() {
        return false;
    }
    (0..d.round1.len()).all(|i| {
        matches!(check_nice(d, i), Ok(rep) if rep.nice)
            && d.joint_partner(i).is_some_and(|r2| r2.coeff == SlopeQ::MINUS_ONE)
    })
}
