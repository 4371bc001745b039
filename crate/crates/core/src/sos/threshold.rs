//! Bisection for the boundary of a one-parameter family.
//!
//! `motzkin-a` probes SOS-ness of M_a^k: the exact parity test first, then
//! the SDP. `stengle-c` probes nonnegativity of T_c exactly. Minimizing T_c
//! over X2 on X3 = 1 leaves x²(c·x + (x² + 1)²), so T_c ≥ 0 iff
//! t⁶ + 2t⁴ + c·t³ + t² ≥ 0 on ℝ.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::{gram_problem, sdp_feasibility, SdpTolerances, SosError, Verdict};
use crate::coeff::{rat, Coeff};
use crate::fixtures::motzkin_a;
use crate::newton::exact_nonsos_test;
use crate::realroots::{ser_rat, univariate_nonneg_upoly, NonnegWitness};
use crate::upoly::UPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    MotzkinA,
    StengleC,
}

impl Family {
    pub fn parse(name: &str) -> Option<Family> {
        match name {
            "motzkin-a" => Some(Family::MotzkinA),
            "stengle-c" => Some(Family::StengleC),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::MotzkinA => "motzkin-a",
            Family::StengleC => "stengle-c",
        }
    }

    pub fn parameter(&self) -> &'static str {
        match self {
            Family::MotzkinA => "a",
            Family::StengleC => "c",
        }
    }

    /// Default bracket (feasible end first).
    pub fn default_bracket(&self, power: u32) -> (BigRational, BigRational) {
        match (self, power) {
            (Family::MotzkinA, 1) => (rat(-1, 1), rat(1, 1)),
            (Family::MotzkinA, _) => (rat(1, 1), rat(3, 1)),
            (Family::StengleC, _) => (rat(0, 1), rat(4, 1)),
        }
    }
}

/// t⁶ + 2t⁴ + c·t³ + t²
pub fn stengle_restriction(c: &BigRational) -> UPoly {
    let z = Coeff::zero();
    let one = Coeff::one();
    UPoly::new(vec![
        z.clone(),
        z.clone(),
        one.clone(),
        Coeff::from_rational(c.clone()),
        Coeff::from_int(2),
        z,
        one,
    ])
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum ProbeEvidence {
    /// Exact parity-class obstruction.
    ExactNewton { monomial: Vec<u32>, coefficient: String },
    Sdp {
        verdict: Verdict,
        lambda_min: f64,
        primal_bound: f64,
        dual_bound: f64,
        residual: f64,
        iterations: usize,
        /// The SDP was indeterminate and the sign of the objective decided.
        resolved_by_objective: bool,
    },
    /// Exact univariate nonnegativity of the Stengle restriction.
    ExactUnivariate {
        #[serde(skip_serializing_if = "Option::is_none")]
        negative_at: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        negative_value: Option<String>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Probe {
    #[serde(serialize_with = "ser_rat")]
    pub value: BigRational,
    pub value_f64: f64,
    pub feasible: bool,
    pub evidence: ProbeEvidence,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdSettings {
    pub family: Family,
    pub power: u32,
    #[serde(serialize_with = "ser_rat")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub hi: BigRational,
    pub tol: f64,
    pub sdp: SdpTolerances,
}

impl ThresholdSettings {
    pub fn new(family: Family, power: u32) -> Self {
        let (lo, hi) = family.default_bracket(power);
        ThresholdSettings { family, power, lo, hi, tol: 1e-3, sdp: SdpTolerances::default() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdResult {
    pub family: Family,
    pub parameter: String,
    pub power: u32,
    #[serde(serialize_with = "ser_rat")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub hi: BigRational,
    pub lo_f64: f64,
    pub hi_f64: f64,
    pub estimate: f64,
    pub tol: f64,
    pub iterations: usize,
    /// Evidence at the final endpoints, then every interior probe in order.
    pub lo_probe: Probe,
    pub hi_probe: Probe,
    pub probes: Vec<Probe>,
}

fn probe(settings: &ThresholdSettings, v: &BigRational) -> Probe {
    let value_f64 = v.to_f64().unwrap_or(f64::NAN);
    match settings.family {
        Family::StengleC => {
            let r = univariate_nonneg_upoly(&stengle_restriction(v)).expect("nonzero");
            let (negative_at, negative_value) = match &r.witness {
                NonnegWitness::Negative { at, value } => (Some(at.to_string()), Some(value.to_string())),
                NonnegWitness::EvenRoots { .. } => (None, None),
            };
            Probe {
                value: v.clone(),
                value_f64,
                feasible: r.nonnegative,
                evidence: ProbeEvidence::ExactUnivariate { negative_at, negative_value },
            }
        }
        Family::MotzkinA => {
            let p = motzkin_a(v);
            if settings.power == 1 {
                if let Ok(out) = exact_nonsos_test(&p) {
                    if let Some(c) = out.certificate() {
                        return Probe {
                            value: v.clone(),
                            value_f64,
                            feasible: false,
                            evidence: ProbeEvidence::ExactNewton {
                                monomial: c.monomial.clone(),
                                coefficient: c.coefficient.to_string(),
                            },
                        };
                    }
                }
            }
            let pk = p.pow(settings.power);
            let report = gram_problem(&pk, true)
                .map(|g| sdp_feasibility(&g, &settings.sdp))
                .expect("M_a^k has even degree");
            let (feasible, resolved) = match report.verdict {
                Verdict::Feasible => (true, false),
                Verdict::Infeasible => (false, false),
                Verdict::Indeterminate => (report.objective() > -settings.sdp.eig_tol, true),
            };
            Probe {
                value: v.clone(),
                value_f64,
                feasible,
                evidence: ProbeEvidence::Sdp {
                    verdict: report.verdict,
                    lambda_min: report.lambda_min,
                    primal_bound: report.primal_bound,
                    dual_bound: report.dual_bound,
                    residual: report.residual,
                    iterations: report.iterations,
                    resolved_by_objective: resolved,
                },
            }
        }
    }
}

/// Bisect at exact rational midpoints until hi − lo ≤ tol. The family is
/// assumed monotone: feasible below the threshold, infeasible above.
pub fn threshold_bisection(settings: &ThresholdSettings) -> Result<ThresholdResult, SosError> {
    if settings.family == Family::MotzkinA && settings.power % 2 == 0 {
        return Err(SosError::EvenPower(settings.power));
    }
    if settings.lo >= settings.hi || !(settings.tol > 0.0) {
        return Err(SosError::InvalidBracket("need lo < hi and tol > 0".into()));
    }
    let mut lo_probe = probe(settings, &settings.lo);
    if !lo_probe.feasible {
        return Err(SosError::InvalidBracket(format!("lower end {} is not feasible", settings.lo)));
    }
    let mut hi_probe = probe(settings, &settings.hi);
    if hi_probe.feasible {
        return Err(SosError::InvalidBracket(format!("upper end {} is feasible", settings.hi)));
    }
    let tol = BigRational::from_float(settings.tol).expect("finite tol");
    let mut probes = Vec::new();
    while (&hi_probe.value - &lo_probe.value).abs() > tol {
        let mid = (&lo_probe.value + &hi_probe.value) / rat(2, 1);
        let pr = probe(settings, &mid);
        log::debug!("{} = {} feasible={}", settings.family.parameter(), pr.value_f64, pr.feasible);
        probes.push(pr.clone());
        if pr.feasible {
            lo_probe = pr;
        } else {
            hi_probe = pr;
        }
    }
    let lo_f64 = lo_probe.value_f64;
    let hi_f64 = hi_probe.value_f64;
    Ok(ThresholdResult {
        family: settings.family,
        parameter: settings.family.parameter().to_string(),
        power: settings.power,
        lo: lo_probe.value.clone(),
        hi: hi_probe.value.clone(),
        lo_f64,
        hi_f64,
        estimate: 0.5 * (lo_f64 + hi_f64),
        tol: settings.tol,
        iterations: probes.len(),
        lo_probe,
        hi_probe,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn restriction_matches_family() {
        // T_c on X3 = 1, X2 = 0 equals the restriction polynomial at t = X1.
        let c = rat(5, 2);
        let t = fixtures::stengle_c(&c);
        let r = stengle_restriction(&c);
        for x in [-2i64, -1, 3] {
            let v = t.eval(&[Coeff::from_int(x), Coeff::zero(), Coeff::one()]);
            assert_eq!(v, r.eval(&Coeff::from_int(x)));
        }
    }

    #[test]
    fn stengle_threshold() {
        let mut s = ThresholdSettings::new(Family::StengleC, 1);
        s.tol = 1e-4;
        let r = threshold_bisection(&s).unwrap();
        let target = 16.0 * 3f64.sqrt() / 9.0;
        assert!(r.lo_f64 <= target && target <= r.hi_f64);
        assert!(r.hi_f64 - r.lo_f64 <= 1e-4);
        assert!(r.lo_probe.feasible && !r.hi_probe.feasible);
    }

    #[test]
    fn motzkin_power_one_threshold_is_zero() {
        let mut s = ThresholdSettings::new(Family::MotzkinA, 1);
        s.tol = 1e-3;
        let r = threshold_bisection(&s).unwrap();
        assert!(r.lo_f64 <= 0.0 && 0.0 <= r.hi_f64, "{} {}", r.lo_f64, r.hi_f64);
        assert!(matches!(r.hi_probe.evidence, ProbeEvidence::ExactNewton { .. }));
    }

    #[test]
    fn bad_brackets() {
        let mut s = ThresholdSettings::new(Family::StengleC, 1);
        s.lo = rat(7, 2);
        assert!(matches!(threshold_bisection(&s), Err(SosError::InvalidBracket(_))));
        let mut s = ThresholdSettings::new(Family::StengleC, 1);
        s.hi = rat(3, 1);
        assert!(matches!(threshold_bisection(&s), Err(SosError::InvalidBracket(_))));
    }
}
