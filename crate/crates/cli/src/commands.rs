use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use anyhow::Context;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use stubborn_core::blowup::{delta_invariants_at, BlowupError};
use stubborn_core::newton::{
    exact_nonsos_test, half_support, newton_polytope, parity_classes, replay_certificate, NewtonError,
    NonSosOutcome,
};
use stubborn_core::poly::{parse_auto, parse_poly_file, Polynomial, ProjectivePoint};
use stubborn_core::sos::{
    gram_problem, numeric_certificate, rounding, sdp_feasibility, threshold_bisection, verify_certificate, Family,
    SdpTolerances, SosError, ThresholdSettings, Verdict,
};
use stubborn_core::stubborn::{
    certify_stubborn, lift_by_monomial, parse_zero_file, restriction_transfer, StubbornError, StubbornOptions,
    StubbornnessCertificate, ZeroInput, NONNEG_SAMPLES,
};
use stubborn_core::zeros::ZeroError;

use crate::report::{input_err, to_value, Failure, Outcome};

pub struct Loaded {
    pub poly: Polynomial,
    pub source: Value,
}

/// A path to a `.poly` file, or an inline expression.
pub fn load_poly(arg: &str) -> Result<Loaded, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let f = parse_poly_file(&text).map_err(|e| input_err(format!("{arg}: {e}")))?;
        return Ok(Loaded { poly: f.poly, source: json!({ "file": arg }) });
    }
    let poly = parse_auto(arg).map_err(|e| input_err(format!("expression `{arg}`: {e}")))?;
    Ok(Loaded { poly, source: json!({ "expression": arg }) })
}

/// `3`, `-7/2` or a plain decimal such as `2.565`, read exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, Failure> {
    let t = s.trim();
    if let Ok(r) = BigRational::from_str(t) {
        return Ok(r);
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if let Some((int, frac)) = body.split_once('.') {
        let digits = format!("{int}{frac}");
        if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
            let num = num_bigint::BigInt::from_str(&digits).expect("digits");
            let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
            let r = BigRational::new(num, den);
            return Ok(if neg { -r } else { r });
        }
    }
    match t.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(BigRational::from_float(x).expect("finite")),
        _ => Err(input_err(format!("`{s}` is not a rational number"))),
    }
}

fn ternary_form(p: &Polynomial, what: &str) -> Result<(), Failure> {
    if p.nvars() != 3 {
        return Err(input_err(format!("{what} needs a ternary form, got variables {:?}", p.vars())));
    }
    if !p.is_homogeneous() {
        return Err(input_err(format!("{what} needs a homogeneous form")));
    }
    Ok(())
}

fn elapsed(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

fn monomial(vars: &[String], e: &[u32]) -> String {
    Polynomial::monomial_string(vars, e)
}

pub fn info(arg: &str) -> Result<Outcome, Failure> {
    let t0 = Instant::now();
    let Loaded { poly, source } = load_poly(arg)?;
    if poly.is_zero() {
        return Err(input_err("zero polynomial"));
    }
    let vars = poly.vars().to_vec();
    let mut results = json!({
        "polynomial": poly.to_string(),
        "vars": vars,
        "terms": poly.num_terms(),
        "degree": poly.degree(),
        "homogeneous": poly.is_homogeneous(),
        "even_form": poly.is_even_form(),
        "rational": poly.is_rational(),
    });
    match newton_polytope(&poly) {
        Ok(np) => {
            results["newton_polytope"] = json!({
                "vertices": np.hull,
                "planar": np.planar,
                "lattice_points": np.lattice.len(),
            });
            let half = half_support(&poly).expect("polytope exists");
            let classes = parity_classes(&half);
            results["half_support"] = json!({
                "count": half.len(),
                "monomials": half.iter().map(|e| monomial(&vars, e)).collect::<Vec<_>>(),
            });
            results["parity_classes"] = json!({
                "count": classes.len(),
                "all_singletons": classes.all_singletons(),
                "classes": classes.classes.iter().map(|(k, v)| json!({
                    "parity": k,
                    "monomials": v.iter().map(|e| monomial(&vars, e)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            if let Ok(out) = exact_nonsos_test(&poly) {
                results["exact_nonsos_test"] = to_value(&out);
            }
        }
        Err(e) => {
            results["newton_polytope"] = json!({ "unavailable": e.to_string() });
        }
    }
    let mut out = Outcome { inputs: json!({ "polynomial": source }), results, ..Default::default() };
    out.timings.insert("total".into(), elapsed(t0));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DeltaVariant {
    Complex,
    Real,
    Sos,
    All,
}

pub fn delta(arg: &str, at: &str, variant: DeltaVariant) -> Result<Outcome, Failure> {
    let t0 = Instant::now();
    let Loaded { poly, source } = load_poly(arg)?;
    ternary_form(&poly, "delta")?;
    let point = ProjectivePoint::parse(at).map_err(|e| input_err(format!("--at: {e}")))?;
    if point.dim() != 3 {
        return Err(input_err("--at needs three coordinates"));
    }
    let inputs = json!({ "polynomial": source, "at": at, "variant": format!("{variant:?}").to_lowercase() });
    let inv = match delta_invariants_at(&poly, &point) {
        Ok(inv) => inv,
        Err(BlowupError::NotAZero) => return Err(input_err(format!("{point} is not a zero of the form"))),
        Err(e) => return Err(Failure::Inapplicable { inputs, reason: e.to_string(), hint: None }),
    };
    let mut results = json!({
        "point": point,
        "multiplicity": inv.tree.m,
        "non_reduced": inv.non_reduced,
    });
    let show = |v: DeltaVariant| variant == v || variant == DeltaVariant::All;
    if show(DeltaVariant::Complex) {
        results["delta"] = json!(inv.delta);
    }
    if show(DeltaVariant::Real) {
        results["delta_real"] = json!(inv.delta_real);
        results["delta_real_strict"] = json!(inv.delta_real_strict);
    }
    if show(DeltaVariant::Sos) {
        results["delta_sos"] = json!(inv.delta_sos.as_ref().map(|r| r.to_string()));
    }
    results["tree"] = to_value(&inv.tree);
    let mut out = Outcome { inputs, results, ..Default::default() };
    out.timings.insert("total".into(), elapsed(t0));
    Ok(out)
}

fn stubborn_failure(e: StubbornError, inputs: Value) -> Failure {
    match e {
        StubbornError::Zeros(ZeroError::NotTernary) => Failure::Inapplicable {
            inputs,
            reason: e.to_string(),
            hint: Some("forms in more variables: verify a restriction to a ternary form with `stubborn restrict`".into()),
        },
        StubbornError::NonIsolated(_) => Failure::Inapplicable {
            inputs,
            reason: e.to_string(),
            hint: Some("δ^sos needs isolated zeros; try `stubborn restrict` with a certified ternary image".into()),
        },
        StubbornError::Zeros(_)
        | StubbornError::ZeroFile { .. }
        | StubbornError::NotASingularZero(_)
        | StubbornError::IdentityMismatch { .. } => Failure::Input(e.into()),
        other => Failure::Inapplicable { inputs, reason: other.to_string(), hint: None },
    }
}

fn stubborn_tolerances() -> Value {
    json!({ "nonnegativity_samples": NONNEG_SAMPLES })
}

fn certify(poly: &Polynomial, opts: &StubbornOptions, inputs: &Value) -> Result<StubbornnessCertificate, Failure> {
    certify_stubborn(poly, opts).map_err(|e| stubborn_failure(e, inputs.clone()))
}

pub fn stubborn(arg: &str, zeros: &str, jobs: usize, trees: bool) -> Result<Outcome, Failure> {
    let t0 = Instant::now();
    let Loaded { poly, source } = load_poly(arg)?;
    let inputs = json!({ "polynomial": source, "zeros": zeros, "jobs": jobs });
    let zeros = if zeros == "auto" {
        ZeroInput::Auto
    } else {
        let text = std::fs::read_to_string(zeros).with_context(|| format!("reading zero file {zeros}"))?;
        ZeroInput::Supplied(parse_zero_file(&text).map_err(|e| input_err(format!("{zeros}: {e}")))?)
    };
    let opts = StubbornOptions { zeros, jobs, keep_trees: trees };
    let cert = certify(&poly, &opts, &inputs)?;
    let seed = cert.nonnegativity.seed;
    let mut out = Outcome {
        inputs,
        results: to_value(&cert),
        tolerances: Some(stubborn_tolerances()),
        seeds: Some(json!({ "nonnegativity_sampling": seed })),
        ..Default::default()
    };
    out.timings.insert("total".into(), elapsed(t0));
    Ok(out)
}

fn sos_failure(e: SosError, inputs: Value) -> Failure {
    match e {
        SosError::Parse(_) | SosError::EvenPower(_) | SosError::InvalidBracket(_) | SosError::VariableMismatch(_) => {
            Failure::Input(e.into())
        }
        other => Failure::Inapplicable { inputs, reason: other.to_string(), hint: None },
    }
}

pub fn sos(arg: &str, power: u32, exact_first: bool, parity_blocks: bool, tol: SdpTolerances) -> Result<Outcome, Failure> {
    let t0 = Instant::now();
    let Loaded { poly, source } = load_poly(arg)?;
    if power == 0 || power % 2 == 0 {
        return Err(input_err(format!("--power must be odd and positive, got {power}")));
    }
    if poly.is_zero() {
        return Err(input_err("zero polynomial"));
    }
    let inputs = json!({ "polynomial": source, "power": power, "exact_first": exact_first, "parity_blocks": parity_blocks });
    let target = poly.pow(power);
    let mut out = Outcome { inputs: inputs.clone(), tolerances: Some(to_value(&tol)), ..Default::default() };
    if exact_first {
        let t = Instant::now();
        let res = exact_nonsos_test(&target);
        out.timings.insert("exact".into(), elapsed(t));
        match res {
            Ok(NonSosOutcome::Certificate(cert)) => {
                let replayed = replay_certificate(&target, &cert).is_ok();
                out.results = json!({
                    "sos": false,
                    "method": "exact-newton",
                    "exact": true,
                    "certificate": cert,
                    "replayed": replayed,
                });
                out.timings.insert("total".into(), elapsed(t0));
                return Ok(out);
            }
            Ok(NonSosOutcome::Inconclusive { reason }) => {
                log::info!("exact test inconclusive: {reason}");
            }
            Err(NewtonError::OddDegree(d)) => {
                return Err(Failure::Inapplicable {
                    inputs,
                    reason: format!("odd degree {d}: not a sum of squares"),
                    hint: None,
                })
            }
            Err(e) => return Err(input_err(e)),
        }
    }
    let t = Instant::now();
    let problem = gram_problem(&target, parity_blocks).map_err(|e| sos_failure(e, inputs.clone()))?;
    let report = sdp_feasibility(&problem, &tol);
    out.timings.insert("sdp".into(), elapsed(t));
    let mut results = json!({
        "method": "sdp",
        "verdict": report.verdict,
        "sdp": report,
    });
    match report.verdict {
        Verdict::Feasible => {
            let t = Instant::now();
            let g = report.gram.as_ref().expect("feasible report carries a Gram matrix");
            let cert = rounding::round_gram(&problem, g).unwrap_or_else(|| numeric_certificate(&target, &problem, g));
            let residual = verify_certificate(&target, &cert).map_err(|e| sos_failure(e, inputs.clone()))?;
            out.timings.insert("certificate".into(), elapsed(t));
            results["sos"] = json!(true);
            results["exact"] = json!(residual.is_zero());
            results["certificate"] = to_value(&cert);
        }
        Verdict::Infeasible => {
            results["sos"] = json!(false);
            results["exact"] = json!(!report.unreachable.is_empty());
        }
        Verdict::Indeterminate => {
            results["sos"] = Value::Null;
            results["exact"] = json!(false);
        }
    }
    out.results = results;
    out.timings.insert("total".into(), elapsed(t0));
    Ok(out)
}

pub fn threshold(
    family: &str,
    power: u32,
    bracket: Option<&[String]>,
    tol: f64,
    sdp: SdpTolerances,
) -> Result<Outcome, Failure> {
    let t0 = Instant::now();
    let fam = Family::parse(family)
        .ok_or_else(|| input_err(format!("unknown family `{family}` (expected motzkin-a or stengle-c)")))?;
    let mut s = ThresholdSettings::new(fam, power);
    s.tol = tol;
    s.sdp = sdp;
    if let Some(b) = bracket {
        s.lo = parse_rational(&b[0])?;
        s.hi = parse_rational(&b[1])?;
    }
    let inputs = json!({
        "family": fam.name(),
        "power": power,
        "bracket": [s.lo.to_string(), s.hi.to_string()],
    });
    let r = threshold_bisection(&s).map_err(|e| sos_failure(e, inputs.clone()))?;
    let mut out = Outcome {
        inputs,
        results: to_value(&r),
        tolerances: Some(json!({ "tol": tol, "sdp": sdp })),
        ..Default::default()
    };
    out.timings.insert("total".into(), elapsed(t0));
    Ok(out)
}

/// Homogenize a non-homogeneous base with a fresh variable so it can be
/// certified as a form.
fn as_form(base: &Polynomial) -> Result<Polynomial, Failure> {
    if base.is_homogeneous() {
        return Ok(base.clone());
    }
    let fresh = ["X3", "Z", "W", "T"]
        .into_iter()
        .find(|v| base.var_index(v).is_none())
        .expect("some name is free");
    let d = base.degree().unwrap_or(0);
    base.homogenize(fresh, d).map_err(|e| input_err(e))
}

pub fn restrict(arg: &str, sets: &[String], base_arg: &str, certify_base: bool, jobs: usize) -> Result<Outcome, Failure> {
    let t0 = Instant::now();
    let Loaded { poly, source } = load_poly(arg)?;
    let Loaded { poly: base, source: base_source } = load_poly(base_arg)?;
    let mut sigma = BTreeMap::new();
    for s in sets {
        let (var, img) = s.split_once('=').ok_or_else(|| input_err(format!("--set `{s}`: expected VAR=EXPR")))?;
        let var = var.trim();
        if poly.var_index(var).is_none() {
            return Err(input_err(format!("--set `{s}`: {var} is not a variable of the polynomial")));
        }
        let img = parse_auto(img).map_err(|e| input_err(format!("--set `{s}`: {e}")))?;
        sigma.insert(var.to_string(), img);
    }
    let inputs = json!({
        "polynomial": source,
        "substitution": sets,
        "base": base_source,
        "certify_base": certify_base,
    });
    let base_cert = if certify_base {
        let form = as_form(&base)?;
        let opts = StubbornOptions { jobs, keep_trees: false, ..Default::default() };
        Some(certify(&form, &opts, &inputs)?)
    } else {
        None
    };
    let note = restriction_transfer(&poly, &sigma, &base, base_cert.as_ref()).map_err(|e| stubborn_failure(e, inputs.clone()))?;
    let mut out = Outcome {
        inputs,
        results: json!({ "identity_verified": true, "transfer": note, "base_certificate": base_cert }),
        ..Default::default()
    };
    if certify_base {
        out.tolerances = Some(stubborn_tolerances());
    }
    out.timings.insert("total".into(), elapsed(t0));
    Ok(out)
}

pub fn lift(arg: &str, m: u32, certify_base: bool, jobs: usize) -> Result<Outcome, Failure> {
    let t0 = Instant::now();
    let Loaded { poly, source } = load_poly(arg)?;
    if poly.is_zero() {
        return Err(input_err("zero polynomial"));
    }
    let inputs = json!({ "polynomial": source, "m": m, "certify_base": certify_base });
    let base_cert = if certify_base {
        let opts = StubbornOptions { jobs, keep_trees: false, ..Default::default() };
        Some(certify(&poly, &opts, &inputs)?)
    } else {
        None
    };
    let (lifted, note) = lift_by_monomial(&poly, m, base_cert.as_ref());
    let mut out = Outcome {
        inputs,
        results: json!({ "lifted": lifted.to_string(), "transfer": note, "base_certificate": base_cert }),
        ..Default::default()
    };
    out.timings.insert("total".into(), elapsed(t0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use stubborn_core::coeff::rat;

    #[test]
    fn rationals() {
        assert!(matches!(parse_rational("2.565"), Ok(r) if r == rat(513, 200)));
        assert!(matches!(parse_rational("-7/2"), Ok(r) if r == rat(-7, 2)));
        assert!(matches!(parse_rational("3"), Ok(r) if r == rat(3, 1)));
        assert!(matches!(parse_rational("1e-1"), Ok(r) if r > rat(0, 1) && r < BigRational::one()));
        assert!(parse_rational("abc").is_err());
    }
}
