//! Stubbornness certificates for nonnegative ternary forms.
//!
//! A nonnegative form P of degree d whose real zeros are isolated is
//! stubborn (no odd power is a sum of squares) once the sum of δ^sos over
//! its real zeros exceeds d²/4. Transfers extend a certificate to
//! X1^{2m}·P and to forms that restrict to a certified one.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::blowup::{delta_invariants_at, intersection_multiplicity, BlowupError, IntersectionNumber, ResolutionNode};
use crate::coeff::{rat, Coeff};
use crate::poly::{Polynomial, ProjectivePoint};
use crate::realroots::{ser_rat, univariate_nonneg, NonnegWitness};
use crate::zeros::{common_zeros, locate_real_zeros, Completeness, ZeroError, ZeroSet};

/// Random points on the unit sphere tested before any zero is examined.
pub const NONNEG_SAMPLES: usize = 4096;
const SAMPLE_SEED: u64 = 0x57_0bb0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StubbornError {
    #[error(transparent)]
    Zeros(#[from] ZeroError),
    #[error("the form has odd degree {0} and takes negative values")]
    OddDegree(u32),
    #[error("the form is negative at {at}: value {value}")]
    NotNonnegative { at: String, value: String },
    #[error("the form changes sign near its zero {0}")]
    LocallyIndefinite(String),
    #[error("the real zero set is not finite: {0}")]
    NonIsolated(String),
    #[error("{0} is not a singular real zero of the form")]
    NotASingularZero(String),
    #[error("zero file line {line}: {message}")]
    ZeroFile { line: usize, message: String },
    #[error("blow-up failed at {point}: {source}")]
    Blowup { point: String, source: BlowupError },
    #[error("identity fails at monomial {monomial}: substituted form has {actual}, base has {expected}")]
    IdentityMismatch { monomial: String, expected: String, actual: String },
    #[error("the forms share a component through {0}")]
    CommonComponent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StubbornVerdict {
    Stubborn,
    Inconclusive,
}

/// Which argument produced the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Provenance {
    /// Σ δ^sos over the real zeros exceeds d²/4.
    SosInvariantTotal,
    /// More than d²/4 isolated real zeros, each contributing at least 1.
    IsolatedZeroCount,
    LiftedByMonomial { m: u32 },
    RestrictedBySubstitution { substitution: BTreeMap<String, String> },
}

#[derive(Debug, Clone, Serialize)]
pub struct NonnegativityCheck {
    /// Nonnegativity is an input assumption; the checks below only search
    /// for a counterexample.
    pub assumed: bool,
    pub samples: usize,
    pub seed: u64,
    /// Smallest sampled value divided by the largest coefficient.
    pub min_sampled: f64,
    /// Lines on which the restriction was proved nonnegative exactly.
    pub exact_fibers: usize,
    /// Every zero's resolution tree has nonnegative real tangent cones.
    pub local_checks_passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroContribution {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
    /// Ordinary double point with δ^sos = 1.
    pub round: bool,
    #[serde(serialize_with = "ser_opt")]
    pub delta_sos: Option<BigRational>,
    pub delta: Option<u64>,
    pub delta_real: Option<u64>,
    /// Set when δ^sos is unknown and the lower bound 1 was used instead.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unresolved: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<ResolutionNode>,
}

fn ser_opt<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StubbornnessCertificate {
    pub form: Polynomial,
    pub degree: u32,
    pub zeros: Vec<ZeroContribution>,
    pub completeness: Completeness,
    /// Σ δ^sos, with 1 in place of any unresolved contribution.
    #[serde(serialize_with = "ser_rat")]
    pub total: BigRational,
    pub total_is_lower_bound: bool,
    #[serde(serialize_with = "ser_rat")]
    pub threshold: BigRational,
    pub delta_total: Option<u64>,
    pub delta_real_total: Option<u64>,
    pub verdict: StubbornVerdict,
    pub provenance: Provenance,
    pub nonnegativity: NonnegativityCheck,
    pub notes: Vec<String>,
}

impl StubbornnessCertificate {
    pub fn is_stubborn(&self) -> bool {
        self.verdict == StubbornVerdict::Stubborn
    }

    pub fn delta_sos_values(&self) -> Vec<Option<BigRational>> {
        self.zeros.iter().map(|z| z.delta_sos.clone()).collect()
    }
}

/// Where the zeros come from.
#[derive(Debug, Clone)]
pub enum ZeroInput {
    Auto,
    Supplied(Vec<ProjectivePoint>),
}

#[derive(Debug, Clone)]
pub struct StubbornOptions {
    pub zeros: ZeroInput,
    /// Worker threads for the per-zero blow-ups; 0 uses rayon's default.
    pub jobs: usize,
    /// Keep resolution trees in the certificate.
    pub keep_trees: bool,
}

impl Default for StubbornOptions {
    fn default() -> Self {
        StubbornOptions { zeros: ZeroInput::Auto, jobs: 0, keep_trees: true }
    }
}

/// One projective point per line; blank lines and `#` comments are skipped.
pub fn parse_zero_file(text: &str) -> Result<Vec<ProjectivePoint>, StubbornError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = ProjectivePoint::parse(line)
            .map_err(|e| StubbornError::ZeroFile { line: i + 1, message: e.to_string() })?;
        out.push(p);
    }
    Ok(out)
}

fn check_form(p: &Polynomial) -> Result<u32, StubbornError> {
    if p.nvars() != 3 {
        return Err(ZeroError::NotTernary.into());
    }
    if !p.is_homogeneous() {
        return Err(ZeroError::NotHomogeneous.into());
    }
    if p.is_zero() {
        return Err(ZeroError::ZeroPolynomial.into());
    }
    let d = p.degree().expect("nonzero");
    if d % 2 == 1 {
        return Err(StubbornError::OddDegree(d));
    }
    Ok(d)
}

fn rational_point(v: &[f64]) -> Vec<Coeff> {
    v.iter().map(|&x| Coeff::from_rational(BigRational::from_float(x).expect("finite"))).collect()
}

/// Sampling on the sphere plus exact checks on rational lines. Any negative
/// value found is confirmed exactly before it is reported.
fn check_nonnegative(p: &Polynomial) -> Result<NonnegativityCheck, StubbornError> {
    let scale = p.terms().values().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut min_sampled = f64::INFINITY;
    for _ in 0..NONNEG_SAMPLES {
        let mut v: [f64; 3] = [0.0; 3];
        for x in &mut v {
            *x = rng.gen_range(-1.0..1.0);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-3 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= n);
        let val = p.eval_f64(&v) / scale;
        min_sampled = min_sampled.min(val);
        if val < 0.0 {
            let pt = rational_point(&v);
            let exact = p.eval(&pt);
            if exact.sign() == Some(std::cmp::Ordering::Less) {
                return Err(StubbornError::NotNonnegative {
                    at: format!("({:.6}, {:.6}, {:.6})", v[0], v[1], v[2]),
                    value: format!("{:.6e}", exact.to_f64()),
                });
            }
        }
    }
    let mut exact_fibers = 0;
    let slopes = [rat(-2, 1), rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1)];
    for free in 0..2 {
        let fixed = 1 - free;
        for q in &slopes {
            let line = p.partial_eval(&[(fixed, Coeff::from_rational(q.clone())), (2, Coeff::one())]);
            if line.is_zero() {
                continue;
            }
            let r = univariate_nonneg(&line).expect("univariate restriction");
            if let NonnegWitness::Negative { at, value } = r.witness {
                let mut coords = vec![String::new(); 3];
                coords[free] = at.to_string();
                coords[fixed] = q.to_string();
                coords[2] = "1".into();
                return Err(StubbornError::NotNonnegative {
                    at: format!("[{}]", coords.join(":")),
                    value: value.to_string(),
                });
            }
            exact_fibers += 1;
        }
    }
    Ok(NonnegativityCheck {
        assumed: true,
        samples: NONNEG_SAMPLES,
        seed: SAMPLE_SEED,
        min_sampled,
        exact_fibers,
        local_checks_passed: false,
    })
}

fn is_singular_zero(p: &Polynomial, pt: &ProjectivePoint) -> bool {
    p.eval(pt.coords()).is_zero() && (0..3).all(|i| p.derivative(i).eval(pt.coords()).is_zero())
}

fn contribution(p: &Polynomial, pt: &ProjectivePoint, keep_tree: bool) -> Result<ZeroContribution, StubbornError> {
    match delta_invariants_at(p, pt) {
        Ok(inv) => {
            if !inv.tree.all_real_locally_nonnegative() {
                return Err(StubbornError::LocallyIndefinite(pt.to_string()));
            }
            let round = inv.tree.m == 2 && inv.delta_sos == Some(rat(1, 1));
            Ok(ZeroContribution {
                point: pt.clone(),
                multiplicity: inv.tree.m,
                round,
                delta_sos: inv.delta_sos,
                delta: inv.delta,
                delta_real: inv.delta_real,
                unresolved: None,
                tree: keep_tree.then_some(inv.tree),
            })
        }
        Err(BlowupError::NonIsolated) => Err(StubbornError::NonIsolated(format!("real curve through {pt}"))),
        Err(e @ (BlowupError::UnsupportedExtension(_) | BlowupError::DepthExceeded(_))) => {
            let m = p.dehomogenize(&p.vars()[pt.chart_index()]).expect("ternary").multiplicity_at(&pt.affine_center()).0;
            Ok(ZeroContribution {
                point: pt.clone(),
                multiplicity: m,
                round: false,
                delta_sos: None,
                delta: None,
                delta_real: None,
                unresolved: Some(e.to_string()),
                tree: None,
            })
        }
        Err(source) => Err(StubbornError::Blowup { point: pt.to_string(), source }),
    }
}

/// Apply the δ^sos > d²/4 criterion to a nonnegative ternary form.
pub fn certify_stubborn(p: &Polynomial, opts: &StubbornOptions) -> Result<StubbornnessCertificate, StubbornError> {
    let d = check_form(p)?;
    let mut nonneg = check_nonnegative(p)?;
    let zero_set = match &opts.zeros {
        ZeroInput::Auto => {
            let zs = locate_real_zeros(p)?;
            if zs.positive_dimensional {
                let why = match &zs.completeness {
                    Completeness::Partial { reasons } => reasons.join("; "),
                    Completeness::Complete => "positive-dimensional zero set".into(),
                };
                return Err(StubbornError::NonIsolated(why));
            }
            zs
        }
        ZeroInput::Supplied(points) => ZeroSet {
                points: points.clone(),
                completeness: Completeness::Partial { reasons: vec!["zeros supplied by the user".into()] },
                positive_dimensional: false,
        },
    };
    for pt in &zero_set.points {
        if pt.dim() != 3 || !pt.is_real() || !is_singular_zero(p, pt) {
            return Err(StubbornError::NotASingularZero(pt.to_string()));
        }
    }
    let run = || -> Result<Vec<ZeroContribution>, StubbornError> {
        zero_set.points.par_iter().map(|pt| contribution(p, pt, opts.keep_trees)).collect()
    };
    let zeros = if opts.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().expect("thread pool");
        pool.install(run)?
    } else {
        run()?
    };
    nonneg.local_checks_passed = true;

    let one = rat(1, 1);
    let total: BigRational = zeros.iter().map(|z| z.delta_sos.clone().unwrap_or_else(|| one.clone())).sum();
    let unresolved = zeros.iter().filter(|z| z.delta_sos.is_none()).count();
    let threshold = BigRational::from_integer((d * d).into()) / BigRational::from_integer(4.into());
    let verdict = if total > threshold { StubbornVerdict::Stubborn } else { StubbornVerdict::Inconclusive };
    let count = BigRational::from_integer(zeros.len().into());
    let provenance = if unresolved > 0 && count > threshold {
        Provenance::IsolatedZeroCount
    } else {
        Provenance::SosInvariantTotal
    };
    let delta_total = zeros.iter().map(|z| z.delta).sum::<Option<u64>>();
    let delta_real_total = zeros.iter().map(|z| z.delta_real).sum::<Option<u64>>();

    let mut notes = vec![format!(
        "nonnegativity assumed: no negative value among {NONNEG_SAMPLES} samples, {} exact line restrictions nonnegative, every zero locally nonnegative",
        nonneg.exact_fibers
    )];
    if let Completeness::Partial { reasons } = &zero_set.completeness {
        notes.push(format!("zero set may be partial ({}); a stubborn verdict stays valid since contributions are nonnegative", reasons.join("; ")));
    }
    if unresolved > 0 {
        notes.push(format!("{unresolved} zero(s) counted with the lower bound δ^sos ≥ 1"));
    }
    if verdict == StubbornVerdict::Inconclusive {
        if total == threshold {
            notes.push("total equals d²/4; the criterion needs a strict inequality".into());
        }
        notes.push("inconclusive is not a claim that some odd power is a sum of squares; other arguments (such as Stengle's for T) are not implemented".into());
    }
    Ok(StubbornnessCertificate {
        form: p.clone(),
        degree: d,
        zeros,
        completeness: zero_set.completeness,
        total,
        total_is_lower_bound: unresolved > 0,
        threshold,
        delta_total,
        delta_real_total,
        verdict,
        provenance,
        nonnegativity: nonneg,
        notes,
    })
}

/// A certificate derived from another one.
#[derive(Debug, Clone, Serialize)]
pub struct TransferNote {
    pub provenance: Provenance,
    pub form: Polynomial,
    pub base: Polynomial,
    /// The derived form factors nontrivially.
    pub reducible: bool,
    pub base_verdict: Option<StubbornVerdict>,
    pub verdict: StubbornVerdict,
    pub statement: String,
}

fn inherit(base: Option<&StubbornnessCertificate>) -> (Option<StubbornVerdict>, StubbornVerdict) {
    let bv = base.map(|c| c.verdict);
    let v = if bv == Some(StubbornVerdict::Stubborn) { StubbornVerdict::Stubborn } else { StubbornVerdict::Inconclusive };
    (bv, v)
}

/// X1^{2m}·P. If P is stubborn so is the lift.
pub fn lift_by_monomial(p: &Polynomial, m: u32, base: Option<&StubbornnessCertificate>) -> (Polynomial, TransferNote) {
    let mut e = vec![0; p.nvars()];
    if let Some(x) = e.first_mut() {
        *x = 2 * m;
    }
    let lifted = p.shift(&e);
    let (base_verdict, verdict) = inherit(base);
    let x1 = p.vars().first().cloned().unwrap_or_else(|| "X1".into());
    let note = TransferNote {
        provenance: Provenance::LiftedByMonomial { m },
        form: lifted.clone(),
        base: p.clone(),
        reducible: m > 0,
        base_verdict,
        verdict,
        statement: format!("if ({x1}^{})^k·P^k were a sum of squares for odd k, dividing each square by {x1}^{} would make P^k one", 2 * m, m),
    };
    (lifted, note)
}

/// Verify P∘σ = base exactly. Since a substitution maps sums of squares to
/// sums of squares, P inherits stubbornness from the base.
pub fn restriction_transfer(
    p: &Polynomial,
    substitution: &BTreeMap<String, Polynomial>,
    base: &Polynomial,
    base_cert: Option<&StubbornnessCertificate>,
) -> Result<TransferNote, StubbornError> {
    let img = p.substitute(substitution);
    let vars = img.union_vars(base);
    let img = img.with_vars(&vars).expect("union");
    let b = base.with_vars(&vars).expect("union");
    let diff = img.sub(&b);
    if let Some((e, _)) = diff.leading_term() {
        return Err(StubbornError::IdentityMismatch {
            monomial: Polynomial::monomial_string(&vars, e),
            expected: b.coeff(e).to_string(),
            actual: img.coeff(e).to_string(),
        });
    }
    let (base_verdict, verdict) = inherit(base_cert);
    Ok(TransferNote {
        provenance: Provenance::RestrictedBySubstitution {
            substitution: substitution.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        },
        form: p.clone(),
        base: base.clone(),
        reducible: false,
        base_verdict,
        verdict,
        statement: "if P^k were a sum of squares, substituting would make base^k one".into(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BezoutPoint {
    pub point: ProjectivePoint,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BezoutCheck {
    pub points: Vec<BezoutPoint>,
    pub total: u64,
    pub expected: u64,
    pub completeness: Completeness,
}

impl BezoutCheck {
    pub fn holds(&self) -> bool {
        self.total == self.expected
    }
}

/// Intersection multiplicities of two ternary forms at all their common
/// zeros (complex ones included) against deg F · deg G.
pub fn bezout_check(f: &Polynomial, g: &Polynomial) -> Result<BezoutCheck, StubbornError> {
    let zs = common_zeros(&[f.clone(), g.clone()], true)?;
    let g = g.with_vars(f.vars()).map_err(|_| ZeroError::NotTernary)?;
    let mut reasons = match zs.completeness {
        Completeness::Complete => Vec::new(),
        Completeness::Partial { reasons } => reasons,
    };
    let mut points = Vec::new();
    let mut total = 0;
    for pt in zs.points {
        let z = &f.vars()[pt.chart_index()];
        let fa = f.dehomogenize(z).expect("ternary");
        let ga = g.dehomogenize(z).expect("ternary");
        match intersection_multiplicity(&fa, &ga, &pt.affine_center()) {
            Ok(IntersectionNumber::Finite(k)) => {
                total += k;
                points.push(BezoutPoint { point: pt, multiplicity: k });
            }
            Ok(IntersectionNumber::Infinite) => return Err(StubbornError::CommonComponent(pt.to_string())),
            Err(e) => reasons.push(format!("multiplicity at {pt}: {e}")),
        }
    }
    let expected = f.degree().unwrap_or(0) as u64 * g.degree().unwrap_or(0) as u64;
    let completeness = if reasons.is_empty() { Completeness::Complete } else { Completeness::Partial { reasons } };
    Ok(BezoutCheck { points, total, expected, completeness })
}

/// Σ δ^sos as an f64, for display.
pub fn total_f64(c: &StubbornnessCertificate) -> f64 {
    c.total.to_f64().unwrap_or(f64::NAN)
}
