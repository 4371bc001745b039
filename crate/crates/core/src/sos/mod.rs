//! Gram-matrix SOS feasibility, certificates and their exact verification.

pub mod convex;
pub mod rounding;
pub mod sdp;
pub mod threshold;
pub mod twosquare;

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::coeff::Coeff;
use crate::newton::{half_support, parity, NewtonError};
use crate::poly::{grlex_desc, parse, Exponent, ParseError, Polynomial};
use crate::realroots::ser_rat;

pub use convex::{convex_sum_certificate, ConvexSum};
pub use threshold::{threshold_bisection, Family, ThresholdResult, ThresholdSettings};
pub use twosquare::{two_square_decomposition, TwoSquares};

/// Basis sizes above this are refused.
pub const MAX_BASIS: usize = 400;

#[derive(Debug, Error)]
pub enum SosError {
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error("coefficients must be rational")]
    Irrational,
    #[error("Gram basis has {0} monomials, above the limit of {MAX_BASIS}")]
    DimensionOverflow(usize),
    #[error("SOS feasibility not established: {0}")]
    NotFeasible(String),
    #[error("certificate uses variable `{0}` unknown to the polynomial")]
    VariableMismatch(String),
    #[error("form is not strictly positive: {0}")]
    NotPositive(String),
    #[error("power {0} must be odd")]
    EvenPower(u32),
    #[error("invalid bracket: {0}")]
    InvalidBracket(String),
    #[error("malformed identity file: {0}")]
    IdentityFormat(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, Serialize)]
pub struct GramConstraint {
    pub monomial: Exponent,
    /// Index pairs (i ≤ j) with basis[i] + basis[j] = monomial.
    pub pairs: Vec<(usize, usize)>,
    #[serde(serialize_with = "ser_rat")]
    pub target: BigRational,
}

#[derive(Debug, Clone, Serialize)]
pub struct GramProblem {
    pub vars: Vec<String>,
    pub basis: Vec<Exponent>,
    /// Partition of basis indices; a single block unless parity blocks apply.
    pub blocks: Vec<Vec<usize>>,
    pub parity_blocks: bool,
    pub constraints: Vec<GramConstraint>,
    /// Monomials of p that no product of two basis elements reaches.
    pub unreachable: Vec<Exponent>,
}

impl GramProblem {
    /// Coefficient constraint residuals of a candidate Gram matrix, in the
    /// max norm.
    pub fn residual(&self, g: &DMatrix<f64>) -> f64 {
        self.constraints
            .iter()
            .map(|c| {
                let s: f64 = c
                    .pairs
                    .iter()
                    .map(|&(i, j)| if i == j { g[(i, j)] } else { 2.0 * g[(i, j)] })
                    .sum();
                (s - c.target.to_f64().unwrap_or(f64::NAN)).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    fn scale(&self) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.target.abs().to_f64().unwrap_or(0.0))
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE)
    }
}

pub fn gram_problem(p: &Polynomial, use_parity_blocks: bool) -> Result<GramProblem, SosError> {
    if !p.is_rational() {
        return Err(SosError::Irrational);
    }
    let mut basis = half_support(p)?;
    basis.sort_by(|a, b| grlex_desc(a, b));
    if basis.len() > MAX_BASIS {
        return Err(SosError::DimensionOverflow(basis.len()));
    }
    let parity_blocks = use_parity_blocks && p.is_even_form();
    let blocks: Vec<Vec<usize>> = if parity_blocks {
        let mut by: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
        for (i, a) in basis.iter().enumerate() {
            by.entry(parity(a)).or_default().push(i);
        }
        by.into_values().collect()
    } else if basis.is_empty() {
        Vec::new()
    } else {
        vec![(0..basis.len()).collect()]
    };
    let mut pairs: BTreeMap<Exponent, Vec<(usize, usize)>> = BTreeMap::new();
    for block in &blocks {
        for (s, &i) in block.iter().enumerate() {
            for &j in &block[s..] {
                let (i, j) = (i.min(j), i.max(j));
                let e: Exponent = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
                pairs.entry(e).or_default().push((i, j));
            }
        }
    }
    let constraints = pairs
        .into_iter()
        .map(|(monomial, pairs)| {
            let target = p.coeff(&monomial).as_rational().cloned().unwrap_or_else(BigRational::zero);
            GramConstraint { monomial, pairs, target }
        })
        .collect::<Vec<_>>();
    let reached: std::collections::BTreeSet<&Exponent> =
        constraints.iter().map(|c| &c.monomial).collect();
    let unreachable = p.terms().keys().filter(|e| !reached.contains(e)).cloned().collect();
    Ok(GramProblem {
        vars: p.vars().to_vec(),
        basis,
        blocks,
        parity_blocks,
        constraints,
        unreachable,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SdpTolerances {
    /// Feasible when λ_min of the Gram matrix is at least −eig_tol.
    pub eig_tol: f64,
    /// Constraint residual bound for a feasible Gram matrix.
    pub res_tol: f64,
}

impl Default for SdpTolerances {
    fn default() -> Self {
        SdpTolerances { eig_tol: 1e-7, res_tol: 1e-8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Feasible,
    Infeasible,
    Indeterminate,
}

/// Numerical evidence from the primal side: a PSD matrix orthogonal to all
/// Gram freedoms with negative pairing against every feasible Gram matrix.
#[derive(Debug, Clone, Serialize)]
pub struct DualEvidence {
    /// ⟨G, X⟩ / tr X for the projected dual matrix X; negative means no PSD
    /// Gram matrix exists (up to rounding).
    pub objective_margin: f64,
    /// λ_min(X) / tr X, which should be nonnegative.
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SdpReport {
    pub verdict: Verdict,
    pub basis_size: usize,
    pub blocks: Vec<usize>,
    /// λ_min of the best Gram matrix found, on the coefficient scale of p.
    pub lambda_min: f64,
    /// Upper and lower bounds on max λ_min, scaled so the largest
    /// coefficient of p is 1.
    pub primal_bound: f64,
    pub dual_bound: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub evidence: Option<DualEvidence>,
    /// Set when a monomial of p lies outside the reach of the basis, which
    /// is exact infeasibility.
    pub unreachable: Vec<Exponent>,
    #[serde(skip)]
    pub gram: Option<DMatrix<f64>>,
    pub tolerances: SdpTolerances,
}

impl SdpReport {
    /// max λ_min estimate used to settle indeterminate probes.
    pub fn objective(&self) -> f64 {
        0.5 * (self.primal_bound + self.dual_bound)
    }
}

struct Parameterization {
    c: DMatrix<f64>,
    nulls: Vec<sdp::SparseSym>,
    scale: f64,
}

/// Minimum-norm particular solution plus an orthonormal basis of the
/// constraint null space. Constraints touch disjoint entries, so both are
/// built one monomial at a time.
fn parameterize(problem: &GramProblem) -> Parameterization {
    let n = problem.size();
    let scale = problem.scale();
    let mut c = DMatrix::<f64>::zeros(n, n);
    let mut nulls = Vec::new();
    let r2 = std::f64::consts::SQRT_2;
    for con in &problem.constraints {
        let w: Vec<f64> = con.pairs.iter().map(|&(i, j)| if i == j { 1.0 } else { r2 }).collect();
        let wn2: f64 = w.iter().map(|x| x * x).sum();
        let b = con.target.to_f64().unwrap_or(0.0) / scale;
        for &(i, j) in &con.pairs {
            c[(i, j)] = b / wn2;
            c[(j, i)] = b / wn2;
        }
        let k = w.len();
        let mut basis: Vec<Vec<f64>> = vec![w.iter().map(|x| x / wn2.sqrt()).collect()];
        for t in 0..k {
            let mut u = vec![0.0; k];
            u[t] = 1.0;
            for _ in 0..2 {
                for q in &basis {
                    let d: f64 = u.iter().zip(q).map(|(a, b)| a * b).sum();
                    u.iter_mut().zip(q).for_each(|(a, b)| *a -= d * b);
                }
            }
            let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            if nu > 1e-8 {
                basis.push(u.iter().map(|x| x / nu).collect());
            }
            if basis.len() == k {
                break;
            }
        }
        for u in basis.into_iter().skip(1) {
            let mut entries = Vec::new();
            for (&(i, j), &v) in con.pairs.iter().zip(&u) {
                if i == j {
                    entries.push((i, i, v));
                } else {
                    entries.push((i, j, v / r2));
                    entries.push((j, i, v / r2));
                }
            }
            nulls.push(sdp::SparseSym { entries });
        }
    }
    Parameterization { c, nulls, scale }
}

/// Maximize λ_min over the affine space of Gram matrices of p and classify.
pub fn sdp_feasibility(problem: &GramProblem, tol: &SdpTolerances) -> SdpReport {
    let blocks = problem.blocks.iter().map(|b| b.len()).collect();
    if !problem.unreachable.is_empty() || problem.size() == 0 {
        return SdpReport {
            verdict: Verdict::Infeasible,
            basis_size: problem.size(),
            blocks,
            lambda_min: f64::NEG_INFINITY,
            primal_bound: f64::NEG_INFINITY,
            dual_bound: f64::NEG_INFINITY,
            residual: f64::INFINITY,
            iterations: 0,
            converged: true,
            evidence: None,
            unreachable: problem.unreachable.clone(),
            gram: None,
            tolerances: *tol,
        };
    }
    let par = parameterize(problem);
    let settings = sdp::SdpSettings {
        stop_above: Some(-0.1 * tol.eig_tol),
        stop_below: Some(-10.0 * tol.eig_tol),
        ..Default::default()
    };
    let sol = sdp::solve(&par.c, &par.nulls, &settings);
    let m0 = par.nulls.len();
    let mut g = par.c.clone();
    for (j, nj) in par.nulls.iter().enumerate() {
        for &(a, b, v) in &nj.entries {
            g[(a, b)] -= sol.y[j] * v;
        }
    }
    debug_assert_eq!(sol.y.len(), m0 + 1);
    let lam = sdp::min_eig(&g);
    let g_full = &g * par.scale;
    let residual = problem.residual(&g_full) / par.scale;

    // Project the primal matrix onto the orthogonal complement of the nulls.
    let mut xh = sol.x.clone();
    for nj in &par.nulls {
        let d: f64 = nj.entries.iter().map(|&(a, b, v)| v * sol.x[(a, b)]).sum();
        for &(a, b, v) in &nj.entries {
            xh[(a, b)] -= d * v;
        }
    }
    let tr = xh.trace();
    let evidence = (tr > 0.0).then(|| DualEvidence {
        objective_margin: par.c.component_mul(&xh).sum() / tr,
        min_eigenvalue: sdp::min_eig(&xh) / tr,
    });
    let verdict = if lam >= -tol.eig_tol && residual <= tol.res_tol {
        Verdict::Feasible
    } else if evidence
        .as_ref()
        .is_some_and(|e| e.objective_margin <= -tol.eig_tol && e.min_eigenvalue >= -tol.res_tol)
    {
        Verdict::Infeasible
    } else {
        Verdict::Indeterminate
    };
    log::debug!(
        "sdp basis={} verdict={verdict:?} lambda={lam:.3e} iters={}",
        problem.size(),
        sol.iterations
    );
    SdpReport {
        verdict,
        basis_size: problem.size(),
        blocks,
        lambda_min: lam * par.scale,
        primal_bound: sol.primal_objective,
        dual_bound: sol.t,
        residual,
        iterations: sol.iterations,
        converged: sol.converged,
        evidence,
        unreachable: Vec::new(),
        gram: Some(g_full),
        tolerances: *tol,
    }
}

/// One term `weight · base²` of a certificate.
#[derive(Debug, Clone, Serialize)]
pub struct WeightedSquare {
    #[serde(serialize_with = "ser_rat")]
    pub weight: BigRational,
    pub base: Polynomial,
}

#[derive(Debug, Clone, Serialize)]
pub struct SosCertificate {
    pub vars: Vec<String>,
    pub squares: Vec<WeightedSquare>,
    /// True when the weights and bases are exact rationals reproducing p.
    pub exact: bool,
    /// Max absolute coefficient of p − Σ w·H², computed exactly.
    #[serde(serialize_with = "ser_rat")]
    pub residual: BigRational,
}

impl SosCertificate {
    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn residual_f64(&self) -> f64 {
        self.residual.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn sum(&self) -> Polynomial {
        let terms: Vec<(Polynomial, Polynomial)> = self
            .squares
            .iter()
            .map(|s| {
                (Polynomial::constant_in(self.vars.clone(), Coeff::from_rational(s.weight.clone())), s.base.clone())
            })
            .collect();
        weighted_sum(&self.vars, &terms)
    }

    /// Certificate for the product of the two certified polynomials.
    pub fn product(&self, other: &SosCertificate) -> SosCertificate {
        let mut squares = Vec::new();
        for a in &self.squares {
            for b in &other.squares {
                squares.push(WeightedSquare {
                    weight: &a.weight * &b.weight,
                    base: a.base.mul(&b.base),
                });
            }
        }
        let vars = squares
            .first()
            .map(|s: &WeightedSquare| s.base.vars().to_vec())
            .unwrap_or_else(|| self.vars.clone());
        SosCertificate { vars, squares, exact: self.exact && other.exact, residual: BigRational::zero() }
    }
}

/// Σ weight·base² for polynomial weights.
pub fn weighted_sum(vars: &[String], terms: &[(Polynomial, Polynomial)]) -> Polynomial {
    let mut acc = Polynomial::zero_in(vars.to_vec());
    for (w, b) in terms {
        acc = acc.add(&w.mul(&b.mul(b)));
    }
    acc
}

fn max_abs_coeff(p: &Polynomial) -> BigRational {
    p.terms()
        .values()
        .map(|c| c.as_rational().map(|r| r.abs()).unwrap_or_else(|| c.norm().abs()))
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Max absolute coefficient of p − Σ w·H², exactly.
pub fn verify_certificate(p: &Polynomial, cert: &SosCertificate) -> Result<BigRational, SosError> {
    for s in &cert.squares {
        for (i, v) in s.base.vars().iter().enumerate() {
            if p.var_index(v).is_none() && s.base.terms().keys().any(|e| e[i] > 0) {
                return Err(SosError::VariableMismatch(v.clone()));
            }
        }
    }
    Ok(max_abs_coeff(&p.sub(&cert.sum())))
}

fn rat_from_f64(x: f64) -> BigRational {
    BigRational::from_f64(x).unwrap_or_else(BigRational::zero)
}

fn basis_poly(vars: &[String], basis: &[Exponent], coeffs: &[BigRational]) -> Polynomial {
    Polynomial::from_terms(
        vars.to_vec(),
        basis.iter().zip(coeffs).map(|(e, c)| (e.clone(), Coeff::from_rational(c.clone()))),
    )
}

/// Squares from an eigendecomposition of a numeric Gram matrix, with
/// negative eigenvalues dropped.
pub fn numeric_certificate(p: &Polynomial, problem: &GramProblem, g: &DMatrix<f64>) -> SosCertificate {
    let eig = ((g + g.transpose()) * 0.5).symmetric_eigen();
    let top = eig.eigenvalues.amax();
    let mut squares = Vec::new();
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam <= 1e-15 * top.max(1.0) {
            continue;
        }
        let col: Vec<BigRational> = eig.eigenvectors.column(k).iter().map(|&v| rat_from_f64(v)).collect();
        squares.push(WeightedSquare {
            weight: rat_from_f64(lam),
            base: basis_poly(&problem.vars, &problem.basis, &col),
        });
    }
    let mut cert = SosCertificate { vars: problem.vars.clone(), squares, exact: false, residual: BigRational::zero() };
    cert.residual = verify_certificate(p, &cert).expect("same variables");
    cert
}

#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub certificate: SosCertificate,
    pub sdp: SdpReport,
}

/// SDP, then rational rounding with an exact PSD check; falls back to the
/// numeric eigen-factorization when rounding fails.
pub fn sos_decompose(p: &Polynomial, tol: &SdpTolerances) -> Result<Decomposition, SosError> {
    let problem = gram_problem(p, true)?;
    let report = sdp_feasibility(&problem, tol);
    if report.verdict != Verdict::Feasible {
        return Err(SosError::NotFeasible(format!(
            "verdict {:?}, lambda_min {:.3e}",
            report.verdict, report.lambda_min
        )));
    }
    let g = report.gram.as_ref().expect("feasible report carries a Gram matrix");
    let certificate = match rounding::round_gram(&problem, g) {
        Some(cert) => {
            let residual = verify_certificate(p, &cert)?;
            assert!(residual.is_zero(), "exact rounding must reproduce p");
            cert
        }
        None => numeric_certificate(p, &problem, g),
    };
    Ok(Decomposition { certificate, sdp: report })
}

/// A weighted sum of squares identity read from a `.sos` file:
/// `target^power = Σ weight·base²` where weights may be polynomials.
#[derive(Debug, Clone)]
pub struct WeightedIdentity {
    pub vars: Vec<String>,
    pub target: Polynomial,
    pub power: u32,
    pub terms: Vec<(Polynomial, Polynomial)>,
}

pub fn parse_weighted_identity(text: &str) -> Result<WeightedIdentity, SosError> {
    let mut vars: Option<Vec<String>> = None;
    let mut target = None;
    let mut power = 1;
    let mut raw_terms: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            vars = Some(
                rest.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect(),
            );
        } else if let Some(rest) = line.strip_prefix("target:") {
            target = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("power:") {
            power = rest
                .trim()
                .parse()
                .map_err(|_| SosError::IdentityFormat(format!("bad power `{}`", rest.trim())))?;
        } else if let Some((w, b)) = line.split_once(';') {
            raw_terms.push((w.trim().to_string(), b.trim().to_string()));
        } else {
            return Err(SosError::IdentityFormat(format!("unrecognized line `{line}`")));
        }
    }
    let vars = vars.ok_or_else(|| SosError::IdentityFormat("missing vars: line".into()))?;
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let target = parse(&target.ok_or_else(|| SosError::IdentityFormat("missing target: line".into()))?, &names)?;
    let mut terms = Vec::new();
    for (w, b) in raw_terms {
        terms.push((parse(&w, &names)?, parse(&b, &names)?));
    }
    Ok(WeightedIdentity { vars, target, power, terms })
}

impl WeightedIdentity {
    /// Max absolute coefficient of target^power − Σ weight·base².
    pub fn residual(&self) -> BigRational {
        max_abs_coeff(&self.target.pow(self.power).sub(&weighted_sum(&self.vars, &self.terms)))
    }

    /// Fix `var = value`; the result is a certificate for the specialized
    /// target^power when all weights become nonnegative constants.
    pub fn specialize(&self, var: &str, value: &BigRational) -> Result<(Polynomial, SosCertificate), SosError> {
        let mut map = BTreeMap::new();
        map.insert(var.to_string(), Polynomial::constant_in(vec![], Coeff::from_rational(value.clone())));
        let keep: Vec<String> = self.vars.iter().filter(|v| *v != var).cloned().collect();
        let fix = |p: &Polynomial| {
            p.substitute(&map).with_vars(&keep).map_err(|_| SosError::VariableMismatch(var.to_string()))
        };
        let mut squares = Vec::new();
        for (w, b) in &self.terms {
            let w = fix(w)?;
            let wv = w.constant_term();
            let wr = match (w.is_constant(), wv.as_rational()) {
                (true, Some(r)) if !r.is_negative() => r.clone(),
                _ => return Err(SosError::NotFeasible(format!("weight {w} is not a nonnegative constant"))),
            };
            if !wr.is_zero() {
                squares.push(WeightedSquare { weight: wr, base: fix(b)? });
            }
        }
        let target = fix(&self.target)?;
        let powered = target.pow(self.power);
        let mut cert = SosCertificate { vars: keep, squares, exact: true, residual: BigRational::zero() };
        cert.residual = verify_certificate(&powered, &cert)?;
        cert.exact = cert.residual.is_zero();
        Ok((target, cert))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("square {index} restricted is not divisible by the divisor to the power {power}")]
pub struct RestrictionError {
    pub index: usize,
    pub power: u32,
}

/// Check that every base of a certificate, after substitution, is divisible
/// by `divisor^k` (the restriction argument for powers of forms whose
/// restriction has real roots of odd order).
pub fn restriction_check(
    bases: &[Polynomial],
    substitution: &BTreeMap<String, Polynomial>,
    divisor: &Polynomial,
    k: u32,
) -> Result<(), RestrictionError> {
    let dk = divisor.pow(k);
    for (index, b) in bases.iter().enumerate() {
        let r = b.substitute(substitution);
        if r.div_exact(&dk).is_none() {
            return Err(RestrictionError { index, power: k });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::fixtures;

    fn tol() -> SdpTolerances {
        SdpTolerances::default()
    }

    #[test]
    fn gram_problem_shapes() {
        let m = fixtures::motzkin();
        let g = gram_problem(&m, true).unwrap();
        assert_eq!(g.size(), 4);
        assert_eq!(g.blocks.iter().map(|b| b.len()).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        let q = parse("x^4 + 2*x^2*y^2 + y^4", &["x", "y"]).unwrap();
        assert_eq!(gram_problem(&q, false).unwrap().size(), 3);
        let g3 = gram_problem(&fixtures::motzkin().pow(3), true).unwrap();
        assert_eq!(g3.size(), 19);
    }

    #[test]
    fn motzkin_is_infeasible() {
        let r = sdp_feasibility(&gram_problem(&fixtures::motzkin(), true).unwrap(), &tol());
        assert_eq!(r.verdict, Verdict::Infeasible, "{r:?}");
        let r = sdp_feasibility(&gram_problem(&fixtures::motzkin(), false).unwrap(), &tol());
        assert_eq!(r.verdict, Verdict::Infeasible, "{r:?}");
    }

    #[test]
    fn m_half_and_m1_cube_are_feasible() {
        let r = sdp_feasibility(&gram_problem(&fixtures::m_half(), true).unwrap(), &tol());
        assert_eq!(r.verdict, Verdict::Feasible, "{r:?}");
        let r = sdp_feasibility(&gram_problem(&fixtures::m_a1().pow(3), true).unwrap(), &tol());
        assert_eq!(r.verdict, Verdict::Feasible, "{r:?}");
        assert!(r.residual <= 1e-8);
    }

    #[test]
    fn exact_decompositions() {
        let q = parse("x^4 + 2*x^2*y^2 + y^4", &["x", "y"]).unwrap();
        let d = sos_decompose(&q, &tol()).unwrap();
        assert!(d.certificate.exact && d.certificate.residual.is_zero());
        let m0 = fixtures::motzkin_a(&rat(0, 1));
        let d = sos_decompose(&m0, &tol()).unwrap();
        assert!(d.certificate.exact);
        assert_eq!(d.certificate.len(), 3);
        let d = sos_decompose(&fixtures::m_half(), &tol()).unwrap();
        assert!(d.certificate.exact, "residual {}", d.certificate.residual);
    }

    #[test]
    fn identity_fixtures_expand_exactly() {
        let id = parse_weighted_identity(fixtures::MOTZKIN_A_CUBE).unwrap();
        assert_eq!(id.terms.len(), 16);
        assert!(id.residual().is_zero());
        let horn = parse_weighted_identity(fixtures::HORN_ALT).unwrap();
        assert!(horn.residual().is_zero());
        assert_eq!(horn.target, fixtures::horn());
    }

    #[test]
    fn specialized_identity_certifies_m1_cube() {
        let id = parse_weighted_identity(fixtures::MOTZKIN_A_CUBE).unwrap();
        let (target, cert) = id.specialize("a", &rat(1, 1)).unwrap();
        assert_eq!(target, fixtures::m_a1());
        assert!(cert.exact);
        assert_eq!(cert.len(), 16);
        assert!(verify_certificate(&fixtures::m_a1().pow(3), &cert).unwrap().is_zero());
        // 15 − 13a³ < 0 at a = 2
        assert!(id.specialize("a", &rat(2, 1)).is_err());
    }

    #[test]
    fn corrupted_certificate_shows_perturbation() {
        let id = parse_weighted_identity(fixtures::MOTZKIN_A_CUBE).unwrap();
        let (_, mut cert) = id.specialize("a", &rat(1, 1)).unwrap();
        cert.squares[0].weight += rat(1, 1000);
        // The first base has two monomials with coefficients ±1 and cross term −2.
        let r = verify_certificate(&fixtures::m_a1().pow(3), &cert).unwrap();
        assert_eq!(r, rat(2, 1000));
    }

    #[test]
    fn restriction_divisibility() {
        let v = ["X1", "X2", "X3", "X4", "X5"];
        let l = parse("X1^2 - X2^2 + X3^2", &v).unwrap();
        let mut sub = BTreeMap::new();
        sub.insert("X4".to_string(), Polynomial::zero_in(vec![]));
        sub.insert("X5".to_string(), Polynomial::zero_in(vec![]));
        let restricted = fixtures::horn().substitute(&sub).with_vars(&v.map(String::from)).unwrap();
        assert_eq!(restricted, l.pow(2));
        for k in 1..=2 {
            let bases = vec![l.pow(k).scale(&Coeff::from_frac(3, 5)), l.pow(k).scale(&Coeff::from_frac(4, 5))];
            restriction_check(&bases, &sub, &l, k).unwrap();
        }
        let bad = vec![parse("X1^2 + X3^2", &v).unwrap()];
        assert_eq!(restriction_check(&bad, &sub, &l, 1), Err(RestrictionError { index: 0, power: 1 }));
    }
}
