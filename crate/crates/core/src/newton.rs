//! Newton polytopes, half supports and parity classes, and the exact
//! non-SOS test built from them.
//!
//! Supports are planar for ternary forms (project onto the first two
//! exponents), for bivariate polynomials and trivially for binary forms.
//! Anything else falls back to a coordinate box, which over-approximates the
//! half support. A larger candidate set keeps every use below sound: Gram
//! problems only get bigger and the parity test only gets less conclusive.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::coeff::Coeff;
use crate::poly::{Exponent, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NewtonError {
    #[error("zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("degree {0} is odd")]
    OddDegree(u32),
}

type P2 = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Projection {
    /// Homogeneous form: drop the last exponent.
    DropLast,
    /// At most two variables, used as is (missing second coordinate is 0).
    Identity,
    /// No planar model; only the coordinate box is known.
    Box,
}

#[derive(Debug, Clone, Serialize)]
pub struct NewtonPolytope {
    pub nvars: usize,
    pub points: Vec<Exponent>,
    /// Hull vertices in counterclockwise order of the planar projection.
    /// Empty when the support is not planar.
    pub hull: Vec<Exponent>,
    /// Lattice points of the hull (of the box for non-planar supports).
    pub lattice: Vec<Exponent>,
    pub planar: bool,
    #[serde(skip)]
    proj: Projection,
    #[serde(skip)]
    hull2: Vec<P2>,
    #[serde(skip)]
    lo: Vec<u32>,
    #[serde(skip)]
    hi: Vec<u32>,
    #[serde(skip)]
    degree: Option<u32>,
}

fn cross(o: P2, a: P2, b: P2) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Andrew's monotone chain, collinear points dropped, counterclockwise.
fn monotone_chain(mut pts: Vec<P2>) -> Vec<P2> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<P2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<P2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn in_hull(hull: &[P2], q: P2) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == q,
        2 => {
            let (a, b) = (hull[0], hull[1]);
            cross(a, b, q) == 0
                && (q.0 - a.0) * (q.0 - b.0) <= 0
                && (q.1 - a.1) * (q.1 - b.1) <= 0
        }
        n => (0..n).all(|i| cross(hull[i], hull[(i + 1) % n], q) >= 0),
    }
}

impl NewtonPolytope {
    fn project(&self, e: &[u32]) -> P2 {
        match self.proj {
            Projection::DropLast | Projection::Identity => {
                (e[0] as i64, e.get(1).copied().unwrap_or(0) as i64)
            }
            Projection::Box => (0, 0),
        }
    }

    /// Whether the exponent `e` lies in the polytope (in the box for
    /// non-planar supports).
    pub fn contains(&self, e: &[u32]) -> bool {
        if e.len() != self.nvars {
            return false;
        }
        if let Some(d) = self.degree {
            if e.iter().sum::<u32>() != d {
                return false;
            }
        }
        if !e.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (l, h))| l <= x && x <= h) {
            return false;
        }
        match self.proj {
            Projection::Box => true,
            _ => in_hull(&self.hull2, self.project(e)),
        }
    }

    /// Whether `2·alpha` lies in the polytope.
    pub fn contains_double(&self, alpha: &[u32]) -> bool {
        let twice: Vec<u32> = alpha.iter().map(|a| 2 * a).collect();
        self.contains(&twice)
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }
}

/// All exponent vectors with entries in `lo..=hi` (and total `total` if given).
fn box_points(lo: &[u32], hi: &[u32], total: Option<u32>) -> Vec<Exponent> {
    let n = lo.len();
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    if n == 0 {
        return vec![vec![]];
    }
    loop {
        if total.is_none_or(|t| cur.iter().sum::<u32>() == t) {
            out.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                for j in i + 1..n {
                    cur[j] = lo[j];
                }
                break;
            }
        }
    }
}

pub fn newton_polytope(p: &Polynomial) -> Result<NewtonPolytope, NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    let n = p.nvars();
    let points: Vec<Exponent> = p.terms().keys().cloned().collect();
    let homogeneous = p.is_homogeneous();
    let degree = if homogeneous { p.degree() } else { None };
    let proj = if homogeneous && (n == 3 || n == 2) {
        Projection::DropLast
    } else if n <= 2 {
        Projection::Identity
    } else {
        Projection::Box
    };
    let lo: Vec<u32> = (0..n).map(|i| points.iter().map(|e| e[i]).min().unwrap()).collect();
    let hi: Vec<u32> = (0..n).map(|i| points.iter().map(|e| e[i]).max().unwrap()).collect();
    let mut np = NewtonPolytope {
        nvars: n,
        points,
        hull: Vec::new(),
        lattice: Vec::new(),
        planar: proj != Projection::Box,
        proj,
        hull2: Vec::new(),
        lo,
        hi,
        degree,
    };
    if np.planar {
        let by_proj: BTreeMap<P2, Exponent> =
            np.points.iter().map(|e| (np.project(e), e.clone())).collect();
        np.hull2 = monotone_chain(by_proj.keys().copied().collect());
        np.hull = np.hull2.iter().map(|q| by_proj[q].clone()).collect();
    }
    np.lattice = box_points(&np.lo, &np.hi, degree)
        .into_iter()
        .filter(|e| np.contains(e))
        .collect();
    Ok(np)
}

/// Candidate monomials for the squares of an SOS decomposition: all α with
/// 2α in New(p), of degree d/2 when p is homogeneous.
pub fn half_support(p: &Polynomial) -> Result<Vec<Exponent>, NewtonError> {
    let np = newton_polytope(p)?;
    half_support_of(&np, p)
}

fn half_support_of(np: &NewtonPolytope, p: &Polynomial) -> Result<Vec<Exponent>, NewtonError> {
    let d = p.degree().unwrap_or(0);
    if d % 2 == 1 {
        return Err(NewtonError::OddDegree(d));
    }
    let lo: Vec<u32> = np.lo.iter().map(|l| l.div_ceil(2)).collect();
    let hi: Vec<u32> = np.hi.iter().map(|h| h / 2).collect();
    let total = np.degree.map(|d| d / 2);
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(Vec::new());
    }
    Ok(box_points(&lo, &hi, total)
        .into_iter()
        .filter(|a| np.contains_double(a))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityPartition {
    pub classes: BTreeMap<Vec<u8>, Vec<Exponent>>,
}

impl ParityPartition {
    pub fn all_singletons(&self) -> bool {
        self.classes.values().all(|c| c.len() == 1)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn parity(e: &[u32]) -> Vec<u8> {
    e.iter().map(|x| (x % 2) as u8).collect()
}

pub fn parity_classes(candidates: &[Exponent]) -> ParityPartition {
    let mut classes: BTreeMap<Vec<u8>, Vec<Exponent>> = BTreeMap::new();
    for c in candidates {
        classes.entry(parity(c)).or_default().push(c.clone());
    }
    ParityPartition { classes }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    DiagonalObstruction,
}

/// An exact proof that p is not a sum of squares.
#[derive(Debug, Clone, Serialize)]
pub struct NonSosCertificate {
    pub kind: CertificateKind,
    /// The monomial 2α whose coefficient would have to be nonnegative.
    pub monomial: Exponent,
    pub coefficient: Coeff,
    /// The singleton parity class {α}.
    pub class_witness: Vec<Exponent>,
    pub candidates: Vec<Exponent>,
    pub explanation: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum NonSosOutcome {
    Certificate(NonSosCertificate),
    Inconclusive { reason: String },
}

impl NonSosOutcome {
    pub fn certificate(&self) -> Option<&NonSosCertificate> {
        match self {
            NonSosOutcome::Certificate(c) => Some(c),
            NonSosOutcome::Inconclusive { .. } => None,
        }
    }
}

/// If p is an even form whose half support splits into singleton parity
/// classes, any SOS representation reads p = Σ c_α x^{2α} with c_α ≥ 0, so a
/// negative coefficient on some x^{2α} refutes it.
pub fn exact_nonsos_test(p: &Polynomial) -> Result<NonSosOutcome, NewtonError> {
    let np = newton_polytope(p)?;
    let cands = half_support_of(&np, p)?;
    if !p.is_even_form() {
        return Ok(NonSosOutcome::Inconclusive {
            reason: "not an even form, parity blocks do not apply".into(),
        });
    }
    if !p.is_rational() {
        return Ok(NonSosOutcome::Inconclusive { reason: "irrational coefficients".into() });
    }
    let part = parity_classes(&cands);
    if !part.all_singletons() {
        return Ok(NonSosOutcome::Inconclusive {
            reason: "some parity class of the half support has more than one element".into(),
        });
    }
    let vars = p.vars().to_vec();
    for a in &cands {
        let twice: Exponent = a.iter().map(|x| 2 * x).collect();
        let c = p.coeff(&twice);
        if c.sign() == Some(std::cmp::Ordering::Less) {
            let mono = Polynomial::monomial_string(&vars, &twice);
            return Ok(NonSosOutcome::Certificate(NonSosCertificate {
                kind: CertificateKind::DiagonalObstruction,
                monomial: twice,
                coefficient: c.clone(),
                class_witness: vec![a.clone()],
                candidates: cands.clone(),
                explanation: format!(
                    "every parity class of the {} candidate monomials is a singleton, so an SOS \
                     representation is a nonnegative combination of squared monomials; the \
                     coefficient of {mono} is {c} < 0",
                    cands.len()
                ),
            }));
        }
    }
    Ok(NonSosOutcome::Inconclusive {
        reason: "singleton parity classes but every diagonal coefficient is nonnegative".into(),
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("polynomial is not an even form")]
    NotEven,
    #[error("candidate list differs from the recomputed half support")]
    Candidates,
    #[error("parity class of {0:?} is not a singleton")]
    NotSingleton(Exponent),
    #[error("monomial is not twice the class witness")]
    Witness,
    #[error("recorded coefficient {recorded} but polynomial has {actual}")]
    Coefficient { recorded: String, actual: String },
    #[error("coefficient is not negative")]
    NotNegative,
    #[error("support is not planar, replay unsupported")]
    NotPlanar,
}

/// Planar membership by Carathéodory: q lies in conv(S) iff it lies in a
/// triangle (or segment, or point) spanned by points of S.
fn in_conv_bruteforce(s: &[P2], q: P2) -> bool {
    let seg = |a: P2, b: P2| {
        cross(a, b, q) == 0 && (q.0 - a.0) * (q.0 - b.0) <= 0 && (q.1 - a.1) * (q.1 - b.1) <= 0
    };
    for i in 0..s.len() {
        if s[i] == q {
            return true;
        }
        for j in i + 1..s.len() {
            if seg(s[i], s[j]) {
                return true;
            }
            for k in j + 1..s.len() {
                let (a, b, c) = (s[i], s[j], s[k]);
                let d1 = cross(a, b, q);
                let d2 = cross(b, c, q);
                let d3 = cross(c, a, q);
                let neg = d1 < 0 || d2 < 0 || d3 < 0;
                let pos = d1 > 0 || d2 > 0 || d3 > 0;
                if !(neg && pos) && cross(a, b, c) != 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Check a certificate from scratch: recompute the half support with a
/// brute-force hull test, then redo the parity and coefficient lookups.
pub fn replay_certificate(p: &Polynomial, cert: &NonSosCertificate) -> Result<(), ReplayError> {
    if !p.is_even_form() {
        return Err(ReplayError::NotEven);
    }
    let n = p.nvars();
    let hom = p.is_homogeneous();
    if !(n <= 2 || (n == 3 && hom)) {
        return Err(ReplayError::NotPlanar);
    }
    let pr = |e: &[u32]| (e[0] as i64, e.get(1).copied().unwrap_or(0) as i64);
    let mut s: Vec<P2> = p.terms().keys().map(|e| pr(e)).collect();
    s.sort();
    s.dedup();
    let d = p.degree().unwrap_or(0);
    let half = d / 2;
    // Every α with |α| ≤ d/2 (= d/2 for forms) whose double is in the hull.
    let mut found: Vec<Exponent> = Vec::new();
    let hi = vec![half; n];
    for a in box_points(&vec![0; n], &hi, if hom { Some(half) } else { None }) {
        if a.iter().sum::<u32>() > half {
            continue;
        }
        let twice: Vec<u32> = a.iter().map(|x| 2 * x).collect();
        if in_conv_bruteforce(&s, pr(&twice)) {
            found.push(a);
        }
    }
    let mut recorded = cert.candidates.clone();
    recorded.sort();
    found.sort();
    if recorded != found {
        return Err(ReplayError::Candidates);
    }
    for a in &found {
        if found.iter().filter(|b| parity(b) == parity(a)).count() != 1 {
            return Err(ReplayError::NotSingleton(a.clone()));
        }
    }
    let [w] = cert.class_witness.as_slice() else {
        return Err(ReplayError::Witness);
    };
    let twice: Exponent = w.iter().map(|x| 2 * x).collect();
    if twice != cert.monomial || !found.contains(w) {
        return Err(ReplayError::Witness);
    }
    let actual = p.coeff(&cert.monomial);
    if actual != cert.coefficient {
        return Err(ReplayError::Coefficient {
            recorded: cert.coefficient.to_string(),
            actual: actual.to_string(),
        });
    }
    if actual.sign() != Some(std::cmp::Ordering::Less) {
        return Err(ReplayError::NotNegative);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::fixtures;
    use crate::poly::parse;

    fn sorted(mut v: Vec<Exponent>) -> Vec<Exponent> {
        v.sort();
        v
    }

    #[test]
    fn motzkin_polytope_and_half_support() {
        let m = fixtures::motzkin();
        let np = newton_polytope(&m).unwrap();
        assert_eq!(sorted(np.hull.clone()), vec![vec![0, 0, 6], vec![2, 4, 0], vec![4, 2, 0]]);
        assert_eq!(
            sorted(half_support(&m).unwrap()),
            vec![vec![0, 0, 3], vec![1, 1, 1], vec![1, 2, 0], vec![2, 1, 0]]
        );
        assert!(parity_classes(&half_support(&m).unwrap()).all_singletons());
    }

    #[test]
    fn cube_hull_scales() {
        let np = newton_polytope(&fixtures::motzkin().pow(3)).unwrap();
        assert_eq!(
            sorted(np.hull.clone()),
            vec![vec![0, 0, 18], vec![6, 12, 0], vec![12, 6, 0]]
        );
        let hs = half_support(&fixtures::motzkin().pow(3)).unwrap();
        // Lattice points of conv((6,3,0),(3,6,0),(0,0,9)).
        assert_eq!(hs.len(), 19);
    }

    #[test]
    fn degenerate_supports() {
        let p = parse("x^2*y", &["x", "y"]).unwrap();
        let np = newton_polytope(&p).unwrap();
        assert_eq!(np.hull, vec![vec![2, 1]]);
        assert_eq!(np.lattice, vec![vec![2, 1]]);
        let q = parse("x^4 + 2*x^2*y^2 + y^4", &["x", "y"]).unwrap();
        assert_eq!(sorted(half_support(&q).unwrap()), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(half_support(&parse("x^3", &["x"]).unwrap()), Err(NewtonError::OddDegree(3)));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_classes(&[vec![2, 0], vec![0, 2]]).len(), 1);
        assert_eq!(parity_classes(&[vec![1, 0], vec![0, 1]]).len(), 2);
    }

    #[test]
    fn certificates_for_motzkin_family() {
        let m = fixtures::motzkin();
        let out = exact_nonsos_test(&m).unwrap();
        let c = out.certificate().expect("certificate");
        assert_eq!(c.monomial, vec![2, 2, 2]);
        assert_eq!(c.coefficient, Coeff::from_int(-3));
        replay_certificate(&m, c).unwrap();
        for a in [rat(1, 10), rat(1, 1), rat(3, 1)] {
            let p = fixtures::motzkin_a(&a);
            let out = exact_nonsos_test(&p).unwrap();
            let c = out.certificate().unwrap();
            assert_eq!(c.coefficient, Coeff::from_rational(-a));
            replay_certificate(&p, c).unwrap();
        }
        let m0 = fixtures::motzkin_a(&rat(0, 1));
        assert!(exact_nonsos_test(&m0).unwrap().certificate().is_none());
        let q = parse("x^4 + 2*x^2*y^2 + y^4", &["x", "y"]).unwrap();
        assert!(exact_nonsos_test(&q).unwrap().certificate().is_none());
    }

    #[test]
    fn replay_rejects_tampering() {
        let m = fixtures::motzkin();
        let mut c = exact_nonsos_test(&m).unwrap().certificate().unwrap().clone();
        c.coefficient = Coeff::from_int(-2);
        assert!(matches!(replay_certificate(&m, &c), Err(ReplayError::Coefficient { .. })));
        let mut c2 = exact_nonsos_test(&m).unwrap().certificate().unwrap().clone();
        c2.candidates.pop();
        assert_eq!(replay_certificate(&m, &c2), Err(ReplayError::Candidates));
        let good = exact_nonsos_test(&m).unwrap().certificate().unwrap().clone();
        let m0 = fixtures::motzkin_a(&rat(0, 1));
        assert!(replay_certificate(&m0, &good).is_err());
    }

    #[test]
    fn lattice_contains_support() {
        let r = fixtures::robinson();
        let np = newton_polytope(&r).unwrap();
        for e in r.terms().keys() {
            assert!(np.lattice.contains(e));
        }
        for v in &np.hull {
            assert!(r.terms().contains_key(v));
        }
    }
}
