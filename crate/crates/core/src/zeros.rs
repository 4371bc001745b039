//! Common zeros of ternary forms with coordinates in ℚ or one quadratic
//! field.
//!
//! The affine chart `X3 = 1` is solved by elimination: the x-coordinates are
//! roots of a resultant of two random combinations of the equations, and
//! each fibre is solved through the gcd of the specialized equations. The
//! line `X3 = 0` is handled through the gcd of the restricted binary forms.
//!
//! When a resultant factor has roots outside the supported fields, the real
//! zero set may still be certified complete: after the shear `x' = x + c·y`
//! a non-real solution has a real `x'` for at most one `c`, so if the number
//! of real roots of the sheared resultant equals the number of distinct `x'`
//! values of the known real zeros for two different `c`, no real zero is
//! missing.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bivar;
use crate::blowup::has_real_branch_at;
use crate::coeff::Coeff;
use crate::poly::{Polynomial, ProjectivePoint};
use crate::realroots::{dehomogenize_binary, exact_roots, real_root_count};
use crate::upoly::UPoly;

const SEED: u64 = 0x5eed_2e40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZeroError {
    #[error("a ternary form is required")]
    NotTernary,
    #[error("the polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("the zero polynomial has no isolated zeros")]
    ZeroPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Completeness {
    Complete,
    Partial { reasons: Vec<String> },
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroSet {
    pub points: Vec<ProjectivePoint>,
    pub completeness: Completeness,
    /// The zero set contains a real curve.
    pub positive_dimensional: bool,
}

impl ZeroSet {
    pub fn is_complete(&self) -> bool {
        self.completeness == Completeness::Complete
    }
}

#[derive(Default)]
struct Collector {
    points: BTreeSet<(Vec<(i8, String)>, usize)>,
    list: Vec<ProjectivePoint>,
    reasons: Vec<String>,
    positive_dimensional: bool,
}

impl Collector {
    fn push(&mut self, p: ProjectivePoint) {
        let key = (p.sort_key(), 0);
        if self.points.insert(key) {
            self.list.push(p);
        }
    }

    fn partial(&mut self, why: impl Into<String>) {
        let why = why.into();
        if !self.reasons.contains(&why) {
            self.reasons.push(why);
        }
    }
}

fn check_forms(forms: &[Polynomial]) -> Result<(), ZeroError> {
    for f in forms {
        if f.nvars() != 3 {
            return Err(ZeroError::NotTernary);
        }
        if !f.is_homogeneous() {
            return Err(ZeroError::NotHomogeneous);
        }
    }
    if forms.iter().all(|f| f.is_zero()) {
        return Err(ZeroError::ZeroPolynomial);
    }
    Ok(())
}

/// Real zeros of a ternary form at which all partial derivatives vanish.
/// For a nonnegative form these are all of its real zeros.
pub fn locate_real_zeros(p: &Polynomial) -> Result<ZeroSet, ZeroError> {
    check_forms(std::slice::from_ref(p))?;
    if p.is_zero() {
        return Err(ZeroError::ZeroPolynomial);
    }
    let mut forms = vec![p.clone()];
    forms.extend((0..3).map(|i| p.derivative(i)));
    solve(&forms, false)
}

/// All common zeros (complex ones included) of a set of ternary forms.
pub fn common_zeros(forms: &[Polynomial], complex: bool) -> Result<ZeroSet, ZeroError> {
    check_forms(forms)?;
    let vars = forms[0].vars().to_vec();
    let forms: Vec<Polynomial> = forms.iter().map(|f| f.with_vars(&vars).expect("ternary")).collect();
    solve(&forms, complex)
}

fn solve(forms: &[Polynomial], complex: bool) -> Result<ZeroSet, ZeroError> {
    let mut out = Collector::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let z = forms[0].vars()[2].clone();
    let chart: Vec<Polynomial> = forms
        .iter()
        .map(|f| f.dehomogenize(&z).expect("ternary"))
        .filter(|f| !f.is_zero())
        .collect();
    let affine = affine_solve(&chart, complex, &mut rng, &mut out);
    for (x, y) in affine {
        out.push(ProjectivePoint::new(vec![x, y, Coeff::one()]).expect("nonzero"));
    }
    at_infinity(forms, complex, &mut out);
    // every point must satisfy all equations exactly
    for p in &out.list {
        for f in forms {
            assert!(f.eval(p.coords()).is_zero(), "located point {p} is not a zero");
        }
    }
    let mut points = out.list;
    points.sort_by_key(|p| p.sort_key());
    let completeness =
        if out.reasons.is_empty() { Completeness::Complete } else { Completeness::Partial { reasons: out.reasons } };
    Ok(ZeroSet { points, completeness, positive_dimensional: out.positive_dimensional })
}

fn random_combination(polys: &[Polynomial], rng: &mut ChaCha8Rng) -> Polynomial {
    let mut acc = Polynomial::zero_in(polys[0].vars().to_vec());
    for p in polys {
        let c: i64 = rng.gen_range(1..=7);
        acc = acc.add(&p.scale(&Coeff::from_int(c)));
    }
    acc
}

/// A univariate polynomial in `x` vanishing at the x-coordinate of every
/// common zero of `polys` (which must have no common factor).
fn eliminant(polys: &[Polynomial], rng: &mut ChaCha8Rng) -> Option<UPoly> {
    if polys.len() == 1 {
        return None;
    }
    let mut found: Vec<UPoly> = Vec::new();
    let mut first = true;
    for _ in 0..12 {
        let (a, b) = if first && polys.len() == 2 {
            (polys[0].clone(), polys[1].clone())
        } else {
            (random_combination(polys, rng), random_combination(polys, rng))
        };
        first = false;
        let r = bivar::resultant(&a, &b, 1);
        if !r.is_zero() {
            found.push(r);
            if found.len() == 2 || polys.len() == 2 {
                break;
            }
        }
    }
    let mut it = found.into_iter();
    let r0 = it.next()?;
    Some(it.fold(r0, |acc, r| acc.gcd(&r)))
}

fn fibre_gcd(polys: &[Polynomial], x0: &Coeff) -> UPoly {
    polys.iter().fold(UPoly::zero(), |g, p| g.gcd(&bivar::fibre(p, x0)))
}

/// Affine common zeros; `out` collects completeness reasons.
fn affine_solve(
    polys: &[Polynomial],
    complex: bool,
    rng: &mut ChaCha8Rng,
    out: &mut Collector,
) -> Vec<(Coeff, Coeff)> {
    if polys.is_empty() {
        out.positive_dimensional = true;
        out.partial("all equations vanish on the affine chart");
        return Vec::new();
    }
    if polys.iter().any(|p| p.is_constant()) {
        return Vec::new();
    }
    let g = polys[1..].iter().fold(polys[0].clone(), |g, p| bivar::gcd(&g, p));
    if !g.is_constant() {
        // V(p_1, …, p_k) = V(g) ∪ V(p_1/g, …, p_k/g)
        let mut pts = common_curve(&g, complex, rng, out);
        let rest: Vec<Polynomial> = polys.iter().map(|p| bivar::div_exact(p, &g).expect("gcd divides")).collect();
        for q in affine_solve(&rest, complex, rng, out) {
            if !pts.contains(&q) {
                pts.push(q);
            }
        }
        return pts;
    }
    let r = match eliminant(polys, rng) {
        Some(r) => r,
        None => {
            out.positive_dimensional = true;
            out.partial("a single equation defines a curve");
            return Vec::new();
        }
    };
    let mut pts = Vec::new();
    let mut needs_shear = false;
    let ex = exact_roots(&r, complex);
    for (uf, _) in &ex.unresolved {
        if complex {
            out.partial(format!("x-coordinates are roots of {} outside ℚ(√D)", uf.to_poly("x")));
        } else if real_root_count(uf) > 0 {
            needs_shear = true;
        }
    }
    for (x0, _) in &ex.roots {
        if !complex && !x0.is_real() {
            continue;
        }
        let gy = fibre_gcd(polys, x0);
        if gy.is_zero() {
            out.positive_dimensional = true;
            out.partial(format!("the line x = {x0} is a common component"));
            continue;
        }
        let ey = exact_roots(&gy, complex);
        for (y0, _) in ey.roots {
            if !complex && !y0.is_real() {
                continue;
            }
            if Coeff::common_field(x0.radicand(), y0.radicand()).is_none() {
                out.partial(format!("a zero with x = {x0} has y = {y0} in another quadratic field"));
                continue;
            }
            pts.push((x0.clone(), y0));
        }
        for (uf, _) in ey.unresolved {
            if complex || real_root_count(&uf) > 0 {
                out.partial(format!("a zero with x = {x0} has y outside the supported fields"));
            }
        }
    }
    if needs_shear && !shear_certifies(polys, &pts, rng) {
        out.partial("real zeros with coordinates outside ℚ(√D)");
    }
    pts
}

/// Count real solutions through sheared eliminants; true when two shears
/// agree with the number of known real solutions.
fn shear_certifies(polys: &[Polynomial], known: &[(Coeff, Coeff)], rng: &mut ChaCha8Rng) -> bool {
    let vars = polys[0].vars().to_vec();
    let x = Polynomial::var_in(vars.clone(), &vars[0]).unwrap();
    let y = Polynomial::var_in(vars.clone(), &vars[1]).unwrap();
    let shears = [(1, 3), (-2, 5), (3, 7), (-5, 11), (7, 13), (-11, 17)];
    let mut passes = 0;
    for (n, d) in shears {
        let c = Coeff::from_frac(n, d);
        // p(x' − c·y, y) in the coordinates (x', y)
        let images = [x.sub(&y.scale(&c)), y.clone()];
        let sheared: Vec<Polynomial> = polys.iter().map(|p| p.compose(&images, &vars)).collect();
        let r = match eliminant(&sheared, rng) {
            Some(r) => r,
            None => continue,
        };
        let xs: BTreeSet<String> =
            known.iter().filter(|(a, b)| a.is_real() && b.is_real()).map(|(a, b)| (a + &(&c * b)).to_string()).collect();
        if real_root_count(&r) == xs.len() {
            passes += 1;
            if passes == 2 {
                return true;
            }
        }
    }
    false
}

/// Real points of the common factor `g`: either a real curve (flagged) or
/// finitely many isolated points. In complex mode any common factor is a
/// curve.
fn common_curve(
    g: &Polynomial,
    complex: bool,
    rng: &mut ChaCha8Rng,
    out: &mut Collector,
) -> Vec<(Coeff, Coeff)> {
    if complex {
        out.positive_dimensional = true;
        out.partial("the equations share a common factor");
        return Vec::new();
    }
    let rep = bivar::repeated_part(g);
    let h = if rep.is_constant() { g.clone() } else { bivar::div_exact(g, &rep).expect("divides") };
    match real_curve_points(&h, rng) {
        RealCurve::Curve => {
            out.positive_dimensional = true;
            out.partial("the real zero set contains a curve");
            Vec::new()
        }
        RealCurve::Isolated(pts) => pts,
        RealCurve::Unknown => {
            out.partial("could not decide whether a repeated factor has a real curve");
            Vec::new()
        }
    }
}

enum RealCurve {
    Curve,
    Isolated(Vec<(Coeff, Coeff)>),
    Unknown,
}

/// Real points of a square-free curve `h = 0`: either a real curve or
/// finitely many (singular) points.
fn real_curve_points(h: &Polynomial, rng: &mut ChaCha8Rng) -> RealCurve {
    let hx = h.derivative(0);
    let hy = h.derivative(1);
    let mut scratch = Collector::default();
    let mut crit: Vec<(Coeff, Coeff)> = Vec::new();
    // gcd(h, h_x) collects the factors free of x, gcd(h, h_y) those free of y
    for (d, idx) in [(&hx, 1), (&hy, 0)] {
        let sys = vec![h.clone(), d.clone()];
        let g = bivar::gcd(h, d);
        if !g.is_constant() {
            let u = UPoly::from_poly(&g, idx);
            if real_root_count(&u) > 0 {
                return RealCurve::Curve;
            }
            continue;
        }
        crit.extend(affine_solve(&sys, false, rng, &mut scratch));
    }
    if !scratch.reasons.is_empty() {
        return RealCurve::Unknown;
    }
    let mut isolated = Vec::new();
    for (a, b) in &crit {
        let pt = [a.clone(), b.clone()];
        if !hx.eval(&pt).is_zero() || !hy.eval(&pt).is_zero() {
            return RealCurve::Curve;
        }
        match has_real_branch_at(h, &pt) {
            Ok(false) => {
                if !isolated.contains(&(a.clone(), b.clone())) {
                    isolated.push((a.clone(), b.clone()));
                }
            }
            Ok(true) => return RealCurve::Curve,
            Err(_) => return RealCurve::Unknown,
        }
    }
    // unbounded branches cross far fibres in one of the two directions
    let mut bound = 2.0f64;
    for (a, b) in &crit {
        bound = bound.max(a.to_f64().abs() + 1.0).max(b.to_f64().abs() + 1.0);
    }
    let far = Coeff::from_int(bound.ceil() as i64);
    let mut probes = vec![far.clone(), -far];
    for _ in 0..8 {
        probes.push(Coeff::from_frac(rng.gen_range(-400..=400), 37));
    }
    let swapped = bivar::swap(h);
    for t in &probes {
        for q in [h, &swapped] {
            let f = bivar::fibre(q, t);
            if f.is_zero() || (f.deg() > 0 && real_root_count(&f) > 0) {
                return RealCurve::Curve;
            }
        }
    }
    RealCurve::Isolated(isolated)
}

fn at_infinity(forms: &[Polynomial], complex: bool, out: &mut Collector) {
    let restricted: Vec<Polynomial> = forms
        .iter()
        .map(|f| f.partial_eval(&[(2, Coeff::zero())]).drop_unused_vars().with_vars(&f.vars()[..2]).unwrap())
        .filter(|f| !f.is_zero())
        .collect();
    if restricted.is_empty() {
        out.positive_dimensional = true;
        out.partial("the line at infinity is a common component");
        return;
    }
    let mut g = UPoly::zero();
    let mut deficit = u32::MAX;
    for b in &restricted {
        let (u, d) = dehomogenize_binary(b).expect("binary form");
        g = g.gcd(&u);
        deficit = deficit.min(d);
    }
    if deficit > 0 {
        out.push(ProjectivePoint::new(vec![Coeff::one(), Coeff::zero(), Coeff::zero()]).unwrap());
    }
    if g.deg() <= 0 {
        return;
    }
    let ex = exact_roots(&g, complex);
    for (r, _) in ex.roots {
        if complex || r.is_real() {
            out.push(ProjectivePoint::new(vec![r, Coeff::one(), Coeff::zero()]).unwrap());
        }
    }
    for (uf, _) in ex.unresolved {
        if complex || real_root_count(&uf) > 0 {
            out.partial(format!("zeros at infinity are roots of {} outside ℚ(√D)", uf.to_poly("t")));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    const V: &[&str] = &["X1", "X2", "X3"];

    fn f(s: &str) -> Polynomial {
        parse(s, V).unwrap()
    }

    fn names(z: &ZeroSet) -> Vec<String> {
        let mut v: Vec<String> = z.points.iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn motzkin_zeros() {
        let m = f("X1^4*X2^2 + X1^2*X2^4 + X3^6 - 3*X1^2*X2^2*X3^2");
        let z = locate_real_zeros(&m).unwrap();
        assert!(z.is_complete(), "{:?}", z.completeness);
        assert_eq!(
            names(&z),
            vec!["[-1:-1:1]", "[-1:1:1]", "[0:1:0]", "[1:-1:1]", "[1:0:0]", "[1:1:1]"]
        );
    }

    #[test]
    fn irrational_zero() {
        // (X1² − 2X3²)² + X2² X3²... zeros at [±√2:0:1]
        let p = f("X1^4 - 4*X1^2*X3^2 + 4*X3^4 + X2^2*X3^2 + X2^4");
        let z = locate_real_zeros(&p).unwrap();
        assert!(z.is_complete());
        assert_eq!(names(&z), vec!["[-sqrt(2):0:1]", "[sqrt(2):0:1]"]);
    }

    #[test]
    fn real_curve_detected() {
        let p = f("X1^2 + X2^2 - X3^2").pow(2);
        let z = locate_real_zeros(&p).unwrap();
        assert!(z.positive_dimensional);
        assert!(!z.is_complete());
        let q = f("X1^2 + X2^2 + X3^2").pow(2).mul(&f("X1^2 + X2^2"));
        let z = locate_real_zeros(&q).unwrap();
        assert!(!z.positive_dimensional);
        assert_eq!(names(&z), vec!["[0:0:1]"]);
    }

    #[test]
    fn complex_common_zeros() {
        // conic and line: x² + y² = z², x = 2z → y = ±√3 i z
        let z = common_zeros(&[f("X1^2 + X2^2 - X3^2"), f("X1 - 2*X3")], true).unwrap();
        assert!(z.is_complete());
        assert_eq!(z.points.len(), 2);
        assert!(z.points.iter().all(|p| !p.is_real()));
        let r = common_zeros(&[f("X1^2 + X2^2 - X3^2"), f("X1 - 2*X3")], false).unwrap();
        assert_eq!(r.points.len(), 0);
    }

    #[test]
    fn non_homogeneous_rejected() {
        assert_eq!(locate_real_zeros(&f("X1^2 + X2")).unwrap_err(), ZeroError::NotHomogeneous);
        assert_eq!(locate_real_zeros(&parse("x^2", &["x", "y"]).unwrap()).unwrap_err(), ZeroError::NotTernary);
    }
}
