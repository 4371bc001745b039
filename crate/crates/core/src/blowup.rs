//! Point blow-ups of plane curves.
//!
//! A singular point is resolved by repeatedly blowing up at repeated tangent
//! directions. The resulting tree carries the multiplicity sequence from
//! which three invariants are read off:
//!
//! * `δ  = m(m−1)/2 + Σ δ(children)` over all infinitely near points,
//! * `δ^ℝ = m(m−1)/2 + Σ δ(children)` over real infinitely near points,
//! * `δ^sos = m²/4 + Σ δ^sos(children)` over real infinitely near points,
//!
//! with value `1` at an ordinary singularity. Simple tangent directions lead
//! to smooth points and contribute nothing, so they get no child node.
//!
//! Charts keep the exceptional coordinate second: the direction `[a:1]` uses
//! `x1 = x1'·x2` with child center `(a, 0)`, the direction `[1:0]` uses
//! `x2 = x2'·x1` and exchanges the coordinates.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bivar;
use crate::coeff::Coeff;
use crate::poly::{Polynomial, ProjectivePoint};
use crate::realroots::{
    dehomogenize_binary, exact_roots, real_root_count, univariate_nonneg_upoly, Direction,
};

/// Resolution depth at which the recursion gives up.
pub const MAX_DEPTH: usize = 64;

/// Random coordinate changes tried by the resultant oracle.
pub const ORACLE_TRIALS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error("a bivariate polynomial is required")]
    NotBivariate,
    #[error("the center is not a zero of the polynomial")]
    NotAZero,
    #[error("direction {0} is not a root of the tangent cone")]
    NotATangent(String),
    #[error("tangent factor {0} has real roots outside the supported quadratic fields")]
    UnsupportedExtension(String),
    #[error("the polynomial vanishes on a real curve through the center")]
    NonIsolated,
    #[error("resolution did not terminate within {0} blow-ups")]
    DepthExceeded(usize),
    #[error("resultant oracle degenerate after {0} coordinate changes")]
    DegenerateOracle(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Chart {
    /// The input coordinates.
    Origin,
    /// `x1 = x1'·x2` around the parent center; child center `(a, 0)`.
    Slope { a: Coeff },
    /// `x2 = x2'·x1` around the parent center, coordinates exchanged;
    /// child center `(0, 0)`.
    Infinite,
}

impl std::fmt::Display for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Chart::Origin => write!(f, "origin"),
            Chart::Slope { a } => write!(f, "x1 = x1'*x2 at x1' = {a}"),
            Chart::Infinite => write!(f, "x2 = x2'*x1, swapped"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reality {
    Real,
    /// One representative of a complex-conjugate pair, counted twice.
    ComplexPair,
    /// A non-real point below a complex representative.
    Complex,
}

fn ser_opt_rat<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionNode {
    /// Center in the node's own coordinates.
    pub center: Vec<Coeff>,
    pub chart: Chart,
    /// Strict transform (not translated).
    pub local_poly: Polynomial,
    pub m: u32,
    pub reality: Reality,
    /// Multiplier applied by the parent (2 for a conjugate pair).
    pub weight: u32,
    pub ordinary: bool,
    /// Number of simple tangent directions (smooth near points, not expanded).
    pub smooth_branches: u32,
    /// Tangent cone is nonnegative (real nodes only).
    pub locally_nonnegative: bool,
    /// Subtree values; `None` when not determined.
    pub delta: Option<u64>,
    pub delta_real: Option<u64>,
    pub delta_real_strict: Option<u64>,
    #[serde(serialize_with = "ser_opt_rat")]
    pub delta_sos: Option<BigRational>,
    pub children: Vec<ResolutionNode>,
}

impl ResolutionNode {
    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Visit nodes in preorder.
    pub fn walk<'a>(&'a self, out: &mut Vec<&'a ResolutionNode>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }

    /// Every real node has a nonnegative tangent cone.
    pub fn all_real_locally_nonnegative(&self) -> bool {
        if self.reality != Reality::Real {
            return true;
        }
        self.locally_nonnegative && self.children.iter().all(|c| c.all_real_locally_nonnegative())
    }

    /// Every multiplicity along real nodes is even.
    pub fn all_real_even(&self) -> bool {
        if self.reality != Reality::Real {
            return true;
        }
        self.m % 2 == 0 && self.children.iter().all(|c| c.all_real_even())
    }

    /// Every multiplicity in the tree equals two.
    pub fn all_double(&self) -> bool {
        self.m == 2 && self.children.iter().all(|c| c.all_double())
    }
}

/// Invariants of a point together with the resolution tree.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaInvariants {
    pub delta: Option<u64>,
    pub delta_real: Option<u64>,
    pub delta_real_strict: Option<u64>,
    #[serde(serialize_with = "ser_opt_rat")]
    pub delta_sos: Option<BigRational>,
    /// The polynomial has a repeated factor through the center; `δ` is then
    /// infinite and reported as `None`.
    pub non_reduced: bool,
    pub tree: ResolutionNode,
}

/// Result of one blow-up step.
#[derive(Clone, Debug)]
pub struct StrictTransform {
    pub chart: Chart,
    pub poly: Polynomial,
    /// Near point in the chart coordinates.
    pub center: Vec<Coeff>,
    pub m: u32,
}

fn check_bivariate(p: &Polynomial) -> Result<(), BlowupError> {
    if p.nvars() == 2 {
        Ok(())
    } else {
        Err(BlowupError::NotBivariate)
    }
}

/// Strict transform of an origin-centered `g` of order `m`.
fn chart_transform(g: &Polynomial, m: u32, dir: &Direction) -> StrictTransform {
    let inf = dir.is_infinite();
    let terms = g.terms().iter().map(|(e, c)| {
        let (i, j) = (e[0], e[1]);
        let exp = if inf { vec![j, i + j - m] } else { vec![i, i + j - m] };
        (exp, c.clone())
    });
    let poly = Polynomial::from_terms(g.vars().to_vec(), terms);
    if inf {
        StrictTransform { chart: Chart::Infinite, poly, center: vec![Coeff::zero(), Coeff::zero()], m }
    } else {
        let a = dir.u.clone();
        StrictTransform { chart: Chart::Slope { a: a.clone() }, poly, center: vec![a, Coeff::zero()], m }
    }
}

/// Blow up `p` at `center` and return the strict transform at the near
/// point in direction `direction`.
pub fn strict_transform(
    p: &Polynomial,
    center: &[Coeff],
    direction: &Direction,
) -> Result<StrictTransform, BlowupError> {
    check_bivariate(p)?;
    let g = p.translate(center);
    let m = match g.order() {
        Some(m) if m > 0 => m,
        _ => return Err(BlowupError::NotAZero),
    };
    let cone = g.homogeneous_part(m);
    if !cone.eval(&[direction.u.clone(), direction.v.clone()]).is_zero() {
        return Err(BlowupError::NotATangent(direction.to_string()));
    }
    Ok(chart_transform(&g, m, direction))
}

/// Which near points to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Real,
    Complex,
}

#[derive(Clone, Debug, Serialize)]
pub struct NearPoint {
    pub direction: Direction,
    pub reality: Reality,
    /// Multiplicity of the direction as a root of the tangent cone.
    pub multiplicity: u32,
}

/// A class of non-real tangent directions (one irreducible factor).
#[derive(Clone, Debug, Serialize)]
pub struct FactorClass {
    pub degree: u32,
    pub multiplicity: u32,
    /// The roots were found exactly (a conjugate pair in ℚ(√D)).
    pub resolved: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NearPoints {
    pub m: u32,
    pub points: Vec<NearPoint>,
    pub complex_classes: Vec<FactorClass>,
}

/// First order infinitely near points of `p = 0` at `center`.
pub fn infinitely_near_points(
    p: &Polynomial,
    center: &[Coeff],
    variant: Variant,
) -> Result<NearPoints, BlowupError> {
    check_bivariate(p)?;
    let g = p.translate(center);
    let m = match g.order() {
        Some(m) if m > 0 => m,
        _ => return Err(BlowupError::NotAZero),
    };
    let real_center = g.terms().values().all(|c| c.is_real());
    let (u, deficit) = dehomogenize_binary(&g.homogeneous_part(m)).expect("binary form");
    let mut points = Vec::new();
    let mut classes = Vec::new();
    for (h, k) in u.squarefree_decomposition() {
        let ex = exact_roots(&h, variant == Variant::Complex);
        for (r, _) in ex.roots {
            let reality = if real_center && r.is_real() {
                Reality::Real
            } else if real_center {
                classes.push(FactorClass { degree: 1, multiplicity: k, resolved: true });
                Reality::ComplexPair
            } else {
                Reality::Complex
            };
            points.push(NearPoint { direction: Direction::finite(r), reality, multiplicity: k });
        }
        for (f, _) in ex.unresolved {
            if real_center && real_root_count(&f) > 0 {
                return Err(BlowupError::UnsupportedExtension(f.to_poly("t").to_string()));
            }
            classes.push(FactorClass { degree: f.deg() as u32, multiplicity: k, resolved: false });
        }
    }
    if deficit > 0 {
        let reality = if real_center { Reality::Real } else { Reality::Complex };
        points.push(NearPoint { direction: Direction::infinite(), reality, multiplicity: deficit });
    }
    // pairs were pushed once per root; merge them into one class of degree 2
    let mut merged: Vec<FactorClass> = Vec::new();
    let mut pending: Vec<FactorClass> = Vec::new();
    for c in classes {
        if c.resolved && c.degree == 1 {
            if let Some(pos) = pending.iter().position(|q| q.multiplicity == c.multiplicity) {
                pending.remove(pos);
                merged.push(FactorClass { degree: 2, multiplicity: c.multiplicity, resolved: true });
            } else {
                pending.push(c);
            }
        } else {
            merged.push(c);
        }
    }
    merged.extend(pending);
    points.sort_by(|a, b| {
        let key = |q: &NearPoint| (q.reality != Reality::Real, q.direction.is_infinite());
        key(a).cmp(&key(b)).then_with(|| {
            if a.reality == Reality::Real && !a.direction.is_infinite() && !b.direction.is_infinite() {
                a.direction.u.cmp_real(&b.direction.u).unwrap_or(Ordering::Equal)
            } else {
                Ordering::Equal
            }
        })
    });
    if variant == Variant::Real {
        points.retain(|p| p.reality == Reality::Real);
    }
    Ok(NearPoints { m, points, complex_classes: merged })
}

struct Resolver {
    expand_complex: bool,
}

fn half_m_sq(m: u32) -> BigRational {
    BigRational::new((m as i64 * m as i64).into(), 4.into())
}

fn sum_opt(acc: Option<u64>, x: Option<u64>, w: u32) -> Option<u64> {
    Some(acc? + w as u64 * x?)
}

impl Resolver {
    fn resolve(
        &self,
        f: Polynomial,
        center: Vec<Coeff>,
        chart: Chart,
        reality: Reality,
        weight: u32,
        depth: usize,
    ) -> Result<ResolutionNode, BlowupError> {
        if depth > MAX_DEPTH {
            return Err(BlowupError::DepthExceeded(MAX_DEPTH));
        }
        let g = f.translate(&center);
        let m = g.order().ok_or(BlowupError::NonIsolated)?;
        let real = reality == Reality::Real;
        let mut node = ResolutionNode {
            center,
            chart,
            local_poly: f,
            m,
            reality,
            weight,
            ordinary: false,
            smooth_branches: 0,
            locally_nonnegative: false,
            delta: Some(0),
            delta_real: None,
            delta_real_strict: None,
            delta_sos: None,
            children: Vec::new(),
        };
        if m <= 1 {
            if real {
                node.delta_real = Some(0);
                node.delta_real_strict = Some(0);
                node.delta_sos = Some(BigRational::zero());
                node.locally_nonnegative = m == 0;
            }
            return Ok(node);
        }
        let cone = g.homogeneous_part(m);
        let (u, deficit) = dehomogenize_binary(&cone).expect("binary form");
        let classes = u.squarefree_decomposition();
        node.ordinary = deficit <= 1 && classes.iter().all(|(_, k)| *k == 1);
        if real {
            node.locally_nonnegative =
                m % 2 == 0 && univariate_nonneg_upoly(&u).map(|r| r.nonnegative).unwrap_or(false);
        }
        let own = (m as u64) * (m as u64 - 1) / 2;
        if node.ordinary {
            node.smooth_branches = m;
            node.delta = Some(own);
            if real {
                node.delta_real = Some(own);
                node.delta_real_strict = Some(own);
                node.delta_sos = Some(half_m_sq(m));
            }
            return Ok(node);
        }
        let rational = g.is_rational();
        let mut incomplete = false;
        let mut real_dirs: Vec<Coeff> = Vec::new();
        let mut complex_dirs: Vec<(Coeff, Reality, u32)> = Vec::new();
        for (h, k) in &classes {
            if *k < 2 {
                node.smooth_branches += h.deg() as u32;
                continue;
            }
            let ex = exact_roots(h, self.expand_complex);
            for (r, _) in ex.roots {
                if !real {
                    complex_dirs.push((r, Reality::Complex, 1));
                } else if r.is_real() {
                    real_dirs.push(r);
                } else if rational {
                    // the conjugate root gives the conjugate subtree
                    if r.to_complex_f64().1 > 0.0 {
                        complex_dirs.push((r, Reality::ComplexPair, 2));
                    }
                } else {
                    incomplete = true;
                }
            }
            for (uf, _) in ex.unresolved {
                if real && real_root_count(&uf) > 0 {
                    return Err(BlowupError::UnsupportedExtension(uf.to_poly("t").to_string()));
                }
                incomplete = true;
            }
        }
        if deficit == 1 {
            node.smooth_branches += 1;
        }
        real_dirs.sort_by(|a, b| a.cmp_real(b).unwrap_or(Ordering::Equal));
        let mut dirs: Vec<(Direction, Reality, u32)> =
            real_dirs.into_iter().map(|r| (Direction::finite(r), reality, 1)).collect();
        if deficit >= 2 {
            dirs.push((Direction::infinite(), reality, 1));
        }
        if self.expand_complex {
            dirs.extend(complex_dirs.into_iter().map(|(r, re, w)| (Direction::finite(r), re, w)));
        } else if !complex_dirs.is_empty() {
            incomplete = true;
        }
        for (dir, re, w) in dirs {
            let st = chart_transform(&g, m, &dir);
            let child = self.resolve(st.poly, st.center, st.chart, re, w, depth + 1)?;
            node.children.push(child);
        }
        let mut delta = if incomplete { None } else { Some(own) };
        for c in &node.children {
            delta = sum_opt(delta, c.delta, c.weight);
        }
        node.delta = delta;
        if real {
            let mut dr = Some(own);
            let mut drs = Some(own);
            let mut ds = half_m_sq(m);
            for c in node.children.iter().filter(|c| c.reality == Reality::Real) {
                dr = sum_opt(dr, c.delta, 1);
                drs = sum_opt(drs, c.delta_real_strict, 1);
                ds += c.delta_sos.as_ref().expect("real child has δ^sos");
            }
            node.delta_real = dr;
            node.delta_real_strict = drs;
            node.delta_sos = Some(ds);
        }
        Ok(node)
    }
}

/// Whether the real zero set of `h` contains points other than the center
/// arbitrarily close to it. A real tangent of odd multiplicity means a sign
/// change around the center; even ones are followed into the blow-up.
fn has_real_branch(h: &Polynomial, center: &[Coeff], depth: usize) -> Result<bool, BlowupError> {
    if depth > MAX_DEPTH {
        return Ok(true);
    }
    let g = h.translate(center);
    let m = match g.order() {
        None => return Ok(true),
        Some(0) => return Ok(false),
        Some(m) => m,
    };
    if m % 2 == 1 {
        return Ok(true);
    }
    let (u, deficit) = dehomogenize_binary(&g.homogeneous_part(m)).expect("binary form");
    if deficit % 2 == 1 {
        return Ok(true);
    }
    let mut dirs = Vec::new();
    for (f, k) in u.squarefree_decomposition() {
        if real_root_count(&f) == 0 {
            continue;
        }
        if k % 2 == 1 {
            return Ok(true);
        }
        let ex = exact_roots(&f, false);
        if ex.unresolved_real() {
            let (uf, _) = &ex.unresolved[0];
            return Err(BlowupError::UnsupportedExtension(uf.to_poly("t").to_string()));
        }
        dirs.extend(ex.roots.into_iter().filter(|(r, _)| r.is_real()).map(|(r, _)| Direction::finite(r)));
    }
    if deficit >= 2 {
        dirs.push(Direction::infinite());
    }
    for d in dirs {
        let st = chart_transform(&g, m, &d);
        if has_real_branch(&st.poly, &st.center, depth + 1)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether the real zero set of `h` accumulates at `center` (a real branch
/// passes through it).
pub fn has_real_branch_at(h: &Polynomial, center: &[Coeff]) -> Result<bool, BlowupError> {
    check_bivariate(h)?;
    has_real_branch(h, center, 0)
}

/// `δ`, `δ^ℝ` and `δ^sos` of `p` at `center` from one resolution tree.
///
/// A polynomial with a repeated factor through the center is accepted as long
/// as that factor has no real branch there (for instance a power of a
/// polynomial with an isolated real zero); only the real invariants are then
/// computed.
pub fn delta_invariants(p: &Polynomial, center: &[Coeff]) -> Result<DeltaInvariants, BlowupError> {
    check_bivariate(p)?;
    if p.is_zero() {
        return Err(BlowupError::NonIsolated);
    }
    if !p.eval(center).is_zero() {
        return Err(BlowupError::NotAZero);
    }
    let real = center.iter().all(|c| c.is_real()) && p.terms().values().all(|c| c.is_real());
    let rep = bivar::repeated_part(p);
    let non_reduced = !rep.is_constant() && rep.eval(center).is_zero();
    if non_reduced {
        let radical = bivar::div_exact(p, &rep).expect("gcd with derivatives divides");
        if !real || has_real_branch(&radical, center, 0)? {
            return Err(BlowupError::NonIsolated);
        }
    }
    let resolver = Resolver { expand_complex: !non_reduced };
    let reality = if real { Reality::Real } else { Reality::Complex };
    let tree = resolver.resolve(p.clone(), center.to_vec(), Chart::Origin, reality, 1, 0)?;
    Ok(DeltaInvariants {
        delta: tree.delta,
        delta_real: tree.delta_real,
        delta_real_strict: tree.delta_real_strict,
        delta_sos: tree.delta_sos.clone(),
        non_reduced,
        tree,
    })
}

/// Dehomogenize a ternary form in the chart of `point` and compute its
/// invariants there.
pub fn delta_invariants_at(form: &Polynomial, point: &ProjectivePoint) -> Result<DeltaInvariants, BlowupError> {
    if form.nvars() != 3 || point.dim() != 3 {
        return Err(BlowupError::NotBivariate);
    }
    let k = point.chart_index();
    let f = form.dehomogenize(&form.vars()[k]).map_err(|_| BlowupError::NotBivariate)?;
    delta_invariants(&f, &point.affine_center())
}

/// `δ^sos` of `p^k` at `center`, obtained by resolving `p^k` itself.
pub fn sos_invariant_of_power(p: &Polynomial, center: &[Coeff], k: u32) -> Result<BigRational, BlowupError> {
    assert!(k >= 1, "power must be positive");
    let q = p.pow(k);
    delta_invariants(&q, center)?.delta_sos.ok_or(BlowupError::NotAZero)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionNumber {
    Finite(u64),
    Infinite,
}

impl IntersectionNumber {
    pub fn finite(self) -> Option<u64> {
        match self {
            IntersectionNumber::Finite(k) => Some(k),
            IntersectionNumber::Infinite => None,
        }
    }
}

impl std::fmt::Display for IntersectionNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntersectionNumber::Finite(k) => write!(f, "{k}"),
            IntersectionNumber::Infinite => write!(f, "inf"),
        }
    }
}

/// Local intersection multiplicity of `f = 0` and `g = 0` at `center` by
/// Noether's recursion `I = m_f·m_g + Σ I(f', g')` over common near points.
pub fn intersection_multiplicity(
    f: &Polynomial,
    g: &Polynomial,
    center: &[Coeff],
) -> Result<IntersectionNumber, BlowupError> {
    check_bivariate(f)?;
    let g = g.with_vars(f.vars()).map_err(|_| BlowupError::NotBivariate)?;
    if !f.eval(center).is_zero() || !g.eval(center).is_zero() {
        return Ok(IntersectionNumber::Finite(0));
    }
    let h = bivar::gcd(f, &g);
    if !h.is_constant() && h.eval(center).is_zero() {
        return Ok(IntersectionNumber::Infinite);
    }
    noether(&f.translate(center), &g.translate(center), 0).map(IntersectionNumber::Finite)
}

fn noether(f: &Polynomial, g: &Polynomial, depth: usize) -> Result<u64, BlowupError> {
    if depth > MAX_DEPTH {
        return Err(BlowupError::DepthExceeded(MAX_DEPTH));
    }
    let mf = f.order().unwrap_or(0);
    let mg = g.order().unwrap_or(0);
    if mf == 0 || mg == 0 {
        return Ok(0);
    }
    let (uf, df) = dehomogenize_binary(&f.homogeneous_part(mf)).expect("binary form");
    let (ug, dg) = dehomogenize_binary(&g.homogeneous_part(mg)).expect("binary form");
    let mut total = mf as u64 * mg as u64;
    let rational = f.is_rational() && g.is_rational();
    let common = uf.gcd(&ug);
    let mut dirs: Vec<(Direction, u64)> = Vec::new();
    if common.deg() > 0 {
        let ex = exact_roots(&common, true);
        if let Some((uf, _)) = ex.unresolved.first() {
            return Err(BlowupError::UnsupportedExtension(uf.to_poly("t").to_string()));
        }
        for (r, _) in ex.roots {
            if r.is_real() || !rational {
                dirs.push((Direction::finite(r), 1));
            } else if r.to_complex_f64().1 > 0.0 {
                dirs.push((Direction::finite(r), 2));
            }
        }
    }
    if df > 0 && dg > 0 {
        dirs.push((Direction::infinite(), 1));
    }
    for (d, w) in dirs {
        let sf = chart_transform(f, mf, &d);
        let sg = chart_transform(g, mg, &d);
        total += w * noether(&sf.poly.translate(&sf.center), &sg.poly.translate(&sg.center), depth + 1)?;
    }
    Ok(total)
}

/// Independent check of [`intersection_multiplicity`]: the order at `x = 0`
/// of `Res_y` after random invertible linear changes of coordinates centered
/// at the point, minimized over the trials.
pub fn resultant_intersection_oracle(
    f: &Polynomial,
    g: &Polynomial,
    center: &[Coeff],
    seed: u64,
) -> Result<u64, BlowupError> {
    check_bivariate(f)?;
    let vars = f.vars().to_vec();
    let g = g.with_vars(&vars).map_err(|_| BlowupError::NotBivariate)?;
    let f0 = f.translate(center);
    let g0 = g.translate(center);
    if !f0.constant_term().is_zero() || !g0.constant_term().is_zero() {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = Polynomial::var_in(vars.clone(), &vars[0]).unwrap();
    let y = Polynomial::var_in(vars.clone(), &vars[1]).unwrap();
    let mut best: Option<usize> = None;
    for _ in 0..ORACLE_TRIALS {
        let (a, b, c, d) = loop {
            let v: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
            if v[0] * v[3] - v[1] * v[2] != 0 {
                break (v[0], v[1], v[2], v[3]);
            }
        };
        let lin = |s: i64, t: i64| x.scale(&Coeff::from_int(s)).add(&y.scale(&Coeff::from_int(t)));
        let images = [lin(a, b), lin(c, d)];
        let fa = f0.compose(&images, &vars);
        let ga = g0.compose(&images, &vars);
        let r = bivar::resultant(&fa, &ga, 1);
        if let Some(k) = r.order_at_zero() {
            best = Some(best.map_or(k, |b| b.min(k)));
        }
    }
    best.map(|k| k as u64).ok_or(BlowupError::DegenerateOracle(ORACLE_TRIALS))
}
