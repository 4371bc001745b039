//! Exact univariate real-root machinery.
//!
//! Sturm sequences and bisection isolate real roots of polynomials over ℚ or
//! a real quadratic field. On top of that, [`exact_roots`] extracts the roots
//! that live in ℚ or in a single quadratic extension; anything else is
//! returned as an unresolved factor.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::coeff::Coeff;
use crate::numroots::complex_roots;
use crate::poly::Polynomial;
use crate::upoly::UPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("expected a univariate polynomial, found variables {0:?}")]
    NotUnivariate(Vec<String>),
    #[error("expected a homogeneous binary form")]
    NotBinaryForm,
    #[error("real-root isolation needs real coefficients")]
    NonRealCoefficients,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Sturm sequence of a polynomial with real coefficients.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<UPoly>,
}

fn count_changes<I: Iterator<Item = Ordering>>(signs: I) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn lc_sign(p: &UPoly) -> Ordering {
    p.lc().sign().expect("real coefficients")
}

impl Sturm {
    pub fn new(f: &UPoly) -> Self {
        let mut seq = vec![f.clone()];
        if f.deg() > 0 {
            seq.push(f.derivative());
            loop {
                let n = seq.len();
                let r = seq[n - 2].rem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                // keep the sequence small: positive rescaling preserves signs
                let r = r.neg();
                let s = r.lc().abs_real().inv();
                seq.push(r.scale(&s));
            }
        }
        Sturm { seq }
    }

    pub fn variations_at(&self, t: &BigRational) -> usize {
        count_changes(self.seq.iter().map(|p| p.sign_at(t)))
    }

    pub fn variations_neg_inf(&self) -> usize {
        count_changes(self.seq.iter().map(|p| {
            let s = lc_sign(p);
            if p.deg() % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    pub fn variations_pos_inf(&self) -> usize {
        count_changes(self.seq.iter().map(lc_sign))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_neg_inf() - self.variations_pos_inf()
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// Rational upper bound on the absolute value of every complex root.
pub fn root_bound(f: &UPoly) -> BigRational {
    let n = f.norm_poly();
    let lc = n.lc().re().abs();
    let mut m = BigRational::zero();
    for c in &n.coeffs()[..n.coeffs().len() - 1] {
        let q = c.re().abs() / &lc;
        if q > m {
            m = q;
        }
    }
    m + BigRational::one()
}

/// An isolated real root of a square-free factor.
#[derive(Clone, Debug)]
pub struct RootBox {
    factor: UPoly,
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: u32,
}

impl RootBox {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn factor(&self) -> &UPoly {
        &self.factor
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) * half()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Halve the interval (sign-change bisection). Exact roots stay put.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let m = self.mid();
        let sm = self.factor.sign_at(&m);
        if sm == Ordering::Equal {
            self.lo = m.clone();
            self.hi = m;
            return;
        }
        if sm == self.factor.sign_at(&self.lo) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    pub fn refine_to(&mut self, width: &BigRational) {
        while !self.is_exact() && &self.width() > width {
            self.bisect();
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    pub fn interval(&self) -> IsolatingInterval {
        IsolatingInterval { lo: self.lo.clone(), hi: self.hi.clone(), multiplicity: self.multiplicity }
    }

    pub fn overlaps(&self, o: &RootBox) -> bool {
        !(self.hi < o.lo || o.hi < self.lo)
            && !(self.hi == o.lo && !(self.is_exact() && o.is_exact()))
            && !(o.hi == self.lo && !(self.is_exact() && o.is_exact()))
    }
}

/// Public isolating interval: `lo = hi` marks an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatingInterval {
    #[serde(serialize_with = "ser_rat")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub hi: BigRational,
    pub multiplicity: u32,
}

pub(crate) fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Isolate the distinct real roots of a square-free `f` with real
/// coefficients. Boxes are sorted and, unless exact, have nonzero values of
/// opposite sign at both ends.
pub fn isolate_squarefree(f: &UPoly) -> Vec<RootBox> {
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let st = Sturm::new(f);
    let b = root_bound(f);
    let a = -b.clone();
    let n = st.count(&a, &b);
    let mut stack = vec![(a, b, n)];
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            let (mut a, mut b) = (a, b);
            loop {
                if f.sign_at(&b) == Ordering::Equal {
                    out.push(RootBox { factor: f.clone(), lo: b.clone(), hi: b, multiplicity: 1 });
                    break;
                }
                if f.sign_at(&a) != Ordering::Equal {
                    out.push(RootBox { factor: f.clone(), lo: a, hi: b, multiplicity: 1 });
                    break;
                }
                let m = (&a + &b) * half();
                if st.count(&a, &m) == 1 {
                    b = m;
                } else {
                    a = m;
                }
            }
            continue;
        }
        let m = (&a + &b) * half();
        let c1 = st.count(&a, &m);
        stack.push((m.clone(), b, n - c1));
        stack.push((a, m, c1));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Isolate all distinct real roots with multiplicities. The boxes are
/// pairwise disjoint and sorted.
pub fn isolate_upoly(p: &UPoly) -> Vec<RootBox> {
    let mut boxes: Vec<RootBox> = Vec::new();
    for (f, k) in p.squarefree_decomposition() {
        for mut b in isolate_squarefree(&f) {
            b.multiplicity = k;
            boxes.push(b);
        }
    }
    separate(&mut boxes);
    boxes
}

/// Refine boxes until no two overlap, then sort.
pub fn separate(boxes: &mut [RootBox]) {
    loop {
        boxes.sort_by(|x, y| x.lo.cmp(&y.lo).then(x.hi.cmp(&y.hi)));
        let mut clash = None;
        for i in 1..boxes.len() {
            if boxes[i - 1].overlaps(&boxes[i]) {
                clash = Some(i);
                break;
            }
        }
        match clash {
            None => return,
            Some(i) => {
                boxes[i - 1].bisect();
                boxes[i].bisect();
            }
        }
    }
}

fn univariate_of(p: &Polynomial) -> Result<UPoly, RootError> {
    let q = p.drop_unused_vars();
    match q.nvars() {
        0 => Ok(UPoly::constant(q.constant_term())),
        1 => Ok(UPoly::from_poly(&q, 0)),
        _ => Err(RootError::NotUnivariate(q.vars().to_vec())),
    }
}

/// Isolating intervals for the distinct real roots of a univariate
/// polynomial, with multiplicities.
pub fn isolate_real_roots(p: &Polynomial) -> Result<Vec<IsolatingInterval>, RootError> {
    let u = univariate_of(p)?;
    if u.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if !u.coeffs().iter().all(|c| c.is_real()) {
        return Err(RootError::NonRealCoefficients);
    }
    Ok(isolate_upoly(&u).iter().map(|b| b.interval()).collect())
}

/// Number of distinct real roots, for coefficients in any supported field.
pub fn real_root_count(f: &UPoly) -> usize {
    if f.deg() <= 0 {
        return 0;
    }
    if f.radicand() < 0 {
        // a(t) + √D b(t) with √D imaginary vanishes at real t iff a and b do
        let (a, b) = f.split_parts();
        let g = a.gcd(&b);
        return real_root_count(&g);
    }
    Sturm::new(&f.squarefree_part()).count_all()
}

/// Roots in ℚ or in one quadratic extension, plus what could not be
/// resolved.
#[derive(Clone, Debug, Default)]
pub struct ExactRoots {
    /// Distinct roots with multiplicity; real roots ascending first, then
    /// non-real ones.
    pub roots: Vec<(Coeff, u32)>,
    /// Leftover factors (with multiplicity) whose roots lie outside the
    /// supported fields, or, when complex roots were not requested, factors
    /// that may still hold non-real roots.
    pub unresolved: Vec<(UPoly, u32)>,
}

impl ExactRoots {
    /// True if some unresolved factor has a real root.
    pub fn unresolved_real(&self) -> bool {
        self.unresolved.iter().any(|(f, _)| real_root_count(f) > 0)
    }
}

fn round_rat(r: &BigRational) -> BigInt {
    r.round().to_integer()
}

fn quadratic_roots(l: &BigInt, s: &BigInt, p: &BigInt) -> Option<(Coeff, Coeff)> {
    // roots of l t² − s t + p
    let disc = s * s - BigInt::from(4) * l * p;
    let d = disc.to_i64()?;
    if d == 0 {
        return None;
    }
    let two_l = BigInt::from(2) * l;
    let a = BigRational::new(s.clone(), two_l.clone());
    let b = BigRational::new(BigInt::one(), two_l);
    let r1 = Coeff::new(a.clone(), b.clone(), d);
    let r2 = Coeff::new(a, -b, d);
    Some((r1, r2))
}

fn int_upoly(v: &[BigInt]) -> UPoly {
    UPoly::new(v.iter().map(|x| Coeff::from_bigint(x.clone())).collect())
}

/// Rational and quadratic roots of a square-free rational polynomial.
fn rational_square_free_roots(f: &UPoly, complex: bool) -> (Vec<Coeff>, UPoly) {
    let mut roots: Vec<Coeff> = Vec::new();
    let mut g = f.monic();
    if g.deg() <= 0 {
        return (roots, g);
    }
    let l = f.primitive_int().last().unwrap().clone();
    let lq = BigRational::from_integer(l.clone());
    let mut boxes = isolate_squarefree(&g);
    let mut irrational: Vec<RootBox> = Vec::new();
    let target = BigRational::new(BigInt::one(), BigInt::from(4) * &l);
    for mut b in boxes.drain(..) {
        if !b.is_exact() {
            b.refine_to(&target);
        }
        if b.is_exact() {
            roots.push(Coeff::from_rational(b.lo.clone()));
            continue;
        }
        let cand = BigRational::new(round_rat(&(b.mid() * &lq)), l.clone());
        if cand > b.lo && cand < b.hi && g.sign_at(&cand) == Ordering::Equal {
            roots.push(Coeff::from_rational(cand));
        } else {
            irrational.push(b);
        }
    }
    for r in &roots {
        g = g.divrem(&UPoly::linear_root(r)).0;
    }
    // real quadratic pairs
    if irrational.len() >= 2 {
        let mut bound = BigRational::one();
        for b in &irrational {
            let m = b.lo.abs().max(b.hi.abs());
            if m > bound {
                bound = m;
            }
        }
        let eps = BigRational::new(BigInt::one(), BigInt::one() << 24);
        let w = eps / (&lq * (&bound + BigRational::from_integer(BigInt::from(2))));
        for b in irrational.iter_mut() {
            b.refine_to(&w);
        }
        let n = irrational.len();
        let mut used = vec![false; n];
        let tol = BigRational::new(BigInt::one(), BigInt::from(1000));
        for i in 0..n {
            if used[i] {
                continue;
            }
            for j in i + 1..n {
                if used[j] || used[i] {
                    continue;
                }
                let (mi, mj) = (irrational[i].mid(), irrational[j].mid());
                let sx = (&mi + &mj) * &lq;
                let px = &mi * &mj * &lq;
                let s = round_rat(&sx);
                let p = round_rat(&px);
                if (sx - BigRational::from_integer(s.clone())).abs() > tol
                    || (px - BigRational::from_integer(p.clone())).abs() > tol
                {
                    continue;
                }
                let q = int_upoly(&[p.clone(), -s.clone(), l.clone()]);
                if let Some(h) = g.div_exact(&q) {
                    if let Some((r1, r2)) = quadratic_roots(&l, &s, &p) {
                        if r1.is_real() {
                            g = h;
                            roots.push(r1);
                            roots.push(r2);
                            used[i] = true;
                            used[j] = true;
                        }
                    }
                }
            }
        }
    }
    // complex conjugate pairs
    if complex && g.deg() >= 2 {
        let l = g.primitive_int().last().unwrap().clone();
        let lf = l.to_f64().unwrap_or(f64::INFINITY);
        let fc: Vec<f64> = g.coeffs().iter().map(|c| c.to_f64()).collect();
        for z in complex_roots(&fc) {
            if z.im <= 1e-9 * (1.0 + z.norm()) || g.deg() < 2 {
                continue;
            }
            let sf = (2.0 * z.re * lf).round();
            let pf = (z.norm_sqr() * lf).round();
            if !sf.is_finite() || !pf.is_finite() || pf.abs() > 9e15 || sf.abs() > 9e15 {
                continue;
            }
            let s = BigInt::from(sf as i64);
            let p = BigInt::from(pf as i64);
            let q = int_upoly(&[p.clone(), -s.clone(), l.clone()]);
            if let Some(h) = g.div_exact(&q) {
                if let Some((r1, r2)) = quadratic_roots(&l, &s, &p) {
                    if !r1.is_real() {
                        g = h;
                        // upper half-plane root first
                        let (u, v) = if r1.to_complex_f64().1 > 0.0 { (r1, r2) } else { (r2, r1) };
                        roots.push(u);
                        roots.push(v);
                    }
                }
            }
        }
    }
    (roots, g)
}

fn order_roots(roots: &mut [(Coeff, u32)]) {
    roots.sort_by(|(a, _), (b, _)| {
        match (a.is_real(), b.is_real()) {
            (true, true) => a.cmp_real(b).unwrap(),
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => {
                let (ar, ai) = a.to_complex_f64();
                let (br, bi) = b.to_complex_f64();
                ar.partial_cmp(&br)
                    .unwrap_or(Ordering::Equal)
                    .then(bi.partial_cmp(&ai).unwrap_or(Ordering::Equal))
            }
        }
    });
}

/// Roots of `p` lying in ℚ or in one quadratic field. With `complex` unset,
/// only real roots are searched (non-real quadratic pairs are left in the
/// unresolved factors).
pub fn exact_roots(p: &UPoly, complex: bool) -> ExactRoots {
    let mut out = ExactRoots::default();
    if p.deg() <= 0 {
        return out;
    }
    let d = p.radicand();
    for (f, k) in p.squarefree_decomposition() {
        let (found, rest) = if d == 1 {
            rational_square_free_roots(&f, complex)
        } else {
            // roots of f are among the roots of its norm, a rational polynomial
            let norm = f.norm_poly();
            let cand = exact_roots(&norm, complex || d < 0);
            let mut found: Vec<Coeff> = Vec::new();
            let mut rest = f.clone();
            for (r, _) in cand.roots {
                if Coeff::common_field(r.radicand(), d).is_none() {
                    continue;
                }
                if found.contains(&r) {
                    continue;
                }
                if rest.eval(&r).is_zero() {
                    rest = rest.divrem(&UPoly::linear_root(&r)).0;
                    found.push(r);
                }
            }
            (found, rest.monic())
        };
        out.roots.extend(found.into_iter().map(|r| (r, k)));
        if rest.deg() > 0 {
            out.unresolved.push((rest, k));
        }
    }
    order_roots(&mut out.roots);
    out
}

/// Outcome of an exact nonnegativity test.
#[derive(Clone, Debug, Serialize)]
pub enum NonnegWitness {
    /// A rational point where the polynomial is negative.
    Negative {
        #[serde(serialize_with = "ser_rat")]
        at: BigRational,
        value: Coeff,
    },
    /// Even degree, positive leading coefficient, and every real root has
    /// even multiplicity.
    EvenRoots { roots: Vec<IsolatingInterval> },
}

#[derive(Clone, Debug, Serialize)]
pub struct NonnegResult {
    pub nonnegative: bool,
    pub witness: NonnegWitness,
}

fn negative_point(p: &UPoly, odd: &UPoly) -> (BigRational, Coeff) {
    let mut cands: Vec<BigRational> = Vec::new();
    for b in isolate_squarefree(odd) {
        cands.push(b.lo.clone());
        cands.push(b.hi.clone());
    }
    cands.push(BigRational::zero());
    let mut k = 0u32;
    loop {
        for c in &cands {
            let step = BigRational::new(BigInt::one(), BigInt::one() << k);
            for t in [c.clone(), c - &step, c + &step] {
                let v = p.eval_rat(&t);
                if v.sign() == Some(Ordering::Less) {
                    return (t, v);
                }
            }
        }
        k += 1;
        assert!(k < 4096, "no negative point found for a sign-changing polynomial");
    }
}

/// Decide `p(t) ≥ 0` for all real `t` exactly.
pub fn univariate_nonneg_upoly(p: &UPoly) -> Result<NonnegResult, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if !p.coeffs().iter().all(|c| c.is_real()) {
        return Err(RootError::NonRealCoefficients);
    }
    let dec = p.squarefree_decomposition();
    let odd = dec
        .iter()
        .filter(|(_, k)| k % 2 == 1)
        .fold(UPoly::one(), |acc, (f, _)| acc.mul(f))
        .scale(&p.lc());
    let crosses = Sturm::new(&odd).count_all() > 0;
    let positive_lc = p.lc().sign() == Some(Ordering::Greater);
    if crosses || !positive_lc {
        let (at, value) = negative_point(p, &odd);
        return Ok(NonnegResult { nonnegative: false, witness: NonnegWitness::Negative { at, value } });
    }
    let roots = isolate_upoly(p).iter().map(|b| b.interval()).collect();
    Ok(NonnegResult { nonnegative: true, witness: NonnegWitness::EvenRoots { roots } })
}

pub fn univariate_nonneg(p: &Polynomial) -> Result<NonnegResult, RootError> {
    univariate_nonneg_upoly(&univariate_of(p)?)
}

/// `f_{n,r}(t) = Σ_{i≤r} C(n,i) tⁱ`.
pub fn truncated_binomial_upoly(n: u32, r: u32) -> UPoly {
    assert!(r <= n, "truncated binomial needs r ≤ n");
    let mut c = Vec::with_capacity(r as usize + 1);
    let mut b = BigInt::one();
    for i in 0..=r {
        c.push(Coeff::from_bigint(b.clone()));
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    UPoly::new(c)
}

pub fn truncated_binomial(n: u32, r: u32) -> Polynomial {
    truncated_binomial_upoly(n, r).to_poly("t")
}

/// Strict positivity of `f_{n,r}` on ℝ: no real root and `f(0) = 1 > 0`.
pub fn truncated_binomial_positive(n: u32, r: u32) -> bool {
    let f = truncated_binomial_upoly(n, r);
    strictly_positive(&f)
}

/// `p(t) > 0` for every real `t`.
pub fn strictly_positive(p: &UPoly) -> bool {
    if p.is_zero() {
        return false;
    }
    real_root_count(p) == 0 && p.eval_rat(&BigRational::zero()).sign() == Some(Ordering::Greater)
}

/// A projective direction `[u:v]`, normalized to `[r:1]` or `[1:0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Direction {
    pub u: Coeff,
    pub v: Coeff,
}

impl Direction {
    pub fn finite(r: Coeff) -> Self {
        Direction { u: r, v: Coeff::one() }
    }

    pub fn infinite() -> Self {
        Direction { u: Coeff::one(), v: Coeff::zero() }
    }

    pub fn is_infinite(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.u.is_real()
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}:{}]", self.u.to_string().replace(' ', ""), self.v)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BinaryFormFactorization {
    /// Real directions with multiplicity.
    pub rational_linear: Vec<(Direction, u32)>,
    /// The cofactor left after removing the linear factors.
    pub irreducible_remainder: Polynomial,
    /// The remainder still has real roots outside the supported fields.
    pub has_unsupported_real_roots: bool,
}

/// `F(t, 1)` for a binary form in variables `(x, y)`, with the degree
/// deficit giving the multiplicity of `[1:0]`.
pub fn dehomogenize_binary(f: &Polynomial) -> Result<(UPoly, u32), RootError> {
    if f.nvars() != 2 || !f.is_homogeneous() {
        return Err(RootError::NotBinaryForm);
    }
    let m = f.degree().ok_or(RootError::ZeroPolynomial)?;
    let mut c = vec![Coeff::zero(); m as usize + 1];
    for (e, x) in f.terms() {
        c[e[0] as usize] = x.clone();
    }
    let u = UPoly::new(c);
    let deficit = m - u.deg() as u32;
    Ok((u, deficit))
}

/// Rebuild the binary form `y^deficit · y^deg u · u(x/y)` in `vars`.
pub fn homogenize_binary(u: &UPoly, deficit: u32, vars: &[String]) -> Polynomial {
    let deg = u.deg().max(0) as u32;
    Polynomial::from_terms(
        vars.to_vec(),
        u.coeffs().iter().enumerate().map(|(k, c)| (vec![k as u32, deg - k as u32 + deficit], c.clone())),
    )
}

/// Real linear factors of a binary form.
pub fn binary_real_tangents(f: &Polynomial) -> Result<BinaryFormFactorization, RootError> {
    let (u, deficit) = dehomogenize_binary(f)?;
    let ex = exact_roots(&u, false);
    let mut rest = u.clone();
    let mut lin = Vec::new();
    for (r, k) in &ex.roots {
        if !r.is_real() {
            continue;
        }
        rest = rest.divrem(&UPoly::linear_root(r).pow(*k)).0;
        lin.push((Direction::finite(r.clone()), *k));
    }
    if deficit > 0 {
        lin.push((Direction::infinite(), deficit));
    }
    let unsupported = real_root_count(&rest) > 0;
    Ok(BinaryFormFactorization {
        rational_linear: lin,
        irreducible_remainder: homogenize_binary(&rest, 0, f.vars()),
        has_unsupported_real_roots: unsupported,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::poly::parse;

    fn t(s: &str) -> Polynomial {
        parse(s, &["t"]).unwrap()
    }

    #[test]
    fn simple_isolation() {
        let r = isolate_real_roots(&t("t^2 - 1")).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|i| i.multiplicity == 1));
        assert!(r[0].lo <= rat(-1, 1) && rat(-1, 1) <= r[0].hi);
        let r2 = isolate_real_roots(&t("t^4 - 2*t^2 + 1")).unwrap();
        assert_eq!(r2.len(), 2);
        assert!(r2.iter().all(|i| i.multiplicity == 2));
        assert_eq!(isolate_real_roots(&t("0")), Err(RootError::ZeroPolynomial));
    }

    #[test]
    fn sqrt_two_box() {
        let r = isolate_real_roots(&t("t^2 - 2")).unwrap();
        let mut b = isolate_squarefree(&UPoly::from_ints(&[-2, 0, 1]));
        b[1].refine_to(&rat(1, 1_000_000));
        assert!((b[1].to_f64() - 2f64.sqrt()).abs() < 1e-6);
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn exact_roots_rational_and_quadratic() {
        // (3t - 2)(t^2 - 3)(t^2 + t + 1)^2
        let f = UPoly::from_ints(&[-2, 3])
            .mul(&UPoly::from_ints(&[-3, 0, 1]))
            .mul(&UPoly::from_ints(&[1, 1, 1]).pow(2));
        let ex = exact_roots(&f, false);
        let vals: Vec<f64> = ex.roots.iter().map(|(r, _)| r.to_f64()).collect();
        assert_eq!(vals.len(), 3);
        assert!((vals[0] + 3f64.sqrt()).abs() < 1e-12);
        assert!((vals[1] - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(ex.unresolved.len(), 1);
        assert!(!ex.unresolved_real());
        let exc = exact_roots(&f, true);
        assert_eq!(exc.roots.len(), 5);
        assert!(exc.unresolved.is_empty());
        let (z, k) = &exc.roots[3];
        assert_eq!(*k, 2);
        assert_eq!(z.radicand(), -3);
    }

    #[test]
    fn exact_roots_over_quadratic_field() {
        // (t - sqrt 3)(t + 1) over Q(sqrt 3)
        let s3 = Coeff::sqrt_int(3);
        let f = UPoly::linear_root(&s3).mul(&UPoly::from_ints(&[1, 1]));
        let ex = exact_roots(&f, false);
        assert_eq!(ex.roots.len(), 2);
        assert_eq!(ex.roots[1].0, s3);
        assert!(ex.unresolved.is_empty());
    }

    #[test]
    fn cubic_irrational_is_unresolved() {
        let f = UPoly::from_ints(&[-2, 0, 0, 1]);
        let ex = exact_roots(&f, true);
        assert!(ex.roots.is_empty());
        assert!(ex.unresolved_real());
    }

    #[test]
    fn nonnegativity() {
        assert!(univariate_nonneg(&t("t^4 - 2*t^2 + 1")).unwrap().nonnegative);
        let r = univariate_nonneg(&t("t^3")).unwrap();
        assert!(!r.nonnegative);
        match r.witness {
            NonnegWitness::Negative { at, .. } => assert_eq!(at, rat(-1, 1)),
            _ => panic!("expected a negative witness"),
        }
        // X^2 (c X + (X^2+1)^2) at c = 16/5 dips below zero
        let p = t("t^6 + 2*t^4 + 16/5*t^3 + t^2");
        assert!(!univariate_nonneg(&p).unwrap().nonnegative);
        let q = t("t^6 + 2*t^4 + 3*t^3 + t^2");
        assert!(univariate_nonneg(&q).unwrap().nonnegative);
    }

    #[test]
    fn truncated_binomials() {
        assert_eq!(truncated_binomial(3, 2), t("1 + 3*t + 3*t^2"));
        assert!(truncated_binomial_positive(3, 2));
        assert!(truncated_binomial_positive(5, 4));
        assert!(!truncated_binomial_positive(3, 1));
        // f_{2r+1,2r} = (1+t)^{2r+1} - t^{2r+1}
        let r = 3;
        let lhs = truncated_binomial(2 * r + 1, 2 * r);
        let rhs = t("1 + t").pow(2 * r + 1).sub(&t("t").pow(2 * r + 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tangent_directions() {
        let v = &["x", "y"];
        let f = binary_real_tangents(&parse("y^2", v).unwrap()).unwrap();
        assert_eq!(f.rational_linear, vec![(Direction::infinite(), 2)]);
        let g = binary_real_tangents(&parse("x^2 + y^2", v).unwrap()).unwrap();
        assert!(g.rational_linear.is_empty());
        assert_eq!(g.irreducible_remainder, parse("x^2 + y^2", v).unwrap());
        let h = binary_real_tangents(&parse("x^2 - 2*y^2", v).unwrap()).unwrap();
        let s2 = Coeff::sqrt_int(2);
        assert_eq!(
            h.rational_linear,
            vec![(Direction::finite(-s2.clone()), 1), (Direction::finite(s2), 1)]
        );
        let c = binary_real_tangents(&parse("x^3 - 2*y^3", v).unwrap()).unwrap();
        assert!(c.has_unsupported_real_roots);
    }

    #[test]
    fn stengle_double_root() {
        // X^2 (cX + (X^2+1)^2) at c = 16 sqrt(3)/9 has (X + 1/sqrt 3)^2 as a factor
        let c = Coeff::new(BigRational::zero(), rat(16, 9), 3);
        let f = UPoly::new(vec![
            Coeff::zero(),
            Coeff::zero(),
            Coeff::one(),
            c,
            Coeff::from_int(2),
            Coeff::zero(),
            Coeff::one(),
        ]);
        let ex = exact_roots(&f, false);
        let want = Coeff::new(BigRational::zero(), rat(-1, 3), 3);
        assert!(ex.roots.contains(&(want, 2)));
        assert!(ex.roots.contains(&(Coeff::zero(), 2)));
    }
}
