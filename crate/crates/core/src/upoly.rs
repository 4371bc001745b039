//! Dense univariate polynomials over ℚ or ℚ(√D).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::Coeff;
use crate::poly::Polynomial;

/// Coefficients stored low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    c: Vec<Coeff>,
}

impl UPoly {
    pub fn new(mut c: Vec<Coeff>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly { c: vec![Coeff::one()] }
    }

    pub fn constant(c: Coeff) -> Self {
        UPoly::new(vec![c])
    }

    /// `t − a`.
    pub fn linear_root(a: &Coeff) -> Self {
        UPoly::new(vec![-a.clone(), Coeff::one()])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        UPoly::new(v.iter().map(|&x| Coeff::from_int(x)).collect())
    }

    pub fn from_rationals(v: Vec<BigRational>) -> Self {
        UPoly::new(v.into_iter().map(Coeff::from_rational).collect())
    }

    /// Read a univariate [`Polynomial`] in variable `i` (other variables
    /// must not occur).
    pub fn from_poly(p: &Polynomial, i: usize) -> Self {
        let mut c = vec![Coeff::zero(); p.degree_in(i) as usize + 1];
        for (e, x) in p.terms() {
            debug_assert!(e.iter().enumerate().all(|(j, &k)| j == i || k == 0));
            c[e[i] as usize] = x.clone();
        }
        UPoly::new(c)
    }

    pub fn to_poly(&self, var: &str) -> Polynomial {
        Polynomial::from_terms(
            vec![var.to_string()],
            self.c.iter().enumerate().map(|(k, x)| (vec![k as u32], x.clone())),
        )
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `-1`.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> Coeff {
        self.c.last().cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn coeff(&self, k: usize) -> Coeff {
        self.c.get(k).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn radicand(&self) -> i64 {
        self.c.iter().fold(1, |d, x| Coeff::common_field(d, x.radicand()).expect("mixed fields"))
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().all(|x| x.is_rational())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Coeff::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, s: &Coeff) -> UPoly {
        UPoly::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().inv())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c.iter().enumerate().skip(1).map(|(k, x)| x * &Coeff::from_int(k as i64)).collect(),
        )
    }

    pub fn eval(&self, t: &Coeff) -> Coeff {
        let mut acc = Coeff::zero();
        for x in self.c.iter().rev() {
            acc = &(&acc * t) + x;
        }
        acc
    }

    /// Horner evaluation at a rational point, returning the exact value.
    pub fn eval_rat(&self, t: &BigRational) -> Coeff {
        self.eval(&Coeff::from_rational(t.clone()))
    }

    /// Exact sign at a rational point. Requires real coefficients.
    pub fn sign_at(&self, t: &BigRational) -> Ordering {
        self.eval_rat(t).sign().expect("sign of a non-real value")
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, x| acc * t + x.to_f64())
    }

    /// Quotient and remainder over the coefficient field.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.deg() < d.deg() {
            return (UPoly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let dl = d.lc().inv();
        let dn = d.c.len();
        let mut q = vec![Coeff::zero(); r.len() - dn + 1];
        for k in (0..q.len()).rev() {
            let f = &r[k + dn - 1] * &dl;
            if f.is_zero() {
                continue;
            }
            for (j, x) in d.c.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&f * x);
            }
            q[k] = f;
        }
        r.truncate(dn - 1);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Exact quotient if `d` divides `self`.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free decomposition (Yun): monic `f_1, f_2, …` with
    /// `self = lc · Π f_i^i` and the `f_i` square-free and coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        let mut out = Vec::new();
        if self.deg() <= 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.divrem(&a0).0;
        let mut c = df.divrem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.divrem(&a).0;
            if b.deg() <= 0 {
                break;
            }
            c = d.divrem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> UPoly {
        if self.deg() <= 0 {
            return UPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Galois conjugate coefficients.
    pub fn conj(&self) -> UPoly {
        UPoly { c: self.c.iter().map(|x| x.conj()).collect() }
    }

    /// `self · conj(self)`, a polynomial over ℚ.
    pub fn norm_poly(&self) -> UPoly {
        if self.is_rational() {
            return self.clone();
        }
        self.mul(&self.conj())
    }

    /// Split `a(t) + √D·b(t)` into the rational polynomials `(a, b)`.
    pub fn split_parts(&self) -> (UPoly, UPoly) {
        let a = UPoly::new(self.c.iter().map(|x| Coeff::from_rational(x.re().clone())).collect());
        let b = UPoly::new(self.c.iter().map(|x| Coeff::from_rational(x.irr().clone())).collect());
        (a, b)
    }

    /// Rational coefficients scaled to coprime integers with positive
    /// leading coefficient. Panics on irrational coefficients.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        assert!(self.is_rational());
        let mut l = BigInt::one();
        for x in &self.c {
            l = num_integer::lcm(l, x.re().denom().clone());
        }
        let mut v: Vec<BigInt> = self.c.iter().map(|x| x.re().numer() * (&l / x.re().denom())).collect();
        let mut g = BigInt::zero();
        for x in &v {
            g = num_integer::gcd(g, x.clone());
        }
        if g.is_zero() {
            return v;
        }
        if v.last().unwrap().is_negative() {
            g = -g;
        }
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
        v
    }

    /// `p(t + a)`.
    pub fn shift(&self, a: &Coeff) -> UPoly {
        let lin = UPoly::new(vec![a.clone(), Coeff::one()]);
        let mut acc = UPoly::zero();
        for x in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&UPoly::constant(x.clone()));
        }
        acc
    }

    /// Order of vanishing at `t = 0`.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let b = UPoly::from_ints(&[1, 1]); // t + 1
        let (q, r) = a.divrem(&b);
        assert_eq!(q, UPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let c = UPoly::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&c), b);
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)(t+2)^2 t^3
        let f = UPoly::from_ints(&[-1, 1])
            .mul(&UPoly::from_ints(&[2, 1]).pow(2))
            .mul(&UPoly::from_ints(&[0, 1]).pow(3))
            .scale(&Coeff::from_int(5));
        let sq = f.squarefree_decomposition();
        assert_eq!(
            sq,
            vec![
                (UPoly::from_ints(&[-1, 1]), 1),
                (UPoly::from_ints(&[2, 1]), 2),
                (UPoly::from_ints(&[0, 1]), 3)
            ]
        );
        let back = sq
            .iter()
            .fold(UPoly::one(), |acc, (g, k)| acc.mul(&g.pow(*k)))
            .scale(&Coeff::from_int(5));
        assert_eq!(back, f);
    }

    #[test]
    fn norm_is_rational() {
        let s2 = Coeff::sqrt_int(2);
        let h = UPoly::new(vec![-s2.clone(), Coeff::one()]); // t - sqrt 2
        assert_eq!(h.norm_poly(), UPoly::from_ints(&[-2, 0, 1]));
    }

    #[test]
    fn shift_matches_eval() {
        let p = UPoly::from_ints(&[3, -2, 0, 1]);
        let a = Coeff::from_frac(1, 3);
        let s = p.shift(&a);
        let t = Coeff::from_int(2);
        assert_eq!(s.eval(&t), p.eval(&(&t + &a)));
    }

    #[test]
    fn primitive_integer_form() {
        let p = UPoly::from_rationals(vec![crate::coeff::rat(1, 2), crate::coeff::rat(-3, 4)]);
        assert_eq!(p.primitive_int(), vec![BigInt::from(-2), BigInt::from(3)]);
    }
}
