//! Exact coefficients in ℚ or a single quadratic field ℚ(√D).
//!
//! A value is stored as `a + b·√d` with `a, b ∈ ℚ` and `d` a square-free
//! integer different from 1. Rational values always carry `b = 0, d = 1`, so
//! structural equality is field equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coeff {
    a: BigRational,
    b: BigRational,
    d: i64,
}

/// Largest square-free `f` and `s` with `n = s²·f`. Returns `(s, f)`.
pub fn squarefree_split(n: i64) -> (i64, i64) {
    assert!(n != 0, "square-free split of zero");
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut s: u64 = 1;
    let mut f: u64 = 1;
    let mut p: u64 = 2;
    // trial division is capped; a large leftover is checked for being a square
    while p * p <= m && p < 2_000_000 {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            f *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = (m as f64).sqrt().round() as u64;
    if r > 1 && r * r == m {
        s *= r;
    } else {
        f *= m;
    }
    (s as i64, sign * f as i64)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { a: BigRational::zero(), b: BigRational::zero(), d: 1 }
    }

    pub fn one() -> Self {
        Coeff::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Coeff::from_rational(BigRational::from_integer(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Coeff::from_rational(rat(n, d))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Coeff { a, b: BigRational::zero(), d: 1 }
    }

    /// `a + b·√d` for an arbitrary nonzero integer `d`; square factors of `d`
    /// are pulled into `b`.
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() {
            return Coeff::from_rational(a);
        }
        let (s, f) = squarefree_split(d);
        let b = b * BigRational::from_integer(BigInt::from(s));
        if f == 1 {
            Coeff::from_rational(a + b)
        } else {
            Coeff { a, b, d: f }
        }
    }

    /// `√n` for an integer `n`.
    pub fn sqrt_int(n: i64) -> Self {
        if n == 0 {
            return Coeff::zero();
        }
        Coeff::new(BigRational::zero(), BigRational::one(), n)
    }

    pub fn re(&self) -> &BigRational {
        &self.a
    }

    pub fn irr(&self) -> &BigRational {
        &self.b
    }

    /// Square-free radicand, or 1 for a rational value.
    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    /// True when the value is a real number (rational or `d > 0`).
    pub fn is_real(&self) -> bool {
        self.b.is_zero() || self.d > 0
    }

    /// Galois conjugate `a − b√d`. For `d < 0` this is complex conjugation.
    pub fn conj(&self) -> Self {
        Coeff { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    fn join(&self, other: &Coeff) -> i64 {
        match (self.d, other.d) {
            (1, d) | (d, 1) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("coefficients from different fields Q(sqrt({d})) and Q(sqrt({e}))"),
        }
    }

    /// Common radicand of two coefficients, or `None` if they live in
    /// different quadratic fields.
    pub fn common_field(d: i64, e: i64) -> Option<i64> {
        match (d, e) {
            (1, x) | (x, 1) => Some(x),
            (x, y) if x == y => Some(x),
            _ => None,
        }
    }

    fn make(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() {
            Coeff { a, b, d: 1 }
        } else {
            Coeff { a, b, d }
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero coefficient");
        if self.is_rational() {
            return Coeff::from_rational(self.a.recip());
        }
        let n = self.norm();
        Coeff::make(&self.a / &n, -(&self.b / &n), self.d)
    }

    /// Exact sign of a real value. `None` for non-real values.
    pub fn sign(&self) -> Option<Ordering> {
        let sa = self.a.cmp(&BigRational::zero());
        if self.b.is_zero() {
            return Some(sa);
        }
        if self.d < 0 {
            return None;
        }
        let sb = self.b.cmp(&BigRational::zero());
        if sa == Ordering::Equal {
            return Some(sb);
        }
        if sa == sb {
            return Some(sa);
        }
        // opposite signs: compare a² with d·b²
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        Some(match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        })
    }

    /// Exact comparison of two real values.
    pub fn cmp_real(&self, other: &Coeff) -> Option<Ordering> {
        (self - other).sign()
    }

    pub fn abs_real(&self) -> Self {
        match self.sign() {
            Some(Ordering::Less) => -self.clone(),
            _ => self.clone(),
        }
    }

    /// Real part and imaginary part as floats (the latter is zero for real
    /// values).
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            (a, 0.0)
        } else if self.d > 0 {
            (a + b * (self.d as f64).sqrt(), 0.0)
        } else {
            (a, b * ((-self.d) as f64).sqrt())
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_complex_f64().0
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Coeff::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Square root inside the same field, if one exists. Only rational
    /// inputs are handled: `√(p/q)` is returned in ℚ or in ℚ(√D).
    pub fn sqrt_rational(r: &BigRational) -> Option<Self> {
        if r.is_zero() {
            return Some(Coeff::zero());
        }
        let num = r.numer() * r.denom();
        let den = r.denom().clone();
        // √(p/q) = √(p q) / q
        let root = num.abs().sqrt();
        if &root * &root == num.abs() {
            let v = BigRational::new(root, den);
            return Some(if num.is_negative() {
                Coeff::new(BigRational::zero(), v, -1)
            } else {
                Coeff::from_rational(v)
            });
        }
        let n = num.to_i64()?;
        let (s, f) = squarefree_split(n);
        Some(Coeff::new(
            BigRational::zero(),
            BigRational::new(BigInt::from(s), den),
            f,
        ))
    }

    /// Integer multiple used for scaling to integer coefficients.
    pub fn denominators_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }
}

impl From<BigRational> for Coeff {
    fn from(r: BigRational) -> Self {
        Coeff::from_rational(r)
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::from_int(n)
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        if o.b.is_zero() && self.b.is_zero() {
            return Coeff::from_rational(&self.a + &o.a);
        }
        let d = self.join(o);
        Coeff::make(&self.a + &o.a, &self.b + &o.b, d)
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        if o.b.is_zero() && self.b.is_zero() {
            return Coeff::from_rational(&self.a - &o.a);
        }
        let d = self.join(o);
        Coeff::make(&self.a - &o.a, &self.b - &o.b, d)
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        if o.b.is_zero() {
            return Coeff::make(&self.a * &o.a, &self.b * &o.a, self.d);
        }
        if self.b.is_zero() {
            return Coeff::make(&self.a * &o.a, &self.a * &o.b, o.d);
        }
        let d = self.join(o);
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &o.a + &self.b * &o.b * dd;
        let b = &self.a * &o.b + &self.b * &o.a;
        Coeff::make(a, b, d)
    }
}

impl<'a> Div<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn div(self, o: &Coeff) -> Coeff {
        if o.b.is_zero() {
            assert!(!o.a.is_zero(), "division by zero coefficient");
            return Coeff::make(&self.a / &o.a, &self.b / &o.a, self.d);
        }
        self * &o.inv()
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, o: Coeff) -> Coeff {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, o: &Coeff) -> Coeff {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -(self.clone())
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coeff {
    /// Human-readable form: `3/2`, `sqrt(3)`, `1/2 + 3/2*sqrt(-3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let irr = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if (-self.b.clone()).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", fmt_rat(&self.b), self.d)
        };
        if self.a.is_zero() {
            write!(f, "{irr}")
        } else if irr.starts_with('-') {
            write!(f, "{} - {}", fmt_rat(&self.a), &irr[1..])
        } else {
            write!(f, "{} + {}", fmt_rat(&self.a), irr)
        }
    }
}

impl serde::Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
