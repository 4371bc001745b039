//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms live in a `BTreeMap` from exponent vector to nonzero [`Coeff`].
//! Operands with different variable lists are aligned by name: the left
//! operand's variables come first, unseen names of the right operand are
//! appended in their original order.

mod parse;
mod point;

pub use parse::{parse, parse_auto, parse_poly_file, ParseError, PolyFile};
pub use point::{PointError, ProjectivePoint};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::coeff::Coeff;

pub type Exponent = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("homogenize: target degree {target} is below the polynomial degree {degree}")]
    DegreeTooLow { target: u32, degree: u32 },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` already present")]
    DuplicateVariable(String),
    #[error("variable `{0}` is used but missing from the target list")]
    MissingVariable(String),
    #[error("coefficients from incompatible quadratic fields")]
    MixedFields,
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, Coeff>,
}

/// Graded-lex order, largest first: total degree descending, then
/// exponent vectors compared lexicographically descending.
pub fn grlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

impl Polynomial {
    pub fn zero(vars: &[&str]) -> Self {
        Polynomial { vars: names(vars), terms: BTreeMap::new() }
    }

    pub fn zero_in(vars: Vec<String>) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant_in(vars: Vec<String>, c: Coeff) -> Self {
        let n = vars.len();
        let mut p = Polynomial::zero_in(vars);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn constant(vars: &[&str], c: Coeff) -> Self {
        Polynomial::constant_in(names(vars), c)
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &[&str], name: &str) -> Self {
        Polynomial::var_in(names(vars), name).expect("variable not in list")
    }

    pub fn var_in(vars: Vec<String>, name: &str) -> Result<Self, PolyError> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Polynomial::zero_in(vars);
        p.add_term(e, Coeff::one());
        Ok(p)
    }

    pub fn monomial_in(vars: Vec<String>, exp: Exponent, c: Coeff) -> Self {
        assert_eq!(exp.len(), vars.len());
        let mut p = Polynomial::zero_in(vars);
        p.add_term(exp, c);
        p
    }

    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Coeff)>,
    {
        let mut p = Polynomial::zero_in(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Accumulate `c·x^e`, dropping the entry if it cancels.
    pub fn add_term(&mut self, e: Exponent, c: Coeff) {
        assert_eq!(e.len(), self.vars.len(), "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Coeff> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Coeff {
        self.terms.get(e).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&vec![0; self.nvars()])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Every exponent vector has only even entries.
    pub fn is_even_form(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|x| x % 2 == 0))
    }

    /// The radicand of the quadratic field holding all coefficients (1 for ℚ).
    pub fn radicand(&self) -> i64 {
        self.try_radicand().expect("polynomial mixes quadratic fields")
    }

    pub fn try_radicand(&self) -> Result<i64, PolyError> {
        let mut d = 1;
        for c in self.terms.values() {
            d = Coeff::common_field(d, c.radicand()).ok_or(PolyError::MixedFields)?;
        }
        Ok(d)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    /// Rewrite over the variable list `vars`, which must contain every
    /// variable that occurs with a positive exponent.
    pub fn with_vars(&self, vars: &[String]) -> Result<Polynomial, PolyError> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.terms.keys().any(|e| e[i] > 0) {
                        return Err(PolyError::MissingVariable(v.clone()));
                    }
                    map.push(None);
                }
            }
        }
        let mut out = Polynomial::zero_in(vars.to_vec());
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] = x;
                }
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    /// Union of variable lists: ours first, then the unseen ones of `other`.
    pub fn union_vars(&self, other: &Polynomial) -> Vec<String> {
        let mut v = self.vars.clone();
        for w in &other.vars {
            if !v.contains(w) {
                v.push(w.clone());
            }
        }
        v
    }

    fn aligned(&self, other: &Polynomial) -> (Polynomial, Polynomial) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let u = self.union_vars(other);
        (
            self.with_vars(&u).expect("union contains all variables"),
            other.with_vars(&u).expect("union contains all variables"),
        )
    }

    /// Drop variables that do not occur in any term.
    pub fn drop_unused_vars(&self) -> Polynomial {
        let keep: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect();
        self.with_vars(&keep).expect("only unused variables dropped")
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (mut a, b) = self.aligned(other);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let (mut a, b) = self.aligned(other);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = self.aligned(other);
        let mut out = Polynomial::zero_in(a.vars.clone());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero_in(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiply by the monomial `x^e`.
    pub fn shift(&self, e: &[u32]) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (f.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Exponent, &Coeff)> {
        self.terms.iter().min_by(|a, b| grlex_desc(a.0, b.0))
    }

    /// Exact quotient `self / g` when `g` divides `self`, by long division in
    /// graded-lex order (with a single divisor the remainder is zero exactly
    /// when `g` divides).
    pub fn div_exact(&self, g: &Polynomial) -> Option<Polynomial> {
        let (mut r, g) = self.aligned(g);
        let (ge, gc) = {
            let (e, c) = g.leading_term()?;
            (e.clone(), c.inv())
        };
        let mut q = Polynomial::zero_in(r.vars.clone());
        while let Some((re, rc)) = r.leading_term() {
            if re.iter().zip(&ge).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exponent = re.iter().zip(&ge).map(|(a, b)| a - b).collect();
            let c = rc * &gc;
            r = r.sub(&g.shift(&e).scale(&c));
            q.add_term(e, c);
        }
        Some(q)
    }

    /// `p^k` by repeated squaring.
    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant_in(self.vars.clone(), Coeff::one());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn map_coeffs<F: Fn(&Coeff) -> Coeff>(&self, f: F) -> Polynomial {
        Polynomial::from_terms(
            self.vars.clone(),
            self.terms.iter().map(|(e, c)| (e.clone(), f(c))),
        )
    }

    /// Apply the Galois conjugation to every coefficient.
    pub fn conj(&self) -> Polynomial {
        self.map_coeffs(|c| c.conj())
    }

    /// Substitute polynomials for variables given by name. Variables without
    /// an image are kept. The result's variables are those of the images in
    /// order of first appearance (kept variables included).
    pub fn substitute(&self, assignment: &BTreeMap<String, Polynomial>) -> Polynomial {
        let mut vars: Vec<String> = Vec::new();
        let push = |v: &String, vars: &mut Vec<String>| {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        };
        for v in &self.vars {
            match assignment.get(v) {
                Some(img) => img.vars.iter().for_each(|w| push(w, &mut vars)),
                None => push(v, &mut vars),
            }
        }
        let images: Vec<Polynomial> = self
            .vars
            .iter()
            .map(|v| match assignment.get(v) {
                Some(img) => img.with_vars(&vars).expect("image variables collected"),
                None => Polynomial::var_in(vars.clone(), v).expect("kept variable collected"),
            })
            .collect();
        self.compose(&images, &vars)
    }

    /// Substitute `images[i]` for variable `i`; all images share `vars`.
    pub fn compose(&self, images: &[Polynomial], vars: &[String]) -> Polynomial {
        assert_eq!(images.len(), self.nvars());
        let mut cache: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::constant_in(vars.to_vec(), Coeff::one()), p.clone()])
            .collect();
        let mut out = Polynomial::zero_in(vars.to_vec());
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant_in(vars.to_vec(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][k as usize]);
            }
            for (te, tc) in t.terms {
                out.add_term(te, tc);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.nvars());
        let mut pows: Vec<Vec<Coeff>> = point.iter().map(|c| vec![Coeff::one(), c.clone()]).collect();
        let mut acc = Coeff::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while pows[i].len() <= k as usize {
                    let next = pows[i].last().unwrap() * &point[i];
                    pows[i].push(next);
                }
                t = &t * &pows[i][k as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64();
                for (i, &k) in e.iter().enumerate() {
                    t *= point[i].powi(k as i32);
                }
                t
            })
            .sum()
    }

    /// Substitute values for some variables (by index) and drop them.
    pub fn partial_eval(&self, assign: &[(usize, Coeff)]) -> Polynomial {
        let drop: Vec<usize> = assign.iter().map(|(i, _)| *i).collect();
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        let mut out = Polynomial::zero_in(vars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in assign {
                t = &t * &v.pow(e[*i]);
            }
            let ne: Exponent = e
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, &x)| x)
                .collect();
            out.add_term(ne, t);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero_in(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c * &Coeff::from_int(e[i] as i64));
        }
        out
    }

    pub fn derivative_by(&self, name: &str) -> Result<Polynomial, PolyError> {
        let i = self.var_index(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(self.derivative(i))
    }

    /// Set `var` to 1 and remove it from the variable list.
    pub fn dehomogenize(&self, var: &str) -> Result<Polynomial, PolyError> {
        let i = self.var_index(var).ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(self.partial_eval(&[(i, Coeff::one())]))
    }

    /// Multiply each term by `new_var^(d − deg term)`; `new_var` is appended.
    pub fn homogenize(&self, new_var: &str, d: u32) -> Result<Polynomial, PolyError> {
        if self.var_index(new_var).is_some() {
            return Err(PolyError::DuplicateVariable(new_var.to_string()));
        }
        if let Some(deg) = self.degree() {
            if deg > d {
                return Err(PolyError::DegreeTooLow { target: d, degree: deg });
            }
        }
        let mut vars = self.vars.clone();
        vars.push(new_var.to_string());
        let mut out = Polynomial::zero_in(vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.push(d - e.iter().sum::<u32>());
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    /// Homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `p(x + c)`: move `point` to the origin.
    pub fn translate(&self, point: &[Coeff]) -> Polynomial {
        assert_eq!(point.len(), self.nvars());
        if point.iter().all(|c| c.is_zero()) {
            return self.clone();
        }
        let images: Vec<Polynomial> = self
            .vars
            .iter()
            .zip(point)
            .map(|(v, c)| {
                let x = Polynomial::var_in(self.vars.clone(), v).unwrap();
                x.add(&Polynomial::constant_in(self.vars.clone(), c.clone()))
            })
            .collect();
        self.compose(&images, &self.vars.clone())
    }

    /// Multiplicity at an affine point and the tangent cone (lowest
    /// homogeneous part after translating the point to the origin).
    /// For `p(point) ≠ 0` this is `(0, p(point))`.
    pub fn multiplicity_at(&self, point: &[Coeff]) -> (u32, Polynomial) {
        let t = self.translate(point);
        match t.order() {
            None => (0, t),
            Some(m) => {
                let tc = t.homogeneous_part(m);
                (m, tc)
            }
        }
    }

    /// Multiply through by the lcm of denominators so that all rational
    /// parts become integers, then divide by the content. Only meaningful
    /// for rational polynomials; returns the scale factor used.
    pub fn primitive_integer(&self) -> (Polynomial, BigRational) {
        assert!(self.is_rational());
        if self.is_zero() {
            return (self.clone(), BigRational::one());
        }
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = num_integer::lcm(l, c.re().denom().clone());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.re().numer() * (&l / c.re().denom());
            g = num_integer::gcd(g, n);
        }
        let lead_neg = self
            .terms
            .iter()
            .max_by(|a, b| grlex_desc(b.0, a.0))
            .map(|(_, c)| c.sign() == Some(Ordering::Less))
            .unwrap_or(false);
        if lead_neg {
            g = -g;
        }
        let s = BigRational::new(l, g);
        (self.scale(&Coeff::from_rational(s.clone())), s)
    }

    /// Terms in canonical printing order.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }

    /// Canonical monomial text such as `X1^2*X3`.
    pub fn monomial_string(vars: &[String], e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], k) })
            .collect();
        parts.join("*")
    }
}

impl PartialEq for Polynomial {
    /// Equality as polynomials: variable lists are aligned by name first.
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        self.sub(other).is_zero()
    }
}

fn rat_str(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            let mono = Polynomial::monomial_string(&self.vars, e);
            let mut pieces: Vec<(bool, String)> = Vec::new();
            if !c.re().is_zero() {
                let r = c.re();
                let neg = r < &BigRational::zero();
                let mag = if neg { -r.clone() } else { r.clone() };
                let body = match (mag.is_one(), mono.is_empty()) {
                    (true, false) => mono.clone(),
                    (_, true) => rat_str(&mag),
                    (false, false) => format!("{}*{}", rat_str(&mag), mono),
                };
                pieces.push((neg, body));
            }
            if !c.irr().is_zero() {
                let r = c.irr();
                let neg = r < &BigRational::zero();
                let mag = if neg { -r.clone() } else { r.clone() };
                let s = format!("sqrt({})", c.radicand());
                let scaled = if mag.is_one() { s } else { format!("{}*{}", rat_str(&mag), s) };
                let body = if mono.is_empty() { scaled } else { format!("{scaled}*{mono}") };
                pieces.push((neg, body));
            }
            for (neg, body) in pieces {
                match (first, neg) {
                    (true, false) => write!(f, "{body}")?,
                    (true, true) => write!(f, "-{body}")?,
                    (false, false) => write!(f, " + {body}")?,
                    (false, true) => write!(f, " - {body}")?,
                }
                first = false;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Polynomial", 2)?;
        st.serialize_field("vars", &self.vars)?;
        st.serialize_field("expr", &self.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, v: &[&str]) -> Polynomial {
        parse(s, v).unwrap()
    }

    const XYZ: &[&str] = &["X1", "X2", "X3"];

    #[test]
    fn canonical_print_order() {
        let m = p("X3^6 + X1^2*X2^4 - 3*X1^2*X2^2*X3^2 + X1^4*X2^2", XYZ);
        assert_eq!(m.to_string(), "X1^4*X2^2 + X1^2*X2^4 - 3*X1^2*X2^2*X3^2 + X3^6");
    }

    #[test]
    fn power_and_product() {
        let x = p("x^2 - 1", &["x"]);
        assert_eq!(x.pow(2), p("x^4 - 2*x^2 + 1", &["x"]));
        assert_eq!(p("X1", XYZ).mul(&p("X1", XYZ)), p("X1^2", XYZ));
        let m = p("X1^4*X2^2 + X1^2*X2^4 + X3^6 - 3*X1^2*X2^2*X3^2", XYZ);
        assert_eq!(m.pow(1), m);
        assert_eq!(m.pow(0), Polynomial::constant(XYZ, Coeff::one()));
    }

    #[test]
    fn exact_division() {
        let l = p("X1^2 - X2^2 + X3^2", XYZ);
        let q = p("X1*X2 - 3/2*X3^2 + X2", XYZ);
        assert_eq!(l.mul(&q).div_exact(&l), Some(q.clone()));
        assert_eq!(l.pow(3).div_exact(&l.pow(2)), Some(l.clone()));
        assert_eq!(l.mul(&q).add(&p("X1", XYZ)).div_exact(&l), None);
        assert_eq!(q.div_exact(&Polynomial::zero(XYZ)), None);
    }

    #[test]
    fn alignment_by_name() {
        let a = p("x + 1", &["x"]);
        let b = p("y", &["y"]);
        let s = a.add(&b);
        assert_eq!(s.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(s, p("x + y + 1", &["x", "y"]));
        assert_eq!(b.mul(&a).vars(), &["y".to_string(), "x".to_string()]);
    }

    #[test]
    fn homogenize_roundtrip() {
        let q = p("x^2 + 1", &["x"]);
        assert_eq!(q.homogenize("z", 2).unwrap(), p("x^2 + z^2", &["x", "z"]));
        assert!(matches!(q.homogenize("z", 1), Err(PolyError::DegreeTooLow { .. })));
        let m = p("X1^4*X2^2 + X1^2*X2^4 + X3^6 - 3*X1^2*X2^2*X3^2", XYZ);
        let dm = m.dehomogenize("X3").unwrap();
        assert_eq!(dm, p("X1^4*X2^2 + X1^2*X2^4 + 1 - 3*X1^2*X2^2", &["X1", "X2"]));
        assert_eq!(dm.homogenize("X3", 6).unwrap(), m);
    }

    #[test]
    fn multiplicity_and_tangent_cone() {
        // Motzkin in the X1 = 1 chart
        let q = p("y^2 + y^4 + z^6 - 3*y^2*z^2", &["y", "z"]);
        let (m, tc) = q.multiplicity_at(&[Coeff::zero(), Coeff::zero()]);
        assert_eq!(m, 2);
        assert_eq!(tc, p("y^2", &["y", "z"]));
        let (m0, _) = q.multiplicity_at(&[Coeff::one(), Coeff::zero()]);
        assert_eq!(m0, 0);
        // translation: (x-1)^2 + (y-2)^3 at (1,2)
        let r = p("x^2 - 2*x + 1 + y^3 - 6*y^2 + 12*y - 8", &["x", "y"]);
        let (m, tc) = r.multiplicity_at(&[Coeff::from_int(1), Coeff::from_int(2)]);
        assert_eq!(m, 2);
        assert_eq!(tc, p("x^2", &["x", "y"]));
    }

    #[test]
    fn substitution_keeps_unmapped() {
        let f = p("x*y + z", &["x", "y", "z"]);
        let mut a = BTreeMap::new();
        a.insert("z".to_string(), p("x^2", &["x"]));
        assert_eq!(f.substitute(&a), p("x*y + x^2", &["x", "y"]));
    }

    #[test]
    fn derivative_and_eval() {
        let f = p("x^3*y + 2*y^2", &["x", "y"]);
        assert_eq!(f.derivative(0), p("3*x^2*y", &["x", "y"]));
        assert_eq!(f.eval(&[Coeff::from_int(2), Coeff::from_int(3)]), Coeff::from_int(42));
        assert!((f.eval_f64(&[2.0, 3.0]) - 42.0).abs() < 1e-12);
    }

    #[test]
    fn irrational_printing_roundtrip() {
        let f = p("3/2*sqrt(3)*x^2 + x - sqrt(3) + 1/2", &["x"]);
        let s = f.to_string();
        assert_eq!(s, "3/2*sqrt(3)*x^2 + x + 1/2 - sqrt(3)");
        assert_eq!(parse(&s, &["x"]).unwrap(), f);
    }

    #[test]
    fn primitive_integer_scaling() {
        let f = p("-1/2*x^2 + 3/4", &["x"]);
        let (g, s) = f.primitive_integer();
        assert_eq!(g, p("2*x^2 - 3", &["x"]));
        assert_eq!(s, crate::coeff::rat(-4, 1));
    }
}
