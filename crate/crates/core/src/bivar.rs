//! Bivariate helpers: gcd over K[x][y] by primitive remainder sequences and
//! resultants by evaluation and interpolation.
//!
//! A bivariate polynomial here is a [`Polynomial`] with exactly two
//! variables `(x, y)`; the second one is the main variable.

use crate::coeff::Coeff;
use crate::poly::Polynomial;
use crate::upoly::UPoly;

/// Coefficients in `y`, each a polynomial in `x`.
type YPoly = Vec<UPoly>;

fn to_ypoly(f: &Polynomial) -> YPoly {
    assert_eq!(f.nvars(), 2, "bivariate polynomial expected");
    let dy = f.degree_in(1) as usize;
    let dx = f.degree_in(0) as usize;
    let mut rows = vec![vec![Coeff::zero(); dx + 1]; dy + 1];
    for (e, c) in f.terms() {
        rows[e[1] as usize][e[0] as usize] = c.clone();
    }
    let mut out: YPoly = rows.into_iter().map(UPoly::new).collect();
    trim(&mut out);
    out
}

fn from_ypoly(p: &YPoly, vars: &[String]) -> Polynomial {
    let mut out = Polynomial::zero_in(vars.to_vec());
    for (j, row) in p.iter().enumerate() {
        for (i, c) in row.coeffs().iter().enumerate() {
            out.add_term(vec![i as u32, j as u32], c.clone());
        }
    }
    out
}

fn trim(p: &mut YPoly) {
    while p.last().map_or(false, |u| u.is_zero()) {
        p.pop();
    }
}

fn ydeg(p: &YPoly) -> isize {
    p.len() as isize - 1
}

fn content(p: &YPoly) -> UPoly {
    p.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

fn divide_content(p: &YPoly, c: &UPoly) -> YPoly {
    p.iter().map(|u| u.div_exact(c).expect("content divides")).collect()
}

fn primitive(p: &YPoly) -> YPoly {
    let c = content(p);
    if c.is_zero() {
        return p.clone();
    }
    divide_content(p, &c)
}

/// Pseudo-remainder of `a` by `b` in K[x][y].
fn prem(a: &YPoly, b: &YPoly) -> YPoly {
    let mut r = a.clone();
    let db = ydeg(b);
    let lb = b.last().unwrap().clone();
    while ydeg(&r) >= db {
        let dr = ydeg(&r);
        let lr = r.last().unwrap().clone();
        let shift = (dr - db) as usize;
        // r ← lb·r − lr·y^shift·b
        let mut next: YPoly = r.iter().map(|c| c.mul(&lb)).collect();
        for (j, c) in b.iter().enumerate() {
            next[j + shift] = next[j + shift].sub(&c.mul(&lr));
        }
        trim(&mut next);
        r = next;
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Greatest common divisor over K[x, y], normalized to a monic content and
/// a primitive part. The zero polynomial is returned when both inputs are
/// zero.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let vars = f.vars().to_vec();
    let g = g.with_vars(&vars).expect("same variables");
    let a = to_ypoly(f);
    let b = to_ypoly(&g);
    if a.is_empty() {
        return from_ypoly(&b, &vars);
    }
    if b.is_empty() {
        return from_ypoly(&a, &vars);
    }
    let ca = content(&a);
    let cb = content(&b);
    let c = ca.gcd(&cb);
    let mut a = divide_content(&a, &ca);
    let mut b = divide_content(&b, &cb);
    if ydeg(&a) < ydeg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let pp = loop {
        if ydeg(&b) == 0 {
            break vec![UPoly::one()];
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            break b;
        }
        a = b;
        b = primitive(&r);
    };
    // normalize: make leading coefficient of the leading y-coefficient one
    let lead = pp.last().unwrap().lc();
    let pp: YPoly = pp.iter().map(|u| u.scale(&lead.inv())).collect();
    let out: YPoly = pp.iter().map(|u| u.mul(&c)).collect();
    from_ypoly(&out, &vars)
}

/// `gcd(f, ∂f/∂x, ∂f/∂y)`: nonconstant exactly when `f` has a repeated
/// factor.
pub fn repeated_part(f: &Polynomial) -> Polynomial {
    let g = gcd(f, &f.derivative(0));
    gcd(&g, &f.derivative(1))
}

/// Exact quotient `f / g` in K[x, y], or `None` when `g` does not divide `f`.
pub fn div_exact(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let vars = f.vars().to_vec();
    let g = g.with_vars(&vars).ok()?;
    let mut r = to_ypoly(f);
    let b = to_ypoly(&g);
    if b.is_empty() {
        return None;
    }
    let db = ydeg(&b) as usize;
    let lb = b.last().unwrap().clone();
    let mut q: YPoly = vec![UPoly::zero(); r.len().saturating_sub(db).max(1)];
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap().div_exact(&lb)?;
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] = r[j + shift].sub(&bj.mul(&c));
        }
        q[shift] = c;
        trim(&mut r);
    }
    if !r.is_empty() {
        return None;
    }
    trim(&mut q);
    Some(from_ypoly(&q, &vars))
}

fn det(mut m: Vec<Vec<Coeff>>) -> Coeff {
    let n = m.len();
    let mut acc = Coeff::one();
    for col in 0..n {
        let piv = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return Coeff::zero(),
        };
        if piv != col {
            m.swap(piv, col);
            acc = -acc;
        }
        let p = m[col][col].clone();
        acc = &acc * &p;
        let pinv = p.inv();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &pinv;
            for c in col..n {
                let v = &m[r][c] - &(&f * &m[col][c]);
                m[r][c] = v;
            }
        }
    }
    acc
}

/// Sylvester resultant of two univariate polynomials given with formal
/// degrees (leading entries may vanish).
pub fn sylvester(f: &[Coeff], g: &[Coeff]) -> Coeff {
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    if size == 0 {
        return Coeff::one();
    }
    let mut mat = vec![vec![Coeff::zero(); size]; size];
    for r in 0..m {
        for (k, c) in f.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..n {
        for (k, c) in g.iter().rev().enumerate() {
            mat[m + r][r + k] = c.clone();
        }
    }
    det(mat)
}

/// Newton interpolation through `(x_i, v_i)` with distinct `x_i`.
pub fn interpolate(xs: &[Coeff], vs: &[Coeff]) -> UPoly {
    let n = xs.len();
    let mut dd: Vec<Coeff> = vs.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = &(&dd[i] - &dd[i - 1]) / &(&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = p.mul(&UPoly::linear_root(&xs[i])).add(&UPoly::constant(dd[i].clone()));
    }
    p
}

/// `Res_y(f, g)` as a polynomial in `x`, where `y` is the variable at index
/// `elim` (0 or 1) of the two bivariate inputs.
pub fn resultant(f: &Polynomial, g: &Polynomial, elim: usize) -> UPoly {
    let vars = f.vars().to_vec();
    let g = g.with_vars(&vars).expect("same variables");
    let (f, g) = if elim == 1 { (f.clone(), g) } else { (swap(f), swap(&g)) };
    let a = to_ypoly(&f);
    let b = to_ypoly(&g);
    if a.is_empty() || b.is_empty() {
        return UPoly::zero();
    }
    let n = ydeg(&a) as usize;
    let m = ydeg(&b) as usize;
    let dxa = a.iter().map(|u| u.deg().max(0) as usize).max().unwrap();
    let dxb = b.iter().map(|u| u.deg().max(0) as usize).max().unwrap();
    let total = f.degree().unwrap() as usize * g.degree().unwrap() as usize;
    let bound = (m * dxa + n * dxb).min(total);
    let xs: Vec<Coeff> = (0..=bound).map(|i| Coeff::from_int(i as i64)).collect();
    let vs: Vec<Coeff> = xs
        .iter()
        .map(|x| {
            let fa: Vec<Coeff> = a.iter().map(|u| u.eval(x)).collect();
            let gb: Vec<Coeff> = b.iter().map(|u| u.eval(x)).collect();
            sylvester(&fa, &gb)
        })
        .collect();
    interpolate(&xs, &vs)
}

/// Exchange the two variables of a bivariate polynomial (names follow).
pub fn swap(f: &Polynomial) -> Polynomial {
    let vars = vec![f.vars()[1].clone(), f.vars()[0].clone()];
    Polynomial::from_terms(vars, f.terms().iter().map(|(e, c)| (vec![e[1], e[0]], c.clone())))
}

/// The univariate polynomial `f(x0, y)` (in the second variable).
pub fn fibre(f: &Polynomial, x0: &Coeff) -> UPoly {
    let mut c = vec![Coeff::zero(); f.degree_in(1) as usize + 1];
    let mut pw: Vec<Coeff> = vec![Coeff::one()];
    for (e, v) in f.terms() {
        while pw.len() <= e[0] as usize {
            let next = pw.last().unwrap() * x0;
            pw.push(next);
        }
        let k = e[1] as usize;
        c[k] = &c[k] + &(v * &pw[e[0] as usize]);
    }
    UPoly::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    const V: &[&str] = &["x", "y"];

    fn p(s: &str) -> Polynomial {
        parse(s, V).unwrap()
    }

    #[test]
    fn gcd_finds_common_factor() {
        let a = p("x*y - 1");
        let f = a.mul(&p("x + y^2"));
        let g = a.mul(&p("x - y + 3"));
        let h = gcd(&f, &g);
        assert_eq!(h, a);
        assert!(gcd(&p("x^2 + y^2"), &p("x - y")).is_constant());
    }

    #[test]
    fn gcd_with_content() {
        let f = p("x^2*y + x^2");
        let g = p("x*y + x");
        assert_eq!(gcd(&f, &g), p("x*y + x"));
    }

    #[test]
    fn exact_division() {
        let a = p("x^2 + y^2 - 1");
        let b = p("x*y + 3*x - y");
        assert_eq!(div_exact(&a.mul(&b), &b), Some(a.clone()));
        assert_eq!(div_exact(&a, &b), None);
        assert_eq!(div_exact(&p("2*x^2"), &p("x")), Some(p("2*x")));
    }

    #[test]
    fn repeated_factor_detection() {
        let f = p("x^2 + y^2 - 1").pow(2).mul(&p("x - y"));
        assert_eq!(repeated_part(&f), p("x^2 + y^2 - 1"));
        assert!(repeated_part(&p("y^2 - x^3")).is_constant());
    }

    #[test]
    fn resultant_examples() {
        // Res_y(y - x^2, y) = -x^2 up to sign
        let r = resultant(&p("y - x^2"), &p("y"), 1);
        assert_eq!(r.order_at_zero(), Some(2));
        assert_eq!(r.deg(), 2);
        // circle and line: Res_y(x^2 + y^2 - 1, y - x) = 2x^2 - 1
        let r = resultant(&p("x^2 + y^2 - 1"), &p("y - x"), 1);
        assert_eq!(r.monic(), UPoly::from_rationals(vec![crate::coeff::rat(-1, 2), crate::coeff::rat(0, 1), crate::coeff::rat(1, 1)]));
        // eliminating x instead
        let r = resultant(&p("x - y^2"), &p("x - 1"), 0);
        assert_eq!(r.monic(), UPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let q = UPoly::from_ints(&[3, -1, 0, 2]);
        let xs: Vec<Coeff> = (0..4).map(Coeff::from_int).collect();
        let vs: Vec<Coeff> = xs.iter().map(|x| q.eval(x)).collect();
        assert_eq!(interpolate(&xs, &vs), q);
    }
}
