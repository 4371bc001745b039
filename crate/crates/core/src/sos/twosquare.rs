//! F = w·(G² + H²) for strictly positive binary forms, from the complex
//! roots of F(t, 1) taken one per conjugate pair.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{max_abs_coeff, rat_from_f64, SosCertificate, SosError, WeightedSquare};
use crate::coeff::Coeff;
use crate::numroots::complex_roots;
use crate::poly::Polynomial;
use crate::realroots::{dehomogenize_binary, ser_rat, strictly_positive};

#[derive(Debug, Clone, Serialize)]
pub struct TwoSquares {
    /// Leading coefficient of F(t, 1); G + iH is monic in the first variable.
    #[serde(serialize_with = "ser_rat")]
    pub weight: BigRational,
    pub g: Polynomial,
    pub h: Polynomial,
    /// Max absolute coefficient of F − w·(G² + H²), computed exactly.
    pub residual: f64,
}

impl TwoSquares {
    pub fn certificate(&self) -> SosCertificate {
        let vars = self.g.vars().to_vec();
        let squares = [&self.g, &self.h]
            .into_iter()
            .filter(|b| !b.is_zero())
            .map(|b| WeightedSquare { weight: self.weight.clone(), base: b.clone() })
            .collect();
        SosCertificate {
            vars,
            squares,
            exact: self.residual == 0.0,
            residual: rat_from_f64(self.residual),
        }
    }
}

pub fn two_square_decomposition(f: &Polynomial) -> Result<TwoSquares, SosError> {
    if !f.is_rational() {
        return Err(SosError::Irrational);
    }
    let (u, deficit) =
        dehomogenize_binary(f).map_err(|e| SosError::NotPositive(e.to_string()))?;
    if deficit > 0 || u.deg() % 2 != 0 || !strictly_positive(&u) {
        return Err(SosError::NotPositive(format!("{f} has a real zero")));
    }
    let r = (u.deg() / 2) as usize;
    let lc = u.lc().as_rational().cloned().expect("rational");
    let monic: Vec<f64> = u
        .coeffs()
        .iter()
        .map(|c| (c.as_rational().unwrap() / &lc).to_f64().unwrap_or(f64::NAN))
        .collect();
    let mut upper: Vec<Complex64> = complex_roots(&monic).into_iter().filter(|z| z.im > 0.0).collect();
    if upper.len() != r {
        return Err(SosError::NotPositive(format!(
            "found {} roots in the upper half plane, expected {r}",
            upper.len()
        )));
    }
    upper.sort_by(|a, b| a.re.total_cmp(&b.re));
    // Π (t − z_k), low degree first.
    let mut prod = vec![Complex64::new(1.0, 0.0)];
    for z in &upper {
        let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
        for (k, c) in prod.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * z;
        }
        prod = next;
    }
    let vars = f.vars().to_vec();
    let form = |part: &dyn Fn(&Complex64) -> f64| {
        Polynomial::from_terms(
            vars.clone(),
            prod.iter().enumerate().map(|(k, c)| {
                (vec![k as u32, (r - k) as u32], Coeff::from_rational(rat_from_f64(part(c))))
            }),
        )
    };
    let g = form(&|c| c.re);
    // The leading coefficient of the imaginary part is exactly zero.
    let h = form(&|c| c.im);
    let w = Polynomial::constant_in(vars.clone(), Coeff::from_rational(lc.clone()));
    let diff = f.sub(&w.mul(&g.mul(&g).add(&h.mul(&h))));
    let residual = max_abs_coeff(&diff);
    Ok(TwoSquares {
        weight: lc,
        g,
        h,
        residual: if residual.is_zero() { 0.0 } else { residual.to_f64().unwrap_or(f64::INFINITY) },
    })
}

/// F_{n,r}(t1, t2) = Σ_{i≤r} C(n,i) t1^i t2^{r−i}.
pub fn truncated_binomial_form(n: u32, r: u32, vars: &[String]) -> Polynomial {
    let u = crate::realroots::truncated_binomial_upoly(n, r);
    crate::realroots::homogenize_binary(&u, 0, vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn tv() -> Vec<String> {
        vec!["t1".into(), "t2".into()]
    }

    #[test]
    fn circle() {
        let f = parse("t1^2 + t2^2", &["t1", "t2"]).unwrap();
        let d = two_square_decomposition(&f).unwrap();
        assert_eq!(d.residual, 0.0);
        assert_eq!(d.g, parse("t1", &["t1", "t2"]).unwrap());
        assert_eq!(d.h.scale(&Coeff::from_int(-1)), parse("t2", &["t1", "t2"]).unwrap());
    }

    #[test]
    fn truncated_binomials() {
        let f32 = truncated_binomial_form(3, 2, &tv());
        assert_eq!(f32, parse("3*t1^2 + 3*t1*t2 + t2^2", &["t1", "t2"]).unwrap());
        assert!(two_square_decomposition(&f32).unwrap().residual < 1e-10);
        let f = truncated_binomial_form(5, 4, &tv());
        assert!(two_square_decomposition(&f).unwrap().residual < 1e-8);
    }

    #[test]
    fn rejects_real_roots() {
        let f = parse("t1^2 - t2^2", &["t1", "t2"]).unwrap();
        assert!(matches!(two_square_decomposition(&f), Err(SosError::NotPositive(_))));
        let f = parse("t1*t2 + t2^2", &["t1", "t2"]).unwrap();
        assert!(two_square_decomposition(&f).is_err());
    }
}
