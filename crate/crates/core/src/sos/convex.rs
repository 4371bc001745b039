//! Certificates for (P1 + P2)^(k1+k2−1) from certificates of P1^k1 and P2^k2.
//!
//! Splitting the binomial expansion at i = k1 gives
//! (P1+P2)^K = P2^k2 · F_{K,k1−1}(P1, P2) + P1^k1 · F_{K,k2−1}(P2, P1)
//! with K = k1 + k2 − 1, and both truncated binomial forms are strictly
//! positive, hence sums of two squares.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::twosquare::{truncated_binomial_form, two_square_decomposition, TwoSquares};
use super::{sos_decompose, verify_certificate, SdpTolerances, SosCertificate, SosError, WeightedSquare};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Serialize)]
pub struct ConvexSum {
    pub power: u32,
    pub first: TwoSquares,
    pub second: TwoSquares,
    pub certificate: SosCertificate,
    pub residual: f64,
}

fn certificate_for(p: &Polynomial, k: u32, given: Option<SosCertificate>, tol: &SdpTolerances) -> Result<SosCertificate, SosError> {
    match given {
        Some(c) => Ok(c),
        None => Ok(sos_decompose(&p.pow(k), tol)?.certificate),
    }
}

/// Multiply every square of `cert` by the squares w·G², w·H² of `ts`
/// evaluated at (a, b).
fn distribute(cert: &SosCertificate, ts: &TwoSquares, a: &Polynomial, b: &Polynomial, out: &mut Vec<WeightedSquare>) {
    let vars = a.vars().to_vec();
    let images = [a.clone(), b.clone()];
    for part in [&ts.g, &ts.h] {
        if part.is_zero() {
            continue;
        }
        let q = part.compose(&images, &vars);
        for s in &cert.squares {
            out.push(WeightedSquare { weight: &s.weight * &ts.weight, base: s.base.mul(&q) });
        }
    }
}

pub fn convex_sum_certificate(
    p1: &Polynomial,
    cert1: Option<SosCertificate>,
    k1: u32,
    p2: &Polynomial,
    cert2: Option<SosCertificate>,
    k2: u32,
    tol: &SdpTolerances,
) -> Result<ConvexSum, SosError> {
    for k in [k1, k2] {
        if k % 2 == 0 {
            return Err(SosError::EvenPower(k));
        }
    }
    let vars = p1.union_vars(p2);
    let p1 = p1.with_vars(&vars).expect("union");
    let p2 = p2.with_vars(&vars).expect("union");
    let c1 = certificate_for(&p1, k1, cert1, tol)?;
    let c2 = certificate_for(&p2, k2, cert2, tol)?;
    let big_k = k1 + k2 - 1;
    let tv = vec!["t1".to_string(), "t2".to_string()];
    let first = two_square_decomposition(&truncated_binomial_form(big_k, k1 - 1, &tv))?;
    let second = two_square_decomposition(&truncated_binomial_form(big_k, k2 - 1, &tv))?;
    let mut squares = Vec::new();
    distribute(&c2, &first, &p1, &p2, &mut squares);
    distribute(&c1, &second, &p2, &p1, &mut squares);
    let mut certificate = SosCertificate {
        vars: vars.clone(),
        squares,
        exact: false,
        residual: num_rational::BigRational::from_integer(0.into()),
    };
    let target = p1.add(&p2).pow(big_k);
    certificate.residual = verify_certificate(&target, &certificate)?;
    certificate.exact = num_traits::Zero::is_zero(&certificate.residual);
    let residual = certificate.residual.to_f64().unwrap_or(f64::INFINITY);
    Ok(ConvexSum { power: big_k, first, second, certificate, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::fixtures;
    use crate::poly::parse;
    use crate::sos::parse_weighted_identity;

    #[test]
    fn motzkin_one_plus_sphere_cubed() {
        let id = parse_weighted_identity(fixtures::MOTZKIN_A_CUBE).unwrap();
        let (m1, c1) = id.specialize("a", &rat(1, 1)).unwrap();
        let s = fixtures::sum_squares_cubed();
        let sum = convex_sum_certificate(&m1, Some(c1), 3, &s, None, 1, &SdpTolerances::default()).unwrap();
        assert_eq!(sum.power, 3);
        assert!(sum.residual < 1e-6, "{}", sum.residual);
    }

    #[test]
    fn both_powers_one_concatenates() {
        let x = ["x", "y"];
        let p1 = parse("x^2", &x).unwrap();
        let p2 = parse("y^2", &x).unwrap();
        let sum = convex_sum_certificate(&p1, None, 1, &p2, None, 1, &SdpTolerances::default()).unwrap();
        assert_eq!(sum.power, 1);
        assert_eq!(sum.certificate.len(), 2);
        assert_eq!(sum.residual, 0.0);
    }

    #[test]
    fn equal_univariate_squares() {
        let p = parse("x^2", &["x"]).unwrap();
        let sum = convex_sum_certificate(&p, None, 3, &p, None, 3, &SdpTolerances::default()).unwrap();
        assert_eq!(sum.power, 5);
        assert!(sum.residual < 1e-8);
        assert!(matches!(
            convex_sum_certificate(&p, None, 2, &p, None, 1, &SdpTolerances::default()),
            Err(SosError::EvenPower(2))
        ));
    }
}
