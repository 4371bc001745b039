//! Rational rounding of numeric Gram matrices and the exact PSD test.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{basis_poly, GramProblem, SosCertificate, WeightedSquare};

/// Largest denominator tried when rounding.
pub const MAX_DENOMINATOR: i64 = 1_000_000;

/// LDLᵀ over ℚ. Returns `(L, d)` with unit lower-triangular `L` when `a` is
/// positive semidefinite, `None` otherwise. A zero pivot is accepted only
/// if the rest of its column vanishes.
pub fn ldl_psd(a: &[Vec<BigRational>]) -> Option<(Vec<Vec<BigRational>>, Vec<BigRational>)> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let mut l = vec![vec![BigRational::zero(); n]; n];
    let mut d = vec![BigRational::zero(); n];
    for k in 0..n {
        let piv = m[k][k].clone();
        l[k][k] = BigRational::from_integer(1.into());
        if piv.is_negative() {
            return None;
        }
        if piv.is_zero() {
            if (k + 1..n).any(|i| !m[i][k].is_zero()) {
                return None;
            }
            continue;
        }
        for i in k + 1..n {
            l[i][k] = &m[i][k] / &piv;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            for j in k + 1..=i {
                let t = &l[i][k] * &m[k][j];
                m[i][j] -= &t;
                if i != j {
                    m[j][i] = m[i][j].clone();
                }
            }
        }
        d[k] = piv;
    }
    Some((l, d))
}

fn round_to(x: f64, den: i64) -> BigRational {
    let num = (x * den as f64).round();
    BigRational::new(BigInt::from(num as i64), BigInt::from(den))
}

/// Round to denominators 1, 10, …, 10⁶, restore every coefficient constraint
/// exactly, and return a certificate for the first PSD result.
pub fn round_gram(problem: &GramProblem, g: &DMatrix<f64>) -> Option<SosCertificate> {
    let n = problem.size();
    let mut den = 1i64;
    while den <= MAX_DENOMINATOR {
        let mut a = vec![vec![BigRational::zero(); n]; n];
        for con in &problem.constraints {
            let mut sum = BigRational::zero();
            for &(i, j) in &con.pairs {
                let v = round_to(g[(i, j)], den);
                sum += if i == j { v.clone() } else { &v + &v };
                a[i][j] = v.clone();
                a[j][i] = v;
            }
            let nd = con.pairs.iter().map(|&(i, j)| if i == j { 1 } else { 2 }).sum::<i64>();
            let delta = (&con.target - sum) / BigRational::from_integer(nd.into());
            for &(i, j) in &con.pairs {
                a[i][j] += &delta;
                if i != j {
                    a[j][i] += &delta;
                }
            }
        }
        if let Some((l, d)) = ldl_psd(&a) {
            let squares = (0..n)
                .filter(|&k| !d[k].is_zero())
                .map(|k| {
                    let col: Vec<BigRational> = (0..n).map(|i| l[i][k].clone()).collect();
                    WeightedSquare {
                        weight: d[k].clone(),
                        base: basis_poly(&problem.vars, &problem.basis, &col),
                    }
                })
                .collect();
            return Some(SosCertificate {
                vars: problem.vars.clone(),
                squares,
                exact: true,
                residual: BigRational::zero(),
            });
        }
        den *= 10;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    #[test]
    fn ldl_classifies() {
        assert!(ldl_psd(&m(&[&[2, 1], &[1, 2]])).is_some());
        assert!(ldl_psd(&m(&[&[1, 1], &[1, 1]])).is_some());
        assert!(ldl_psd(&m(&[&[1, 2], &[2, 1]])).is_none());
        assert!(ldl_psd(&m(&[&[0, 1], &[1, 0]])).is_none());
        let (l, d) = ldl_psd(&m(&[&[4, 2], &[2, 3]])).unwrap();
        assert_eq!(d, vec![rat(4, 1), rat(2, 1)]);
        assert_eq!(l[1][0], rat(1, 2));
    }
}
