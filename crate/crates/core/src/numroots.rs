//! Floating-point complex roots of univariate polynomials (Aberth–Ehrlich
//! iteration followed by Newton polishing).

use num_complex::Complex64;

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of `Σ c[k] t^k` (low degree first, `c.last() != 0`).
pub fn complex_roots(c: &[f64]) -> Vec<Complex64> {
    let mut c: Vec<f64> = c.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    // roots at zero are split off exactly
    let zeros = c.iter().position(|&x| x != 0.0).unwrap();
    let c = &c[zeros..];
    let n_rest = n - zeros;
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    if n_rest == 0 {
        return out;
    }
    let lc = *c.last().unwrap();
    let coeffs: Vec<Complex64> = c.iter().map(|&x| Complex64::new(x / lc, 0.0)).collect();
    let bound = 1.0 + coeffs[..n_rest].iter().map(|x| x.norm()).fold(0.0, f64::max);
    // initial guesses: a slightly rotated circle whose radius is the
    // geometric-mean root modulus
    let r0 = coeffs[0].norm().powf(1.0 / n_rest as f64).clamp(1e-3, bound);
    let mut z: Vec<Complex64> = (0..n_rest)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (n_rest as f64) + 0.4;
            Complex64::from_polar(r0, th)
        })
        .collect();
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for i in 0..n_rest {
            let (p, dp) = horner(&coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n_rest {
                if j != i {
                    s += Complex64::new(1.0, 0.0) / (z[i] - z[j]);
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                worst = worst.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..4 {
            let (p, dp) = horner(&coeffs, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *zi -= step;
        }
    }
    out.extend(z);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_and_cubic() {
        let r = complex_roots(&[1.0, 0.0, 1.0]);
        assert_eq!(r.len(), 2);
        for z in &r {
            assert!((z.norm() - 1.0).abs() < 1e-12 && z.re.abs() < 1e-12);
        }
        let mut r = complex_roots(&[-6.0, 11.0, -6.0, 1.0]);
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        for (z, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((z.re - want).abs() < 1e-10 && z.im.abs() < 1e-10);
        }
    }

    #[test]
    fn zero_roots_split() {
        let r = complex_roots(&[0.0, 0.0, -1.0, 1.0]);
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
    }
}
